// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check is exact.

#include "property_checks.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>

using namespace maghom;
using namespace testing_support;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;
    pass = pass && cond;
  }
};

Result magnitude_of_g1() {
  Result r;
  Graph g1 = fixture("G1");
  RatFunc m = magnitude_rational(g1);
  r.require(m.num() == IntPoly({-6, -10, 4, 2}), "numerator " + m.num().to_string());
  r.require(m.den() == IntPoly({-1, -5, -6, 0, 1, 1}), "denominator " + m.den().to_string());
  const std::vector<Integer> expected{6, -20, 60, -182, 556, -1702, 5214, -15980};
  r.require(m.taylor(7).coeffs == expected, "series from the rational function");
  r.require(magnitude_series(g1, 7).coeffs == expected, "series from direct expansion");
  return r;
}

Result table_of(const std::string& name, const std::vector<std::size_t>& diagonal,
                const std::map<std::pair<int, int>, std::size_t>& off) {
  Result r;
  auto t = mh_table(fixture(name), 6);
  r.require(t.diagonal_ranks() == diagonal, "diagonal ranks");
  for (const auto& [key, group] : t.entries) {
    const auto [k, l] = key;
    if (k == l) {
      r.require(group.torsion.empty(), "torsion on the diagonal at l=" + std::to_string(l));
      continue;
    }
    auto it = off.find(key);
    const std::size_t want = it == off.end() ? 0 : it->second;
    r.require(group.rank == want && group.torsion.empty(),
              "entry (" + std::to_string(k) + "," + std::to_string(l) + ") = " + group.to_string());
  }
  return r;
}

Result square_example() {
  Result r;
  Graph c4 = fixture("C4");
  for (Vertex a = 1; a <= 4; ++a) {
    auto pair = build_pair(c4, a, a, 4);
    r.require(pair.f_vector() == std::vector<std::size_t>{6, 12, 8}, "f-vector");
    auto h = relative_homology(pair);
    r.require(h.size() == 3 && h[0].is_zero() && h[1].is_zero() && h[2] == HomologyGroup{3, {}}, "relative homology");
    r.require(mh_ab(c4, a, a, 4, 4) == HomologyGroup{3, {}}, "MH_4^4(a,a)");
  }
  // The listed subcomplex, with a = 1, b = 2, c = 3, d = 4.
  auto s = [](std::initializer_list<PositionedVertex> e) { return make_simplex(e); };
  std::set<Simplex> listed{s({{2, 1}}),         s({{1, 2}}),         s({{2, 3}}),         s({{4, 3}}),
                           s({{4, 1}}),         s({{1, 2}, {2, 3}}), s({{2, 1}, {2, 3}}), s({{2, 1}, {1, 2}}),
                           s({{1, 2}, {4, 3}}), s({{4, 1}, {1, 2}}), s({{4, 1}, {4, 3}})};
  auto sub = build_pair(c4, 1, 1, 4).subcomplex();
  r.require(std::set<Simplex>(sub.begin(), sub.end()) == listed, "K' differs from the listed 11 simplices");
  return r;
}

Result correspondence() {
  Result r;
  for (const auto& name : {"G1", "G2", "C4"}) {
    Graph g = fixture(name);
    for (int ell = 3; ell <= 4; ++ell)
      for (auto [a, b] : all_pairs(g)) {
        auto rep = verify_ai_correspondence(g, a, b, ell);
        r.require(rep.pass, std::string(name) + " (" + std::to_string(a) + "," + std::to_string(b) +
                                ") l=" + std::to_string(ell));
      }
  }
  return r;
}

// Matching checks shared by criteria 6 and 7.
void check_matchings(Result& r, const Graph& g, const SStructure& s, int ell, const std::string& label) {
  for (auto [a, b] : all_pairs(g)) {
    const std::string where = label + " (" + std::to_string(a) + "," + std::to_string(b) + ") l=" + std::to_string(ell);
    auto m = build_matching(g, a, b, ell, s);
    r.require(verify_matching(m.poset, m.matching).valid, where + ": invalid matching");
    r.require(is_acyclic(m.poset, m.matching).acyclic, where + ": cycle");
    for (auto c : m.critical)
      r.require(m.poset.dimension(c) == static_cast<std::size_t>(ell - 2), where + ": off-dimension critical cell");
    auto rep = morse_rank_check(g, a, b, ell, m.poset, m.matching);
    r.require(rep.pass, where + ": critical count differs from relative homology");
  }
}

Result pawful_pipeline() {
  Result r;
  for (const auto& name : {"K4", "K5", "C4"}) {
    Graph g = fixture(name);
    auto s = build_pawful_S(g, default_selectors(g));
    for (int ell = 3; ell <= 5; ++ell) check_matchings(r, g, s, ell, name);
  }
  return r;
}

Result g1_certificate() {
  Result r;
  Graph g1 = fixture("G1");
  auto s = parse_s(fixture_text("G1.s"), g1);
  r.require(s.f1.size() == 10 && s.f2.size() == 30, "certificate size");
  auto check = verify_s_structure(g1, s);
  r.require(check.valid, "rejected: (" + check.condition + ") " + check.detail);
  r.require(long_quads(g1, s) == std::vector<Quad>{{3, 4, 5, 1}, {4, 3, 2, 1}}, "far quadruples");
  for (int ell = 3; ell <= 4; ++ell) check_matchings(r, g1, s, ell, "G1");
  return r;
}

Result g2_search() {
  Result r;
  auto res = search_s_structure(fixture("G2"));
  r.require(res.status == SearchStatus::exhausted && !res.certificate, "search found a certificate");
  return r;
}

Result euler() {
  Result r;
  for (const auto& name : fixture_names()) {
    auto rep = euler_check(fixture(name), 4);
    r.require(rep.holds, name);
  }
  return r;
}

Result properties() {
  Result r;
  for (auto v : {property_checks::boundary_squares_to_zero(), property_checks::direct_sum_law(),
                 property_checks::snf_matches_elimination(), property_checks::round_trips()})
    r.require(v.pass, v.detail);
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double target_seconds;
    std::function<Result()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "magnitude of G1, rational function and series", 1, magnitude_of_g1},
      {2, "G2 table through l=6 is diagonal",
       300,
       [] { return table_of("G2", {5, 12, 22, 38, 66, 118, 218}, {}); }},
      {3, "G3 table through l=6",
       600,
       [] {
         return table_of("G3", {6, 16, 30, 50, 82, 138, 242},
                         {{{2, 3}, 2}, {{3, 4}, 10}, {{4, 5}, 28}, {{4, 6}, 2}, {{5, 6}, 60}});
       }},
      {4, "C4 wedge of three spheres", 0, square_example},
      {5, "simplicial pair matches magnitude homology", 0, correspondence},
      {6, "pawful matchings on K4, K5, C4", 0, pawful_pipeline},
      {7, "G1 certificate and its matchings", 0, g1_certificate},
      {8, "no S-structure on G2", 60, g2_search},
      {9, "Euler characteristic equals magnitude coefficient", 0, euler},
      {10, "property suites", 0, properties},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.target_seconds == 0 || secs < c.target_seconds;
    const bool pass = r.pass && in_time;
    failures += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << timing;
    if (c.target_seconds > 0) std::cout << " / target " << c.target_seconds << "s";
    std::cout << "]";
    if (!r.pass) std::cout << "  " << r.detail;
    else if (!in_time) std::cout << "  over time target";
    std::cout << '\n';
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
