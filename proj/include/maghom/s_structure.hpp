#pragma once

#include "maghom/error.hpp"
#include "maghom/graph.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maghom {

using Triple = std::array<Vertex, 3>;
using Quad = std::array<Vertex, 4>;
using VertexPair = std::pair<Vertex, Vertex>;

// Choice functions for a pawful graph:
//   p(x, y, z) is adjacent to x, y, z  for d(x,y) = d(y,z) = 2, d(x,z) = 1;
//   q(x, y) is adjacent to x and y     for d(x,y) = 2.
struct SelectorMaps {
  std::map<Triple, Vertex> p;
  std::map<VertexPair, Vertex> q;
};

enum class SOrigin { pawful, general };

// The insertion certificate. f1 sends (a, c) with d(a,c) = 2 to the middle
// vertex b of the triple (a, b, c); f2 sends (alpha, beta, delta) with
// d(alpha,beta) = 1, d(beta,delta) = 2 to the gamma of (alpha, beta, gamma, delta).
struct SStructure {
  std::map<VertexPair, Vertex> f1;
  std::map<Triple, Vertex> f2;
  SOrigin origin = SOrigin::general;

  bool has_triple(Vertex x, Vertex y, Vertex z) const {
    auto it = f1.find({x, z});
    return it != f1.end() && it->second == y;
  }
  bool has_quad(Vertex alpha, Vertex beta, Vertex gamma, Vertex delta) const {
    auto it = f2.find({alpha, beta, delta});
    return it != f2.end() && it->second == gamma;
  }

  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    for (const auto& [key, mid] : f1) out.push_back({key.first, mid, key.second});
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Quad> quads() const {
    std::vector<Quad> out;
    for (const auto& [key, gamma] : f2) out.push_back({key[0], key[1], gamma, key[2]});
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SStructure& a, const SStructure& b) { return a.f1 == b.f1 && a.f2 == b.f2; }
};

// X' = {(a, c) : d(a,c) = 2}, lexicographic.
inline std::vector<VertexPair> distance_two_pairs(const Graph& g) {
  std::vector<VertexPair> out;
  for (Vertex a = 1; a <= g.order(); ++a)
    for (Vertex c = 1; c <= g.order(); ++c)
      if (g.dist(a, c) == 2) out.emplace_back(a, c);
  return out;
}

// Y' = {(alpha, beta, delta) : d(alpha,beta) = 1, d(beta,delta) = 2}, lexicographic.
inline std::vector<Triple> insertion_contexts(const Graph& g) {
  std::vector<Triple> out;
  for (Vertex alpha = 1; alpha <= g.order(); ++alpha)
    for (Vertex beta : g.neighbors(alpha))
      for (Vertex delta = 1; delta <= g.order(); ++delta)
        if (g.dist(beta, delta) == 2) out.push_back({alpha, beta, delta});
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_diameter_two(const Graph& g) {
  if (diameter(g) > 2) throw ValidationError("S-structures are defined for graphs of diameter at most 2");
}

// Smallest qualifying vertex for every p and q argument. Throws
// ValidationError naming the violating triple if g is not pawful.
inline SelectorMaps default_selectors(const Graph& g) {
  auto witness = is_pawful(g);
  if (!witness.verdict) {
    const auto& v = *witness.violation;
    if (witness.diameter > 2)
      throw ValidationError("graph is not pawful: d(" + std::to_string(v[0]) + "," + std::to_string(v[1]) +
                            ") > 2");
    throw ValidationError("graph is not pawful: no common neighbour of (" + std::to_string(v[0]) + "," +
                          std::to_string(v[1]) + "," + std::to_string(v[2]) + ")");
  }
  SelectorMaps sel;
  const int n = g.order();
  for (Vertex x = 1; x <= n; ++x)
    for (Vertex y = 1; y <= n; ++y) {
      if (g.dist(x, y) != 2) continue;
      sel.q[{x, y}] = g.common_neighbors(x, y).front();
      for (Vertex z = 1; z <= n; ++z) {
        if (g.dist(y, z) != 2 || g.dist(x, z) != 1) continue;
        for (Vertex v : g.neighbors(x))
          if (g.adjacent(v, y) && g.adjacent(v, z)) {
            sel.p[{x, y, z}] = v;
            break;
          }
      }
    }
  return sel;
}

// The three-clause set: quads with gamma = alpha when d(alpha,delta) = 1,
// gamma = p(alpha, delta, beta) when d(alpha,delta) = 2, and triples
// (beta, q(beta,delta), delta).
inline SStructure build_pawful_S(const Graph& g, const SelectorMaps& sel) {
  require_diameter_two(g);
  SStructure s;
  s.origin = SOrigin::pawful;
  for (const auto& [pair, mid] : sel.q) s.f1[pair] = mid;
  for (const auto& [alpha, beta, delta] : insertion_contexts(g)) {
    if (g.dist(alpha, delta) == 1) {
      s.f2[{alpha, beta, delta}] = alpha;
    } else {
      auto it = sel.p.find({alpha, delta, beta});
      if (it == sel.p.end())
        throw ValidationError("selector p undefined at (" + std::to_string(alpha) + "," + std::to_string(delta) +
                              "," + std::to_string(beta) + ")");
      s.f2[{alpha, beta, delta}] = it->second;
    }
  }
  return s;
}

struct StarPropertyReport {
  bool holds = true;
  std::optional<Triple> violation;  // (alpha, beta, delta)
};

// For every (alpha, beta, delta) with d(alpha,beta) = 1 and d(beta,delta) = 2
// some gamma has d(alpha,gamma) <= 1 and d(beta,gamma) = d(gamma,delta) = 1.
inline StarPropertyReport check_star_property(const Graph& g) {
  require_diameter_two(g);
  StarPropertyReport report;
  for (const auto& [alpha, beta, delta] : insertion_contexts(g)) {
    bool found = false;
    for (Vertex gamma : g.common_neighbors(beta, delta))
      if (g.dist(alpha, gamma) <= 1) {
        found = true;
        break;
      }
    if (!found) {
      report.holds = false;
      report.violation = Triple{alpha, beta, delta};
      return report;
    }
  }
  return report;
}

struct SCheck {
  bool valid = true;
  std::string condition;  // "i", "ii" or "iii" on failure
  std::string detail;
  // Triples (a, b, c) of f1 that are also the prefix of some quad
  // (a, b, c, *). Logged only; not a violation of the written conditions.
  std::vector<std::string> notes;
};

namespace detail {

inline std::string tuple_string(std::initializer_list<Vertex> v) {
  std::string out = "(";
  bool first = true;
  for (Vertex x : v) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + ")";
}

}  // namespace detail

// Checks conditions (i)-(iii) for the pair of maps held in `s`.
inline SCheck verify_s_structure(const Graph& g, const SStructure& s) {
  require_diameter_two(g);
  SCheck out;
  auto fail = [&](std::string condition, std::string detail) {
    out.valid = false;
    out.condition = std::move(condition);
    out.detail = std::move(detail);
    return out;
  };

  // (i): sections of the projections, i.e. total maps with images in X, Y.
  const auto xprime = distance_two_pairs(g);
  for (const auto& [a, c] : xprime)
    if (!s.f1.count({a, c})) return fail("i", "f1 undefined at " + detail::tuple_string({a, c}));
  if (s.f1.size() != xprime.size()) {
    for (const auto& [key, mid] : s.f1)
      if (g.dist(key.first, key.second) != 2)
        return fail("i", "f1 defined outside X' at " + detail::tuple_string({key.first, key.second}));
  }
  for (const auto& [key, b] : s.f1) {
    auto [a, c] = key;
    if (b < 1 || b > g.order() || !g.adjacent(a, b) || !g.adjacent(b, c))
      return fail("i", "f1" + detail::tuple_string({a, c}) + " = " + std::to_string(b) + " is not in X");
  }
  const auto yprime = insertion_contexts(g);
  for (const auto& t : yprime)
    if (!s.f2.count(t)) return fail("i", "f2 undefined at " + detail::tuple_string({t[0], t[1], t[2]}));
  if (s.f2.size() != yprime.size()) {
    for (const auto& [key, gamma] : s.f2)
      if (!std::binary_search(yprime.begin(), yprime.end(), key))
        return fail("i", "f2 defined outside Y' at " + detail::tuple_string({key[0], key[1], key[2]}));
  }
  for (const auto& [key, gamma] : s.f2) {
    auto [alpha, beta, delta] = key;
    if (gamma < 1 || gamma > g.order() || !g.adjacent(beta, gamma) || !g.adjacent(gamma, delta))
      return fail("i", "f2" + detail::tuple_string({alpha, beta, delta}) + " = " + std::to_string(gamma) +
                           " is not in Y");
  }

  // (ii): no (*, alpha, beta, gamma) in f2(Y') and no (alpha, beta, gamma) in f1(X').
  for (const auto& [key, gamma] : s.f2) {
    auto [alpha, beta, delta] = key;
    if (g.dist(alpha, gamma) != 2) continue;
    if (s.has_triple(alpha, beta, gamma))
      return fail("ii", "triple " + detail::tuple_string({alpha, beta, gamma}) + " is a prefix of quad " +
                            detail::tuple_string({alpha, beta, gamma, delta}));
    for (Vertex w : g.neighbors(alpha))
      if (s.has_quad(w, alpha, beta, gamma))
        return fail("ii", "quad " + detail::tuple_string({w, alpha, beta, gamma}) + " overlaps quad " +
                              detail::tuple_string({alpha, beta, gamma, delta}));
  }

  // (iii): d(alpha, gamma) = 2 only where gamma is the unique middle vertex.
  for (const auto& [key, gamma] : s.f2) {
    auto [alpha, beta, delta] = key;
    if (g.dist(alpha, gamma) == 2 && g.common_neighbors(beta, delta).size() != 1)
      return fail("iii", "quad " + detail::tuple_string({alpha, beta, gamma, delta}) +
                             " has d(alpha,gamma) = 2 but beta, delta have several common neighbours");
  }

  for (const auto& [key, b] : s.f1) {
    auto [a, c] = key;
    for (Vertex delta = 1; delta <= g.order(); ++delta)
      if (s.has_quad(a, b, c, delta))
        out.notes.push_back("triple " + detail::tuple_string({a, b, c}) + " is a prefix of quad " +
                            detail::tuple_string({a, b, c, delta}));
  }
  return out;
}

// Quads (alpha, beta, gamma, delta) of s with d(alpha, gamma) = 2.
inline std::vector<Quad> long_quads(const Graph& g, const SStructure& s) {
  std::vector<Quad> out;
  for (const auto& q : s.quads())
    if (g.dist(q[0], q[2]) == 2) out.push_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search

enum class SearchStatus { found, exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<SStructure> certificate;
  std::uint64_t nodes = 0;
};

namespace detail {

class SSearch {
 public:
  SSearch(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  SearchResult run() {
    SearchResult result;
    for (const auto& pair : distance_two_pairs(g_)) {
      Variable v;
      v.is_triple = true;
      v.key = {pair.first, 0, pair.second};
      v.candidates = g_.common_neighbors(pair.first, pair.second);
      variables_.push_back(std::move(v));
    }
    for (const auto& t : insertion_contexts(g_)) {
      Variable v;
      v.key = t;
      auto middles = g_.common_neighbors(t[1], t[2]);
      // (iii): a far gamma is only admissible as the unique middle vertex.
      if (middles.size() > 1)
        std::erase_if(middles, [&](Vertex gamma) { return g_.dist(t[0], gamma) == 2; });
      v.candidates = std::move(middles);
      variables_.push_back(std::move(v));
    }
    for (const auto& v : variables_)
      if (v.candidates.empty()) {
        result.status = SearchStatus::exhausted;
        return result;
      }
    // Fewest candidates first; ties keep the construction order.
    order_.resize(variables_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return variables_[a].candidates.size() < variables_[b].candidates.size();
    });
    bool found = assign(0);
    result.nodes = nodes_;
    if (found) {
      SStructure s;
      s.origin = SOrigin::general;
      s.f1 = f1_;
      s.f2 = f2_;
      result.status = SearchStatus::found;
      result.certificate = std::move(s);
    }
    return result;
  }

 private:
  struct Variable {
    bool is_triple = false;
    Triple key{};  // (a, 0, c) for triples, (alpha, beta, delta) for quads
    std::vector<Vertex> candidates;
  };

  bool quad_assigned(Vertex alpha, Vertex beta, Vertex gamma, Vertex delta) const {
    auto it = f2_.find({alpha, beta, delta});
    return it != f2_.end() && it->second == gamma;
  }
  bool triple_assigned(Vertex a, Vertex b, Vertex c) const {
    auto it = f1_.find({a, c});
    return it != f1_.end() && it->second == b;
  }

  // Condition (ii) against everything assigned so far.
  bool consistent(const Variable& v, Vertex choice) const {
    if (v.is_triple) {
      const Vertex a = v.key[0], c = v.key[2], b = choice;
      for (Vertex delta = 1; delta <= g_.order(); ++delta)
        if (g_.dist(b, delta) == 2 && quad_assigned(a, b, c, delta) && g_.dist(a, c) == 2) return false;
      return true;
    }
    const Vertex alpha = v.key[0], beta = v.key[1], delta = v.key[2], gamma = choice;
    if (g_.dist(alpha, gamma) == 2) {
      if (triple_assigned(alpha, beta, gamma)) return false;
      for (Vertex w : g_.neighbors(alpha))
        if (quad_assigned(w, alpha, beta, gamma)) return false;
    }
    // As the (*, alpha', beta', gamma') of a quad (beta, gamma, delta, e).
    for (Vertex e = 1; e <= g_.order(); ++e)
      if (g_.dist(gamma, e) == 2 && quad_assigned(beta, gamma, delta, e)) return false;
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Variable& v = variables_[order_[depth]];
    for (Vertex choice : v.candidates) {
      if (++nodes_ > budget_)
        throw BudgetExceeded("S-structure search exceeded " + std::to_string(budget_) + " nodes");
      if (!consistent(v, choice)) continue;
      if (v.is_triple) f1_[{v.key[0], v.key[2]}] = choice;
      else f2_[v.key] = choice;
      if (assign(depth + 1)) return true;
      if (v.is_triple) f1_.erase({v.key[0], v.key[2]});
      else f2_.erase(v.key);
    }
    return false;
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Variable> variables_;
  std::vector<std::size_t> order_;
  std::map<VertexPair, Vertex> f1_;
  std::map<Triple, Vertex> f2_;
};

}  // namespace detail

// Backtracking over the middle-vertex choices for X' and Y'. `exhausted`
// is only reported after the whole tree has been explored.
inline SearchResult search_s_structure(const Graph& g, std::uint64_t budget = 10'000'000) {
  require_diameter_two(g);
  return detail::SSearch(g, budget).run();
}

// ---------------------------------------------------------------------------
// Text format: "T beta gamma delta" and "Q alpha beta gamma delta", one per
// line, '#' comments.

inline std::string serialize_s(const SStructure& s) {
  std::ostringstream out;
  for (const auto& t : s.triples()) out << "T " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& q : s.quads()) out << "Q " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  return out.str();
}

// Parses and checks the distance pattern of every tuple against g.
inline SStructure parse_s(std::string_view text, const Graph& g) {
  SStructure s;
  s.origin = SOrigin::general;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto vertex = [&](const std::string& tok) {
    Vertex v = detail::parse_vertex_token(tok, line_no);
    if (v > g.order()) throw ParseError("line " + std::to_string(line_no) + ": vertex " + tok + " not in graph");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    std::istringstream fields{std::string(body)};
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tok[0] == "T" && tok.size() == 4) {
      Vertex b = vertex(tok[1]), c = vertex(tok[2]), d = vertex(tok[3]);
      if (!(g.adjacent(b, c) && g.adjacent(c, d) && g.dist(b, d) == 2))
        throw ValidationError(where + "triple violates d(b,c) = d(c,d) = 1, d(b,d) = 2");
      if (!s.f1.emplace(VertexPair{b, d}, c).second)
        throw ValidationError(where + "second triple for the pair " + detail::tuple_string({b, d}));
    } else if (tok[0] == "Q" && tok.size() == 5) {
      Vertex a = vertex(tok[1]), b = vertex(tok[2]), c = vertex(tok[3]), d = vertex(tok[4]);
      if (!(g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(c, d) && g.dist(b, d) == 2))
        throw ValidationError(where + "quad violates d(a,b) = d(b,c) = d(c,d) = 1, d(b,d) = 2");
      if (!s.f2.emplace(Triple{a, b, d}, c).second)
        throw ValidationError(where + "second quad for the context " + detail::tuple_string({a, b, d}));
    } else {
      throw ParseError(where + "expected 'T b c d' or 'Q a b c d'");
    }
  }
  return s;
}

}  // namespace maghom
