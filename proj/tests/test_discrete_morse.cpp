#include "support.hpp"

#include <gtest/gtest.h>

using namespace maghom;
using namespace testing_support;

namespace {

Simplex cell(std::initializer_list<PositionedVertex> e) { return make_simplex(e); }

// The boundary of a square as a 1-dimensional complex: corners alternate
// between positions 1 and 2 so every side is a valid simplex.
FacePoset square() {
  const PositionedVertex a{1, 1}, b{2, 2}, c{3, 1}, d{4, 2};
  return face_poset({cell({a}), cell({b}), cell({c}), cell({d}), cell({a, b}), cell({b, c}), cell({c, d}),
                     cell({d, a})});
}

std::size_t idx(const FacePoset& p, std::initializer_list<PositionedVertex> e) { return p.index_of(cell(e)); }

// G1 with vertex 1 removed, relabelled 1..5: vertex 5 is adjacent to all.
Graph g1_without_vertex_one() { return Graph(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}); }

}  // namespace

TEST(FacePoset, SquareCovers) {
  auto p = square();
  EXPECT_EQ(p.size(), 8u);
  EXPECT_EQ(p.covers.size(), 8u);
  for (auto [lo, up] : p.covers) EXPECT_EQ(p.dimension(up), p.dimension(lo) + 1);
}

TEST(VerifyMatching, EmptyIsValid) { EXPECT_TRUE(verify_matching(square(), {}).valid); }

TEST(VerifyMatching, DuplicatedLowerCell) {
  auto p = square();
  const PositionedVertex a{1, 1}, b{2, 2}, d{4, 2};
  Matching m{{{idx(p, {a}), idx(p, {a, b})}, {idx(p, {a}), idx(p, {d, a})}}};
  auto r = verify_matching(p, m);
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.cell);
  EXPECT_EQ(*r.cell, idx(p, {a}));
}

TEST(VerifyMatching, PairMustBeACover) {
  auto p = square();
  const PositionedVertex a{1, 1}, b{2, 2}, c{3, 1};
  Matching m{{{idx(p, {a}), idx(p, {b, c})}}};
  EXPECT_FALSE(verify_matching(p, m).valid);
}

TEST(Acyclic, SinglePair) {
  auto p = square();
  const PositionedVertex a{1, 1}, b{2, 2};
  EXPECT_TRUE(is_acyclic(p, Matching{{{idx(p, {a}), idx(p, {a, b})}}}).acyclic);
}

TEST(Acyclic, SquareMatchedAroundHasCycle) {
  auto p = square();
  const PositionedVertex a{1, 1}, b{2, 2}, c{3, 1}, d{4, 2};
  Matching m{{{idx(p, {a}), idx(p, {a, b})},
              {idx(p, {b}), idx(p, {b, c})},
              {idx(p, {c}), idx(p, {c, d})},
              {idx(p, {d}), idx(p, {d, a})}}};
  ASSERT_TRUE(verify_matching(p, m).valid);
  auto r = is_acyclic(p, m);
  ASSERT_FALSE(r.acyclic);
  const auto n = r.cycle_uppers.size();
  ASSERT_GE(n, 2u);
  ASSERT_EQ(r.cycle_lowers.size(), n);
  std::set<std::size_t> distinct(r.cycle_uppers.begin(), r.cycle_uppers.end());
  EXPECT_EQ(distinct.size(), n);
  std::set<std::pair<std::size_t, std::size_t>> pairs(m.pairs.begin(), m.pairs.end());
  for (std::size_t i = 0; i < n; ++i) {
    // b^i > d(b^i) matched, and d(b^i) < b^{i+1} along an unmatched cover.
    EXPECT_TRUE(pairs.count({r.cycle_lowers[i], r.cycle_uppers[i]}));
    EXPECT_TRUE(p.covers_pair(r.cycle_lowers[i], r.cycle_uppers[(i + 1) % n]));
    EXPECT_FALSE(pairs.count({r.cycle_lowers[i], r.cycle_uppers[(i + 1) % n]}));
  }
}

TEST(Acyclic, PawfulSubgraphOfG1) {
  Graph g = g1_without_vertex_one();
  ASSERT_TRUE(is_pawful(g).verdict);
  auto s = build_pawful_S(g, default_selectors(g));
  for (int ell = 3; ell <= 4; ++ell)
    for (auto [a, b] : all_pairs(g)) {
      auto built = build_matching(g, a, b, ell, s);
      EXPECT_TRUE(is_acyclic(built.poset, built.matching).acyclic) << a << "," << b << " l=" << ell;
    }
}

TEST(MorseDigraph, OrientationCounts) {
  Graph k4 = complete_graph(4);
  auto s = build_pawful_S(k4, default_selectors(k4));
  auto built = build_matching(k4, 1, 2, 4, s);
  auto d = morse_digraph(built.poset, built.matching);
  EXPECT_EQ(d.up_edges, built.matching.pairs.size());
  for (auto deg : d.up_degree) EXPECT_LE(deg, 1u);
  std::size_t edges = 0;
  for (const auto& out : d.out) edges += out.size();
  EXPECT_EQ(edges, built.poset.covers.size());
}

TEST(CriticalCells, EmptyMatchingLeavesEverything) {
  auto p = square();
  EXPECT_EQ(critical_cells(p, {}).size(), p.size());
}

TEST(CriticalCells, CompleteGraphCountsMatchHomology) {
  Graph k4 = complete_graph(4);
  auto s = build_pawful_S(k4, default_selectors(k4));
  for (auto [a, b] : all_pairs(k4)) {
    auto built = build_matching(k4, a, b, 3, s);
    auto crit = critical_cells(built.poset, built.matching);
    for (const auto& c : crit) EXPECT_EQ(c.dimension, 1u);
    EXPECT_EQ(crit.size(), mh_ab(k4, a, b, 3, 3).rank) << a << "," << b;
  }
}

TEST(MorseRankCheck, EmptyPoset) {
  Graph c4 = fixture("C4");
  auto s = build_pawful_S(c4, default_selectors(c4));
  auto built = build_matching(c4, 1, 2, 4, s);
  EXPECT_EQ(built.poset.size(), 0u);
  EXPECT_TRUE(morse_rank_check(c4, 1, 2, 4, built.poset, built.matching).pass);
}

TEST(MorseRankCheck, SquareWedgeOfThreeSpheres) {
  Graph c4 = fixture("C4");
  auto s = build_pawful_S(c4, default_selectors(c4));
  auto built = build_matching(c4, 1, 1, 4, s);
  auto r = morse_rank_check(c4, 1, 1, 4, built.poset, built.matching);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.critical_counts, (std::vector<std::size_t>{0, 0, 3}));
  EXPECT_EQ(r.relative_homology[2], (HomologyGroup{3, {}}));
}

TEST(MorseRankCheck, CompleteGraphAllPairs) {
  Graph k4 = complete_graph(4);
  auto s = build_pawful_S(k4, default_selectors(k4));
  for (int ell = 3; ell <= 4; ++ell)
    for (auto [a, b] : all_pairs(k4)) {
      auto built = build_matching(k4, a, b, ell, s);
      EXPECT_TRUE(morse_rank_check(k4, a, b, ell, built.poset, built.matching).pass) << a << "," << b;
    }
}

TEST(MorseRankCheck, EmptyMatchingReportsOffDimensionCells) {
  Graph c4 = fixture("C4");
  auto poset = relative_face_poset(build_pair(c4, 1, 1, 4));
  auto r = morse_rank_check(c4, 1, 1, 4, poset, {});
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_NE(r.diagnostics.front().find("critical cell"), std::string::npos);
}

TEST(MorseRankCheck, CyclicMatchingRejected) {
  auto p = square();
  const PositionedVertex a{1, 1}, b{2, 2}, c{3, 1}, d{4, 2};
  Matching m{{{idx(p, {a}), idx(p, {a, b})},
              {idx(p, {b}), idx(p, {b, c})},
              {idx(p, {c}), idx(p, {c, d})},
              {idx(p, {d}), idx(p, {d, a})}}};
  auto r = morse_rank_check(complete_graph(4), 1, 2, 3, p, m);
  EXPECT_FALSE(r.pass);
}
