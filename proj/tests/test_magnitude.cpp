#include "support.hpp"

#include <gtest/gtest.h>

using namespace maghom;
using namespace testing_support;

TEST(Magnitude, SingleVertexAndEdge) {
  EXPECT_EQ(magnitude_rational(complete_graph(1)), RatFunc(IntPoly{1}, IntPoly{1}));
  EXPECT_EQ(magnitude_rational(path_graph(2)), RatFunc(IntPoly{2}, IntPoly{1, 1}));
}

TEST(Magnitude, CompleteGraphClosedForm) {
  // Z = (1-q) I + q J, so the entry sum of its inverse is n / (1 + (n-1) q).
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(magnitude_rational(complete_graph(n)), RatFunc(IntPoly{n}, IntPoly{1, n - 1})) << n;
}

TEST(Magnitude, G1RationalFunction) {
  RatFunc m = magnitude_rational(fixture("G1"));
  EXPECT_EQ(m.to_string(), "(2q^3+4q^2-10q-6)/(q^5+q^4-6q^2-5q-1)");
}

TEST(Magnitude, G1Series) {
  std::vector<Integer> expected{6, -20, 60, -182, 556, -1702, 5214, -15980};
  EXPECT_EQ(magnitude_rational(fixture("G1")).taylor(7).coeffs, expected);
  EXPECT_EQ(magnitude_series(fixture("G1"), 7).coeffs, expected);
}

TEST(Magnitude, LowCoefficientsCountVerticesAndEdges) {
  for (const auto& name : fixture_names()) {
    Graph g = fixture(name);
    auto s = magnitude_series(g, 2);
    EXPECT_EQ(s.coeffs[0], Integer(g.order())) << name;
    EXPECT_EQ(s.coeffs[1], Integer(-2 * static_cast<long>(g.size()))) << name;
  }
}

TEST(Magnitude, SeriesRoutesAgree) {
  for (const auto& name : fixture_names()) {
    Graph g = fixture(name);
    EXPECT_EQ(magnitude_rational(g).taylor(10), magnitude_series(g, 10)) << name;
  }
}

TEST(Magnitude, G3ThirdCoefficient) {
  EXPECT_EQ(magnitude_series(fixture("G3"), 3).coeffs[3], Integer(-48));
}

TEST(Magnitude, SeriesMatchesBruteForceEulerCharacteristic) {
  // c_l = sum_k (-1)^k rank MH_k^l, with ranks from the dense oracle.
  for (const auto& name : {"C4", "G1", "K4"}) {
    Graph g = fixture(name);
    auto s = magnitude_series(g, 3);
    for (int ell = 0; ell <= 3; ++ell) {
      auto betti = brute_mh_betti(g, ell);
      Integer alt = 0;
      for (std::size_t k = 0; k < betti.size(); ++k) alt += (k % 2 ? -1 : 1) * Integer(betti[k]);
      EXPECT_EQ(alt, s.coeffs[static_cast<std::size_t>(ell)]) << name << " l=" << ell;
    }
  }
}

TEST(Magnitude, EulerCheckOnFixtures) {
  for (const auto& name : fixture_names()) {
    auto r = euler_check(fixture(name), 4);
    EXPECT_TRUE(r.holds) << name;
    EXPECT_EQ(r.series.size(), 5u);
  }
}

TEST(Magnitude, DeterminantOfSmallMatrix) {
  PolyMatrix m{{IntPoly{1}, IntPoly{0, 1}}, {IntPoly{0, 1}, IntPoly{1}}};
  EXPECT_EQ(determinant(m), IntPoly({1, 0, -1}));
  PolyMatrix swap{{IntPoly{}, IntPoly{1}}, {IntPoly{1}, IntPoly{}}};
  EXPECT_EQ(determinant(swap), IntPoly{-1});
}
