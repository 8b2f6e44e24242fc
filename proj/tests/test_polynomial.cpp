#include "support.hpp"

#include <gtest/gtest.h>

using namespace maghom;

TEST(IntPoly, ArithmeticAndPrinting) {
  IntPoly a{1, 1};   // 1 + q
  IntPoly b{-1, 1};  // q - 1
  EXPECT_EQ((a * b).to_string(), "q^2-1");
  EXPECT_EQ((a + b).to_string(), "2q");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(IntPoly{}.degree(), -1);
  EXPECT_EQ(IntPoly({-6, -10, 4, 2}).to_string(), "2q^3+4q^2-10q-6");
  EXPECT_EQ(IntPoly({3, 0, -2}).evaluate(2), Integer(-5));
}

TEST(IntPoly, ContentAndPrimitivePart) {
  IntPoly p{-6, -10, 4, 2};
  EXPECT_EQ(p.content(), Integer(2));
  EXPECT_EQ(p.primitive_part(), IntPoly({-3, -5, 2, 1}));
  EXPECT_EQ(IntPoly({4, -2}).primitive_part(), IntPoly({-2, 1}));
}

TEST(IntPoly, ExactDivision) {
  IntPoly a{1, 1}, b{2, 0, 1};
  EXPECT_EQ((a * b).divexact(a), b);
  EXPECT_THROW(IntPoly({1, 0, 1}).divexact(IntPoly{1, 1}), InternalError);
}

TEST(IntPoly, Gcd) {
  IntPoly common{1, 2};
  IntPoly x = common * IntPoly{3, 0, 1};
  IntPoly y = common * IntPoly{-1, 1} * IntPoly{5};
  EXPECT_EQ(gcd(x, y), common);
  EXPECT_EQ(gcd(IntPoly{1, 1}, IntPoly{-1, 1}), IntPoly{1});
}

TEST(RatFunc, CanonicalForm) {
  RatFunc r(IntPoly{2}, IntPoly{1, 1});
  EXPECT_EQ(r.to_string(), "(2)/(q+1)");
  RatFunc same(IntPoly{-4, -4} * IntPoly{1}, IntPoly{-2, -4, -2});
  EXPECT_EQ(same, r);
  RatFunc zero(IntPoly{}, IntPoly{3, 1});
  EXPECT_EQ(zero.den(), IntPoly{1});
  EXPECT_THROW(RatFunc(IntPoly{1}, IntPoly{}), InternalError);
}

TEST(RatFunc, CanonicalFormIsIdempotent) {
  RatFunc r(IntPoly{2, 6} * IntPoly{1, -1}, IntPoly{4, 0, -4} * IntPoly{3});
  RatFunc again(r.num(), r.den());
  EXPECT_EQ(again, r);
  EXPECT_GT(r.den().leading(), 0);
  EXPECT_EQ(gcd(r.num(), r.den()).degree(), 0);
}

TEST(RatFunc, TaylorGeometric) {
  // 1/(1+q) = 1 - q + q^2 - ...
  auto s = RatFunc(IntPoly{1}, IntPoly{1, 1}).taylor(4);
  std::vector<Integer> expected{1, -1, 1, -1, 1};
  EXPECT_EQ(s.coeffs, expected);
  EXPECT_THROW(RatFunc(IntPoly{1}, IntPoly{2, 1}).taylor(2), InternalError);
}
