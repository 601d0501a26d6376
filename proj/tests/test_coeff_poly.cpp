#include <gtest/gtest.h>

#include <random>

#include "random_fixtures.hpp"

using namespace cobord;

namespace {

CoeffPoly cp(int n) { return CoeffPoly::generator(n); }

TEST(Rational, CanonicalForm) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_FALSE(unit_inverse(Rational(0)).has_value());
  EXPECT_EQ(*unit_inverse(make_rational(-2, 3)), make_rational(-3, 2));
}

TEST(CoeffPoly, Addition) {
  EXPECT_TRUE((cp(1) + (-cp(1))).is_zero());
  EXPECT_EQ(CoeffPoly() + cp(2), cp(2));
  EXPECT_EQ(make_rational(1, 2) * cp(1) + make_rational(1, 2) * cp(1), cp(1));
}

TEST(CoeffPoly, Multiplication) {
  CoeffPoly sq = cp(1) * cp(1);
  EXPECT_EQ(sq.weight(), 2);
  EXPECT_EQ(sq.to_string(), "cp1^2");
  EXPECT_TRUE((cp(1) * CoeffPoly()).is_zero());
  EXPECT_EQ((cp(1) + cp(2)) * cp(1), cp(1) * cp(1) + cp(1) * cp(2));
}

TEST(CoeffPoly, Rendering) {
  CoeffPoly p = -cp(1) + make_rational(1, 2) * cp(1) * cp(1);
  EXPECT_EQ(p.to_string(), "-cp1 + 1/2*cp1^2");
  EXPECT_EQ(CoeffPoly().to_string(), "0");
  EXPECT_EQ(CoeffPoly(make_rational(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ((cp(2) + cp(1) * cp(1) + CoeffPoly(3L) * cp(0)).to_string(), "3 + cp2 + cp1^2");
  EXPECT_EQ((cp(1) * cp(2) - cp(3)).to_string(), "-cp3 + cp1*cp2");
}

TEST(CoeffPoly, GeneratorZeroIsOne) { EXPECT_EQ(cp(0), CoeffPoly(1L)); }

TEST(CoeffPoly, Specialize) {
  std::map<int, Rational> a{{1, Rational(-1)}};
  EXPECT_EQ(cp(1).specialize(a), -1);
  EXPECT_EQ((cp(1) * cp(1)).specialize(a), 1);
  EXPECT_EQ(CoeffPoly(1L).specialize({}), 1);
  try {
    (cp(1) * cp(3)).specialize(a);
    FAIL() << "expected missing-generator error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cp3"), std::string::npos);
  }
}

TEST(CoeffPoly, NoStoredZeros) {
  CoeffPoly p = cp(1) + cp(2) - cp(1);
  for (const auto& [m, c] : p.terms()) EXPECT_NE(c, 0);
  EXPECT_EQ(p.terms().size(), 1u);
}

TEST(CoeffPoly, WeightLimits) {
  EXPECT_THROW(CoeffPoly::generator(Monomial::kMaxGenerator + 1), std::out_of_range);
  CoeffPoly big = CoeffPoly::monomial(Monomial::generator(1, Monomial::kMaxWeight), 1);
  EXPECT_THROW(big * cp(1), std::out_of_range);
}

class CoeffPolyRing : public ::testing::TestWithParam<unsigned> {};

TEST_P(CoeffPolyRing, Axioms) {
  std::mt19937 rng(GetParam());
  CoeffPoly a = fixtures::random_poly(rng), b = fixtures::random_poly(rng), c = fixtures::random_poly(rng);
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((a + b) + c, a + (b + c));
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_TRUE((a - a).is_zero());
}

TEST_P(CoeffPolyRing, SpecializeIsHomomorphism) {
  std::mt19937 rng(GetParam() + 1000);
  CoeffPoly a = fixtures::random_poly(rng), b = fixtures::random_poly(rng);
  std::map<int, Rational> at;
  for (int n = 1; n <= 4; ++n) at[n] = fixtures::small_rational(rng);
  EXPECT_EQ((a * b).specialize(at), a.specialize(at) * b.specialize(at));
  EXPECT_EQ((a + b).specialize(at), a.specialize(at) + b.specialize(at));
}

TEST_P(CoeffPolyRing, WeightIsAdditive) {
  std::mt19937 rng(GetParam() + 2000);
  std::uniform_int_distribution<int> gen(1, 3);
  int x = gen(rng), y = gen(rng);
  CoeffPoly a = cp(x) * cp(y) + fixtures::small_rational(rng) * cp(x + y);
  CoeffPoly b = CoeffPoly(2L) * cp(3) - cp(1) * cp(2);
  ASSERT_TRUE(a.weight() && b.weight());
  EXPECT_EQ((a * b).weight(), *a.weight() + *b.weight());
}

INSTANTIATE_TEST_SUITE_P(Seeds, CoeffPolyRing, ::testing::Range(1u, 26u));

}  // namespace
