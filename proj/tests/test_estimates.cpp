#include <gtest/gtest.h>

#include "koszul/estimates.hpp"

using namespace koszul;

TEST(KConstant, Value) {
  EXPECT_NEAR(K_constant(), 361.0303463724141, 1e-12);
  EXPECT_GT(K_constant(), 361.0);
  EXPECT_LT(K_constant(), 362.0);
}

TEST(KConstant, FourRootETerm) {
  EXPECT_NEAR(4.0 * std::sqrt(std::numbers::e), 6.594885082800513, 1e-14);
}

TEST(NormBound, Examples) {
  const double k = K_constant();
  EXPECT_DOUBLE_EQ(norm_bound(1, 1), k);
  EXPECT_DOUBLE_EQ(norm_bound(3, 2), 6.0 * k);
  EXPECT_DOUBLE_EQ(norm_bound(2, 1), 2.0 * k);
  EXPECT_THROW(norm_bound(1, 2), std::invalid_argument);
  EXPECT_THROW(norm_bound(2, 0), std::invalid_argument);
}

TEST(Alpha, Normalization) {
  const AlphaParams p(16.0);
  EXPECT_NEAR(p.a0(), 0.09312928184281917, 1e-14);
  EXPECT_NEAR(alpha(1.0, p), 1.0, 1e-12);
  EXPECT_EQ(alpha(0.0, p), 0.0);
}

TEST(Alpha, GoldenValues) {
  EXPECT_NEAR(alpha(0.5), 0.047899544167942144, 1e-14);
  EXPECT_NEAR(alpha(0.25), 0.01821210338929249, 1e-14);
}

TEST(Alpha, StrictlyIncreasingOnMesh) {
  const AlphaParams p(16.0);
  double prev = alpha(0.0, p);
  for (int i = 1; i <= 10000; ++i) {
    const double v = alpha(i / 10000.0, p);
    ASSERT_GT(v, prev) << "at t = " << i / 10000.0;
    prev = v;
  }
}

TEST(Alpha, ParameterValidation) {
  EXPECT_THROW(AlphaParams(std::exp(std::numbers::e)), std::invalid_argument);
  EXPECT_THROW(AlphaParams(10.0), std::invalid_argument);
  EXPECT_NO_THROW(AlphaParams(16.0));
  EXPECT_THROW(alpha(-0.1), std::invalid_argument);
  EXPECT_THROW(alpha(1.5), std::invalid_argument);
}

TEST(Alpha, LargerCStillNormalized) {
  const AlphaParams p(100.0);
  EXPECT_NEAR(alpha(1.0, p), 1.0, 1e-12);
  EXPECT_LT(alpha(0.5, p), 1.0);
}

TEST(AlphaHypothesis, ConstantRowPasses) {
  PolyMatrix f(1, 2);
  f(0, 0) = 1.0;
  f(0, 1) = 0.0;
  PolyMatrix h(1, 1);
  h(0, 0) = 0.5;
  const auto rep = alpha_hypothesis_check(f, h, DiscGrid::standard());
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.min_margin, 0.5, 1e-15);
}

TEST(AlphaHypothesis, VanishingRowFailsWhereHIsNot) {
  PolyMatrix f(1, 1);
  f(0, 0) = ComplexPolynomial::z();
  PolyMatrix h(1, 1);
  h(0, 0) = 0.1;
  const auto rep = alpha_hypothesis_check(f, h, DiscGrid({0.0, 0.5}, 4));
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.argmin, 0u);
}

TEST(AlphaHypothesis, UnnormalizedRowIsPrecondition) {
  PolyMatrix f(1, 1);
  f(0, 0) = 2.0;
  PolyMatrix h(1, 1);
  EXPECT_THROW(alpha_hypothesis_check(f, h, DiscGrid::standard()),
               precondition_failed);
}
