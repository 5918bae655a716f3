#include <gtest/gtest.h>

#include "koszul/detk.hpp"
#include "koszul/oracles.hpp"
#include "test_util.hpp"

using namespace koszul;
using koszul::testing::random_matrix;

namespace {

CMatrix random_hermitian(int m) {
  const CMatrix a = random_matrix(m, m);
  return a + a.adjoint();
}

} // namespace

TEST(DetK, DiagonalExample) {
  const CMatrix b = Eigen::Vector3cd(1.0, 2.0, 3.0).asDiagonal();
  EXPECT_EQ(det_k(b, 1), cd(6.0));
  EXPECT_EQ(det_k(b, 2), cd(11.0));
  EXPECT_NEAR(det_k(b, 3).real(), 6.0, 1e-14);
}

TEST(DetK, EndpointsAreTraceAndDeterminant) {
  for (int m = 1; m <= 6; ++m) {
    const CMatrix b = random_hermitian(m);
    EXPECT_LT(std::abs(det_k(b, 1) - b.trace()), 1e-13);
    EXPECT_LT(std::abs(det_k(b, m) - b.determinant()), 1e-11);
  }
}

TEST(DetK, RangeChecked) {
  const CMatrix b = random_hermitian(3);
  EXPECT_THROW(det_k(b, 0), std::invalid_argument);
  EXPECT_THROW(det_k(b, 4), std::invalid_argument);
  EXPECT_THROW(det_k(CMatrix(random_matrix(2, 3)), 1), std::invalid_argument);
}

TEST(DetK, MatchesEigenvalueOracle) {
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 6;
    const int k = 1 + trial % m;
    const HermitianMatrix b(random_hermitian(m));
    const double expect = oracle::detk_by_eigenvalues(b.matrix(), k);
    const double scale = std::max(oracle::detk_scale(b.matrix(), k), 1e-300);
    EXPECT_LE(std::abs(det_k(b, k).real() - expect), 1e-8 * scale);
    EXPECT_LE(std::abs(det_k(b, k).imag()), 1e-8 * scale);
  }
}

TEST(DetK, GramMatchesCauchyBinet) {
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 4;
    const int d = 1 + trial % 6;
    const int k = 1 + trial % m;
    const CMatrix f = random_matrix(m, d);
    const double expect = oracle::detk_cauchy_binet(f, k);
    if (k > d) {
      EXPECT_NEAR(det_k_gram(f, k), 0.0, 1e-12);
      continue;
    }
    EXPECT_LE(std::abs(det_k_gram(f, k) - expect), 1e-10 * expect);
  }
}

TEST(DetK, GramIsNonNegative) {
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix f = random_matrix(3, 2 + trial % 3);
    for (int k = 1; k <= 2; ++k)
      EXPECT_GE(det_k_gram(f, k), 0.0);
  }
}

TEST(DetK, UnitaryInvariance) {
  const CMatrix b = random_hermitian(4);
  const Eigen::HouseholderQR<CMatrix> qr(random_matrix(4, 4));
  const CMatrix u = qr.householderQ();
  const CMatrix c = u * b * u.adjoint();
  for (int k = 1; k <= 4; ++k)
    EXPECT_LT(std::abs(det_k(b, k) - det_k(c, k)),
              1e-10 * oracle::detk_scale(b, k));
}

TEST(ElementarySymmetric, SmallExample) {
  const auto e = oracle::elementary_symmetric(std::vector<double>{1, 2, 3});
  EXPECT_EQ(e, (std::vector<double>{1, 6, 11, 6}));
}
