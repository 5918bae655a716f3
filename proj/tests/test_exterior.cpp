#include <gtest/gtest.h>

#include "koszul/exterior.hpp"
#include "koszul/oracles.hpp"
#include "test_util.hpp"

using namespace koszul;
using koszul::testing::random_matrix;
using koszul::testing::random_poly_matrix;
using koszul::testing::random_vector;

TEST(ExteriorBasis, DimensionsAreBinomial) {
  for (int d = 1; d <= 6; ++d)
    for (int n = 0; n <= d; ++n)
      EXPECT_EQ(ExteriorBasis(d, n).size(), binomial(d, n));
}

TEST(QStar, DimensionThreeExample) {
  const CVector a = (CVector(3) << 1.0, 2.0, 3.0).finished();
  const auto q = q_star_matrix(a, 1);
  ASSERT_EQ(q.matrix.rows(), 3);
  ASSERT_EQ(q.matrix.cols(), 3);
  EXPECT_EQ(q.orientation, Orientation::raising);
  // Basis of L^2 is (12, 13, 23).
  CVector col_e3(3), col_e1(3);
  col_e3 << 0.0, 1.0, 2.0;
  col_e1 << -2.0, -3.0, 0.0;
  EXPECT_EQ(CVector(q.matrix.col(2)), col_e3);
  EXPECT_EQ(CVector(q.matrix.col(0)), col_e1);
}

TEST(QStar, ConjugatesCoefficients) {
  const CVector a = (CVector(2) << cd(0, 1), cd(2, 0)).finished();
  const auto q = q_star_matrix(a, 0);
  EXPECT_EQ(q.matrix(0, 0), cd(0, -1));
  const auto ql = q_matrix(a, 0);
  EXPECT_EQ(ql.matrix(0, 0), cd(0, 1));
}

TEST(QOperator, IsAdjointOfQStar) {
  for (int d = 2; d <= 5; ++d)
    for (int n = 0; n + 1 <= d; ++n) {
      const CVector a = random_vector(d);
      EXPECT_EQ(q_matrix(a, n).matrix, q_star_matrix(a, n).matrix.adjoint());
    }
}

TEST(QOperator, RejectsDegreeOutOfRange) {
  const CVector a = random_vector(3);
  EXPECT_THROW(q_matrix(a, 3), std::invalid_argument);
  EXPECT_THROW(q_matrix(a, -1), std::invalid_argument);
}

TEST(QIdentity, TwoDimensionalUnitVector) {
  const CVector e1 = (CVector(2) << 1.0, 0.0).finished();
  EXPECT_EQ(verify_qid(e1, 0), 0.0);
  EXPECT_THROW(verify_qid(e1, 1), std::invalid_argument);
}

TEST(QIdentity, RandomInstances) {
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const int n = trial % (d - 1);
    const CVector a = random_vector(d);
    EXPECT_LE(verify_qid(a, n), 1e-10 * a.squaredNorm());
  }
}

TEST(QIdentity, ZeroVectorRejected) {
  EXPECT_THROW(verify_qid(CVector::Zero(4), 0), std::invalid_argument);
}

TEST(Anticommute, RandomInstances) {
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const int n = trial % (d - 1);
    const CVector a = random_vector(d), b = random_vector(d);
    EXPECT_LE(verify_anticommute(a, b, n), 1e-12 * a.norm() * b.norm());
  }
}

TEST(Anticommute, SelfCompositionIsExactlyZero) {
  for (int d = 2; d <= 6; ++d)
    for (int n = 0; n + 2 <= d; ++n) {
      const CVector a = random_vector(d);
      const CMatrix c = q_matrix(a, n).matrix * q_matrix(a, n + 1).matrix;
      EXPECT_EQ(c.cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(ChainRow, TwoStandardRowsGiveMinusOne) {
  const CVector e1 = (CVector(2) << 1.0, 0.0).finished();
  const CVector e2 = (CVector(2) << 0.0, 1.0).finished();
  const CMatrix c = chain_row(std::vector<CVector>{e1, e2});
  ASSERT_EQ(c.rows(), 1);
  ASSERT_EQ(c.cols(), 1);
  EXPECT_EQ(c(0, 0), cd(-1.0));
}

TEST(ChainRow, SingleRowIsTheRow) {
  const CVector a = random_vector(4);
  EXPECT_EQ(CVector(chain_row(std::vector<CVector>{a}).transpose()), a);
}

TEST(ChainRow, EntriesAreSignedMinors) {
  const CMatrix f = random_matrix(3, 5);
  std::vector<CVector> rows{f.row(0).transpose(), f.row(1).transpose(),
                            f.row(2).transpose()};
  const CMatrix c = chain_row(rows);
  const auto taus = enumerate_tuples(5, 3);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    CMatrix sub(3, 3);
    for (int j = 0; j < 3; ++j)
      sub.col(j) = f.col(taus[t].index(j));
    // (-1)^(k(k-1)/2) with k = 3.
    EXPECT_LT(std::abs(c(0, t) + sub.determinant()), 1e-13);
  }
}

TEST(ChainRow, NormSquaredIsGramDeterminant) {
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const int k = 1 + trial % std::min(d, 4);
    const CMatrix f = random_matrix(k, d);
    std::vector<CVector> rows;
    for (int i = 0; i < k; ++i)
      rows.push_back(f.row(i).transpose());
    const double lhs = chain_row(rows).squaredNorm();
    const double rhs = oracle::gram_determinant(rows);
    EXPECT_LE(std::abs(lhs - rhs), 1e-8 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(ChainRow, PolynomialVersionMatchesPointwise) {
  const auto f = random_poly_matrix(3, 4, 2);
  const IndexTuple pi({1, 3}, 3);
  const auto c = chain_row(f, pi);
  const cd z{0.3, 0.6};
  const CMatrix fz = f.eval(z);
  const CMatrix expect =
      chain_row(std::vector<CVector>{fz.row(0).transpose(), fz.row(2).transpose()});
  EXPECT_LT((c.eval(z) - expect).norm(), 1e-13);
}

TEST(ChainRow, RejectsTooManyRows) {
  EXPECT_THROW(chain_row(std::vector<CVector>{random_vector(2), random_vector(2),
                                              random_vector(2)}),
               std::invalid_argument);
}
