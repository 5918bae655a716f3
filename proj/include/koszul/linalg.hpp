#pragma once

// Small dense helpers shared by the numeric checks.

#include <Eigen/Dense>

#include <complex>

namespace koszul {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-10;

inline double spectral_norm(const CMatrix &m) {
  if (m.size() == 0)
    return 0.0;
  if (m.rows() == 1 || m.cols() == 1)
    return m.norm();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

/// Number of singular values above cutoff * sigma_max.
inline int numeric_rank(const CMatrix &m, double cutoff = kRankCutoff) {
  if (m.size() == 0)
    return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto &s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0)
    return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff * s(0))
      ++r;
  return r;
}

struct LeastSquares {
  CVector x;
  double residual = 0.0;
};

/// Minimum-norm least-squares solution of a x = b, singular values below
/// cutoff * sigma_max treated as zero.
inline LeastSquares min_norm_solve(const CMatrix &a, const CVector &b,
                                   double cutoff = kRankCutoff) {
  LeastSquares out;
  if (a.cols() == 0) {
    out.x = CVector(0);
    out.residual = b.norm();
    return out;
  }
  if (a.rows() == 0) {
    out.x = CVector::Zero(a.cols());
    return out;
  }
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(cutoff);
  out.x = svd.solve(b);
  out.residual = (a * out.x - b).norm();
  return out;
}

} // namespace koszul
