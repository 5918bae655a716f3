#pragma once

// det_k(B): the sum of the k x k principal minors of B.

#include <Eigen/LU>

#include "combinat.hpp"
#include "linalg.hpp"

namespace koszul {

/// Square complex matrix symmetrized to B = (B + B*)/2 on construction.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const CMatrix &b) {
    if (b.rows() != b.cols())
      detail::invalid("HermitianMatrix: matrix must be square");
    b_ = 0.5 * (b + b.adjoint());
  }
  const CMatrix &matrix() const { return b_; }
  Eigen::Index size() const { return b_.rows(); }

private:
  CMatrix b_;
};

/// Sum of det(B[pi, pi]) over pi in lexicographic order; each minor by LU with
/// partial pivoting.
inline cd det_k(const CMatrix &b, int k) {
  if (b.rows() != b.cols())
    detail::invalid("det_k: matrix must be square");
  const int m = static_cast<int>(b.rows());
  if (k < 1 || k > m)
    detail::invalid("det_k: need 1 <= k <= m");
  cd sum{};
  for (const auto &pi : enumerate_tuples(m, k))
    sum += Eigen::PartialPivLU<CMatrix>(compress(b, pi)).determinant();
  return sum;
}

inline cd det_k(const HermitianMatrix &b, int k) { return det_k(b.matrix(), k); }

/// det_k(F F*). Real and non-negative up to rounding; values for k above the
/// rank are returned as computed (near zero), not clamped.
inline double det_k_gram(const CMatrix &f_point, int k) {
  return det_k(HermitianMatrix(f_point * f_point.adjoint()), k).real();
}

} // namespace koszul
