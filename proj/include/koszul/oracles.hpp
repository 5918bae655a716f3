#pragma once

// Reference computations that share no code path with the quantities they
// check: det_k through eigenvalues or Cauchy-Binet, and Gram determinants
// for the chain-row norm.

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <vector>

#include "combinat.hpp"
#include "linalg.hpp"

namespace koszul::oracle {

/// e_k(x_1, ..., x_n) for k = 0..n by the product expansion of prod (1 + x_i t).
template <class T> std::vector<T> elementary_symmetric(const std::vector<T> &x) {
  std::vector<T> e(x.size() + 1, T{});
  e[0] = T{1};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = i + 1; k >= 1; --k)
      e[k] += x[i] * e[k - 1];
  return e;
}

inline std::vector<double> hermitian_eigenvalues(const CMatrix &b) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(b, Eigen::EigenvaluesOnly);
  const auto &ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// e_k of the eigenvalues of a Hermitian matrix.
inline double detk_by_eigenvalues(const CMatrix &b, int k) {
  return elementary_symmetric(hermitian_eigenvalues(b))[k];
}

/// e_k of the eigenvalue moduli; a cancellation-free scale for det_k.
inline double detk_scale(const CMatrix &b, int k) {
  auto ev = hermitian_eigenvalues(b);
  for (double &x : ev)
    x = std::abs(x);
  return elementary_symmetric(ev)[k];
}

/// det_k(F F*) = sum over row tuples and column tuples of |det F[rows, cols]|^2.
inline double detk_cauchy_binet(const CMatrix &f, int k) {
  const int m = static_cast<int>(f.rows());
  const int d = static_cast<int>(f.cols());
  if (k > d)
    return 0.0;
  double sum = 0.0;
  for (const auto &rows : enumerate_tuples(m, k))
    for (const auto &cols : enumerate_tuples(d, k)) {
      CMatrix sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          sub(r, c) = f(rows.index(r), cols.index(c));
      sum += std::norm(sub.determinant());
    }
  return sum;
}

/// det(A A*) for rows stacked into A.
inline double gram_determinant(const std::vector<CVector> &rows) {
  CMatrix a(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return (a * a.adjoint()).determinant().real();
}

} // namespace koszul::oracle
