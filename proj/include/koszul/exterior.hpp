#pragma once

// Exterior powers of C^d in the standard basis e_pi (pi increasing, ordered
// lexicographically) and the wedge operators
//
//   Q*_a^(n) : L^n -> L^(n+1),   w |-> conj(a) ^ w
//   Q_a^(n)  : L^(n+1) -> L^n,   its adjoint.
//
// Q_a has the entries of a itself (no conjugate), so for a holomorphic row
// the operator is holomorphic too; that path is instantiated over
// ComplexPolynomial.

#include <span>
#include <vector>

#include "combinat.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "ring.hpp"

namespace koszul {

struct ExteriorBasis {
  int dimension = 0;
  int degree = 0;
  std::vector<IndexTuple> basis;

  ExteriorBasis(int d, int n) : dimension(d), degree(n) {
    if (n < 0 || n > d)
      detail::invalid("ExteriorBasis: need 0 <= n <= d");
    basis = d == 0 ? std::vector<IndexTuple>{IndexTuple::from_zero_based({}, 0)}
                   : enumerate_tuples(d, n);
  }
  std::size_t size() const { return basis.size(); }
};

/// One nonzero entry of a wedge operator: value = sign * a[component].
struct StencilEntry {
  Eigen::Index upper; // index in L^(n+1)
  Eigen::Index lower; // index in L^n
  int component;      // 0-based coordinate of a
  int sign;
};

/// Sparsity and sign pattern of w |-> e_p ^ w from L^n to L^(n+1),
/// shared by every instantiation.
inline std::vector<StencilEntry> wedge_stencil(int d, int n) {
  if (n < 0 || n + 1 > d)
    detail::invalid("wedge operator: need 0 <= n and n + 1 <= d");
  std::vector<StencilEntry> out;
  const auto lower = ExteriorBasis(d, n).basis;
  for (std::size_t col = 0; col < lower.size(); ++col) {
    const auto &sigma = lower[col];
    for (int p = 0; p < d; ++p) {
      if (sigma.contains_index(p))
        continue;
      out.push_back({static_cast<Eigen::Index>(tuple_rank(sigma.inserted_index(p), d)),
                     static_cast<Eigen::Index>(col), p,
                     insertion_sign(p + 1, sigma)});
    }
  }
  return out;
}

enum class Orientation { raising, lowering };

template <class Matrix> struct WedgeOperator {
  int source_degree = 0;
  int target_degree = 0;
  Orientation orientation = Orientation::lowering;
  Matrix matrix;
};

/// Matrix of Q_a^(n) : L^(n+1) -> L^n over any scalar ring.
template <class Scalar>
matrix_t<Scalar> q_lowering(std::span<const Scalar> a, int n) {
  const int d = static_cast<int>(a.size());
  const auto stencil = wedge_stencil(d, n);
  auto m = ring<Scalar>::zero(binomial(d, n), binomial(d, n + 1));
  for (const auto &e : stencil)
    m(e.lower, e.upper) = e.sign > 0 ? a[e.component] : Scalar(-a[e.component]);
  return m;
}

inline std::vector<cd> to_entries(const CVector &a) {
  return {a.data(), a.data() + a.size()};
}
inline std::vector<ComplexPolynomial> to_entries(const PolyMatrix &row) {
  if (row.rows() != 1)
    detail::invalid("expected a single polynomial row");
  std::vector<ComplexPolynomial> out;
  for (Eigen::Index c = 0; c < row.cols(); ++c)
    out.push_back(row(0, c));
  return out;
}

/// Q*_a^(n): w |-> conj(a) ^ w, from L^n to L^(n+1).
inline WedgeOperator<CMatrix> q_star_matrix(const CVector &a, int n) {
  const int d = static_cast<int>(a.size());
  const auto stencil = wedge_stencil(d, n);
  CMatrix m = CMatrix::Zero(binomial(d, n + 1), binomial(d, n));
  for (const auto &e : stencil)
    m(e.upper, e.lower) = static_cast<double>(e.sign) * std::conj(a(e.component));
  return {n, n + 1, Orientation::raising, std::move(m)};
}

/// Q_a^(n): the adjoint of q_star_matrix, from L^(n+1) to L^n.
inline WedgeOperator<CMatrix> q_matrix(const CVector &a, int n) {
  const auto entries = to_entries(a);
  return {n + 1, n, Orientation::lowering,
          q_lowering<cd>(std::span<const cd>(entries), n)};
}

/// Polynomial-entry Q_f^(n) for a holomorphic row f (1 x d).
inline WedgeOperator<PolyMatrix> q_matrix(const PolyMatrix &row, int n) {
  const auto entries = to_entries(row);
  return {n + 1, n, Orientation::lowering,
          q_lowering<ComplexPolynomial>(
              std::span<const ComplexPolynomial>(entries), n)};
}

/// a_1 Q_{a_2}^(1) ... Q_{a_k}^(k-1) as a 1 x C(d,k) row over L^k.
///
/// Its entry at e_tau is the k x k minor of the stacked rows on the columns
/// tau, up to the fixed sign (-1)^(k(k-1)/2).
template <class Scalar>
matrix_t<Scalar> chain_row(const std::vector<std::vector<Scalar>> &rows) {
  if (rows.empty())
    detail::invalid("chain_row: need at least one row");
  const std::size_t d = rows.front().size();
  if (rows.size() > d)
    detail::invalid("chain_row: more rows than the ambient dimension");
  for (const auto &r : rows)
    if (r.size() != d)
      detail::invalid("chain_row: rows of unequal length");
  auto acc = q_lowering<Scalar>(std::span<const Scalar>(rows[0]), 0);
  for (std::size_t l = 1; l < rows.size(); ++l)
    acc = acc * q_lowering<Scalar>(std::span<const Scalar>(rows[l]),
                                   static_cast<int>(l));
  return acc;
}

inline CMatrix chain_row(const std::vector<CVector> &rows) {
  std::vector<std::vector<cd>> e;
  for (const auto &r : rows)
    e.push_back(to_entries(r));
  return chain_row<cd>(e);
}

/// Chain row over the rows of F selected by pi (polynomial entries).
inline PolyMatrix chain_row(const PolyMatrix &f, const IndexTuple &pi) {
  std::vector<std::vector<ComplexPolynomial>> e;
  for (std::size_t l = 0; l < pi.size(); ++l)
    e.push_back(to_entries(f.row(pi.index(l))));
  return chain_row<ComplexPolynomial>(e);
}

/// Spectral norm of Q_n* Q_n + Q_(n+1) Q_(n+1)* - |a|^2 I on L^(n+1).
inline double verify_qid(const CVector &a, int n) {
  if (a.norm() == 0.0)
    detail::invalid("verify_qid: a must be nonzero");
  const int d = static_cast<int>(a.size());
  if (n < 0 || n + 2 > d)
    detail::invalid("verify_qid: need n + 2 <= d");
  const CMatrix qn = q_matrix(a, n).matrix;
  const CMatrix qn1 = q_matrix(a, n + 1).matrix;
  const CMatrix lhs = qn.adjoint() * qn + qn1 * qn1.adjoint();
  return spectral_norm(lhs - a.squaredNorm() *
                                 CMatrix::Identity(lhs.rows(), lhs.cols()));
}

/// Spectral norm of Q_a^(n) Q_b^(n+1) + Q_b^(n) Q_a^(n+1).
inline double verify_anticommute(const CVector &a, const CVector &b, int n) {
  if (a.size() != b.size())
    detail::invalid("verify_anticommute: length mismatch");
  const int d = static_cast<int>(a.size());
  if (n < 0 || n + 2 > d)
    detail::invalid("verify_anticommute: need n + 2 <= d");
  const CMatrix s = q_matrix(a, n).matrix * q_matrix(b, n + 1).matrix +
                    q_matrix(b, n).matrix * q_matrix(a, n + 1).matrix;
  return spectral_norm(s);
}

} // namespace koszul
