#pragma once

// The ordered block determinant
//
//   "det"(T) = sum over permutations s of sgn(s) T_{1 s(1)} T_{2 s(2)} ... T_{n s(n)}
//
// where block T_{jk} maps X_{j+1} -> X_j, so every product is composable and
// the factors are multiplied strictly in row order. Blocks need not commute.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "combinat.hpp"
#include "exterior.hpp"
#include "ring.hpp"

namespace koszul {

template <class Matrix> class BlockOperatorMatrix {
public:
  /// `dims` lists dim X_1 ... dim X_(n+1).
  BlockOperatorMatrix(std::size_t n, std::vector<Eigen::Index> dims)
      : n_(n), dims_(std::move(dims)), blocks_(n * n) {
    if (dims_.size() != n + 1)
      detail::invalid("BlockOperatorMatrix: signature must have n + 1 entries");
  }

  std::size_t size() const { return n_; }
  const std::vector<Eigen::Index> &signature() const { return dims_; }

  /// Sets block (row, col), 0-based; it must map X_(row+2) -> X_(row+1).
  void set(std::size_t row, std::size_t col, Matrix block) {
    if (row >= n_ || col >= n_)
      detail::invalid("BlockOperatorMatrix: block index out of range");
    if (block.rows() != dims_[row] || block.cols() != dims_[row + 1])
      detail::invalid("BlockOperatorMatrix: block (" + std::to_string(row) +
                      "," + std::to_string(col) +
                      ") does not match the signature");
    blocks_[row * n_ + col] = std::move(block);
  }

  const Matrix &at(std::size_t row, std::size_t col) const {
    const auto &b = blocks_[row * n_ + col];
    if (!b)
      detail::invalid("BlockOperatorMatrix: block (" + std::to_string(row) +
                      "," + std::to_string(col) + ") was never set");
    return *b;
  }

private:
  std::size_t n_;
  std::vector<Eigen::Index> dims_;
  std::vector<std::optional<Matrix>> blocks_;
};

inline int permutation_sign(const std::vector<std::size_t> &p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j])
        ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Factorial expansion; terms are accumulated in lexicographic permutation
/// order. Intended for n <= 6.
template <class Matrix>
Matrix operator_det(const BlockOperatorMatrix<Matrix> &b) {
  const std::size_t n = b.size();
  if (n == 0 || n > 6)
    detail::invalid("operator_det: need 1 <= n <= 6");
  const auto &dims = b.signature();
  Matrix acc = matrix_ring<Matrix>::zero(dims.front(), dims.back());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    Matrix term = b.at(0, perm[0]);
    for (std::size_t row = 1; row < n; ++row)
      term = term * b.at(row, perm[row]);
    if (permutation_sign(perm) > 0)
      acc += term;
    else
      acc -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

namespace detail {

// Block matrix whose first row holds scalars, second row the given f-rows,
// and rows 3.. the wedge operators Q^(1), Q^(2), ... of the same f-rows.
// It maps L^(n-1) -> C.
inline BlockOperatorMatrix<CMatrix>
scalar_f_q_blocks(const std::vector<cd> &first_row,
                  const std::vector<CVector> &rows) {
  const std::size_t n = rows.size();
  const int d = static_cast<int>(rows.front().size());
  if (first_row.size() != n)
    invalid("block matrix: first row length mismatch");
  if (n < 2 || static_cast<int>(n) - 1 > d)
    invalid("block matrix: need 2 <= n and n - 1 <= d");
  std::vector<Eigen::Index> dims{1, 1};
  for (std::size_t r = 1; r < n; ++r)
    dims.push_back(static_cast<Eigen::Index>(binomial(d, r)));
  BlockOperatorMatrix<CMatrix> b(n, dims);
  for (std::size_t c = 0; c < n; ++c) {
    if (rows[c].size() != d)
      invalid("block matrix: rows of unequal length");
    b.set(0, c, CMatrix::Constant(1, 1, first_row[c]));
    b.set(1, c, rows[c].transpose());
    for (std::size_t r = 2; r < n; ++r)
      b.set(r, c, q_matrix(rows[c], static_cast<int>(r) - 1).matrix);
  }
  return b;
}

} // namespace detail

/// Checks the expansion of the block determinant with first row
/// (H_1, H_{i_1}, ..., H_{i_p}), second row (f_1, f_{i_1}, ..., f_{i_p}) and
/// wedge rows Q^(1) ... Q^(p-1):
///
///   "det" = p! [ H_1 f_{i_1} Q_{i_2}^(1)...Q_{i_p}^(p-1)
///              + sum_l (-1)^l H_{i_l} f_1 Q_{i_1}^(1)...(i_l omitted)...Q_{i_p}^(p-1) ].
///
/// `h` and `rows` are indexed (1, i_1, ..., i_p). Returns |lhs - rhs|.
inline double lemma1_check(const std::vector<cd> &h,
                           const std::vector<CVector> &rows) {
  const std::size_t n = rows.size();
  if (n < 2 || n > 5)
    detail::invalid("lemma1_check: need 1 <= p <= 4");
  const std::size_t p = n - 1;
  const CMatrix lhs = operator_det(detail::scalar_f_q_blocks(h, rows));

  const std::vector<CVector> tail(rows.begin() + 1, rows.end());
  CMatrix rhs = h[0] * chain_row(tail);
  for (std::size_t l = 1; l <= p; ++l) {
    std::vector<CVector> others{rows[0]};
    for (std::size_t j = 1; j <= p; ++j)
      if (j != l)
        others.push_back(rows[j]);
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    rhs += sign * h[l] * chain_row(others);
  }
  rhs *= factorial(p);
  return (lhs - rhs).norm();
}

/// The block determinant with first row (H_{j_1}, ..., H_{j_(p+1)}),
/// H = F u, then the f-rows and wedge rows of the tuple. Maps L^p -> C.
inline CMatrix lemma2_det(const CMatrix &f_point, const CVector &u,
                          const IndexTuple &tuple) {
  if (u.size() != f_point.cols())
    detail::invalid("lemma2: u has the wrong length");
  if (tuple.size() < 2)
    detail::invalid("lemma2: tuple must have length p + 1 >= 2");
  const CVector h = f_point * u;
  std::vector<cd> first;
  std::vector<CVector> rows;
  for (std::size_t l = 0; l < tuple.size(); ++l) {
    if (tuple.index(l) >= f_point.rows())
      detail::invalid("lemma2: tuple entry exceeds the row count");
    first.push_back(h(tuple.index(l)));
    rows.push_back(f_point.row(tuple.index(l)).transpose());
  }
  return operator_det(detail::scalar_f_q_blocks(first, rows));
}

/// Norm of lemma2_det after confirming rank(F) <= p numerically; throws
/// precondition_failed otherwise.
inline double lemma2_check(const CMatrix &f_point, const CVector &u,
                           const IndexTuple &tuple) {
  const int p = static_cast<int>(tuple.size()) - 1;
  if (numeric_rank(f_point) > p)
    throw precondition_failed("lemma2_check: rank(F) exceeds p = " +
                              std::to_string(p));
  return lemma2_det(f_point, u, tuple).norm();
}

} // namespace koszul
