#pragma once

// Polynomials in z with complex Taylor coefficients. They stand in for
// bounded analytic functions on the unit disc; matrices of them stand in for
// the (column-truncated) F, H, G and v of the corona problem.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace koszul {

/// Default degree cap for fixture entries.
inline constexpr int kDefaultMaxDegree = 8;

class ComplexPolynomial {
public:
  ComplexPolynomial() : coeffs_{cd{0.0, 0.0}} {}
  ComplexPolynomial(cd constant) : coeffs_{constant} {}
  ComplexPolynomial(double constant) : coeffs_{cd{constant, 0.0}} {}
  explicit ComplexPolynomial(std::vector<cd> coeffs)
      : coeffs_(std::move(coeffs)) {
    normalize();
  }

  /// z^n scaled by c.
  static ComplexPolynomial monomial(int n, cd c = 1.0) {
    std::vector<cd> v(static_cast<std::size_t>(n) + 1, cd{});
    v.back() = c;
    return ComplexPolynomial(std::move(v));
  }
  static ComplexPolynomial z() { return monomial(1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cd> &coeffs() const { return coeffs_; }
  cd coeff(int n) const {
    return (n >= 0 && n <= degree()) ? coeffs_[n] : cd{};
  }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cd{}; }

  /// Horner evaluation.
  cd operator()(cd z) const {
    cd acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + *it;
    return acc;
  }

  ComplexPolynomial &operator+=(const ComplexPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), cd{});
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
      coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  ComplexPolynomial &operator-=(const ComplexPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), cd{});
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
      coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  ComplexPolynomial &operator*=(const ComplexPolynomial &o) {
    *this = *this * o;
    return *this;
  }

  friend ComplexPolynomial operator+(ComplexPolynomial a,
                                     const ComplexPolynomial &b) {
    return a += b;
  }
  friend ComplexPolynomial operator-(ComplexPolynomial a,
                                     const ComplexPolynomial &b) {
    return a -= b;
  }
  friend ComplexPolynomial operator-(ComplexPolynomial a) {
    for (auto &c : a.coeffs_)
      c = -c;
    a.normalize();
    return a;
  }
  friend ComplexPolynomial operator*(const ComplexPolynomial &a,
                                     const ComplexPolynomial &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<cd> out(a.coeffs_.size() + b.coeffs_.size() - 1, cd{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(out));
  }
  friend bool operator==(const ComplexPolynomial &a,
                         const ComplexPolynomial &b) {
    return a.coeffs_ == b.coeffs_;
  }

  ComplexPolynomial pow(int n) const {
    ComplexPolynomial r(1.0);
    for (int i = 0; i < n; ++i)
      r *= *this;
    return r;
  }

  /// Sum of coefficient moduli; bounds sup |p| over the closed disc.
  double l1_norm() const {
    double s = 0.0;
    for (const auto &c : coeffs_)
      s += std::abs(c);
    return s;
  }

private:
  // Only exact zeros are trimmed, so coefficient vectors survive
  // serialization bit for bit.
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == cd{})
      coeffs_.pop_back();
    if (coeffs_.empty())
      coeffs_.push_back(cd{});
  }

  std::vector<cd> coeffs_;
};

inline cd eval(const ComplexPolynomial &p, cd z) { return p(z); }

class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(Eigen::Index rows, Eigen::Index cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0)
      detail::invalid("PolyMatrix: negative dimension");
  }

  static PolyMatrix zero(Eigen::Index rows, Eigen::Index cols) {
    return {rows, cols};
  }
  static PolyMatrix identity(Eigen::Index n) {
    PolyMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      m(i, i) = 1.0;
    return m;
  }
  static PolyMatrix scaled_identity(const ComplexPolynomial &s,
                                    Eigen::Index n) {
    PolyMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      m(i, i) = s;
    return m;
  }
  static PolyMatrix constant(const CMatrix &c) {
    PolyMatrix m(c.rows(), c.cols());
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        m(i, j) = c(i, j);
    return m;
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

  ComplexPolynomial &operator()(Eigen::Index r, Eigen::Index c) {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }
  const ComplexPolynomial &operator()(Eigen::Index r, Eigen::Index c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  int max_degree() const {
    int d = 0;
    for (const auto &p : data_)
      d = std::max(d, p.degree());
    return d;
  }

  CMatrix eval(cd z) const {
    CMatrix out(rows_, cols_);
    for (Eigen::Index r = 0; r < rows_; ++r)
      for (Eigen::Index c = 0; c < cols_; ++c)
        out(r, c) = (*this)(r, c)(z);
    return out;
  }

  PolyMatrix block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr,
                   Eigen::Index nc) const {
    PolyMatrix out(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r)
      for (Eigen::Index c = 0; c < nc; ++c)
        out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }
  PolyMatrix row(Eigen::Index r) const { return block(r, 0, 1, cols_); }

  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.cols_ != b.rows_)
      detail::invalid("PolyMatrix: product dimension mismatch");
    PolyMatrix out(a.rows_, b.cols_);
    for (Eigen::Index r = 0; r < a.rows_; ++r)
      for (Eigen::Index c = 0; c < b.cols_; ++c) {
        ComplexPolynomial acc;
        for (Eigen::Index k = 0; k < a.cols_; ++k)
          acc += a(r, k) * b(k, c);
        out(r, c) = std::move(acc);
      }
    return out;
  }
  friend PolyMatrix operator*(const ComplexPolynomial &s, PolyMatrix m) {
    for (auto &p : m.data_)
      p = s * p;
    return m;
  }
  PolyMatrix &operator+=(const PolyMatrix &o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] += o.data_[i];
    return *this;
  }
  PolyMatrix &operator-=(const PolyMatrix &o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] -= o.data_[i];
    return *this;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix &b) {
    return a += b;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix &b) {
    return a -= b;
  }
  friend PolyMatrix operator-(PolyMatrix a) {
    for (auto &p : a.data_)
      p = -p;
    return a;
  }
  friend bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// [a b], side by side.
  static PolyMatrix hcat(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.rows_ != b.rows_)
      detail::invalid("PolyMatrix::hcat: row count mismatch");
    PolyMatrix out(a.rows_, a.cols_ + b.cols_);
    for (Eigen::Index r = 0; r < a.rows_; ++r) {
      for (Eigen::Index c = 0; c < a.cols_; ++c)
        out(r, c) = a(r, c);
      for (Eigen::Index c = 0; c < b.cols_; ++c)
        out(r, a.cols_ + c) = b(r, c);
    }
    return out;
  }

private:
  void check_same_shape(const PolyMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      detail::invalid("PolyMatrix: shape mismatch");
  }

  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::vector<ComplexPolynomial> data_;
};

inline CMatrix eval_matrix(const PolyMatrix &m, cd z) { return m.eval(z); }

/// Sample points in the open unit disc: `angles` equispaced points on each
/// circle of the given radii, radius-major. A zero radius contributes the
/// origin once.
class DiscGrid {
public:
  DiscGrid(std::vector<double> radii, int angles)
      : radii_(std::move(radii)), angles_(angles) {
    if (angles_ < 1)
      detail::invalid("DiscGrid: need at least one angle");
    for (double r : radii_) {
      if (!(r >= 0.0 && r < 1.0))
        detail::invalid("DiscGrid: radii must lie in [0, 1)");
      if (r == 0.0) {
        points_.emplace_back(0.0, 0.0);
        continue;
      }
      for (int j = 0; j < angles_; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angles_;
        points_.push_back(std::polar(r, theta));
      }
    }
  }

  /// Radii 0.1, 0.2, ..., 0.9, 0.95 with 64 angles each.
  static DiscGrid standard() { return DiscGrid(default_radii(), 64); }
  static std::vector<double> default_radii() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
  }

  const std::vector<cd> &points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<double> &radii() const { return radii_; }
  int angles() const { return angles_; }

  DiscGrid with_points_added(const std::vector<cd> &extra) const {
    DiscGrid g = *this;
    for (const auto &p : extra) {
      if (!(std::abs(p) < 1.0))
        detail::invalid("DiscGrid: point outside the open disc");
      g.points_.push_back(p);
    }
    return g;
  }

private:
  std::vector<double> radii_;
  int angles_;
  std::vector<cd> points_;
};

/// Pointwise spectral norms of M(z) over the grid, in grid order.
inline std::vector<double> pointwise_norms(const PolyMatrix &m,
                                           const DiscGrid &g) {
  std::vector<double> out(g.size());
  parallel_for(g.size(),
               [&](std::size_t i) { out[i] = spectral_norm(m.eval(g.points()[i])); });
  return out;
}

/// max over the grid of the largest singular value of M(z). This is a lower
/// estimate of the multiplier norm, which is a supremum over the whole disc.
inline double sup_operator_norm(const PolyMatrix &m, const DiscGrid &g) {
  if (g.empty())
    detail::invalid("sup_operator_norm: empty grid");
  const auto norms = pointwise_norms(m, g);
  return *std::max_element(norms.begin(), norms.end());
}

struct CoefficientSolve {
  PolyMatrix x;
  /// Grid sup of |A(z)x(z) - b(z)|.
  double residual = 0.0;
  /// Euclidean residual of the stacked coefficient system.
  double coefficient_residual = 0.0;
  bool success = false;
};

/// Solves A x = b for a polynomial vector x of degree <= degree_cap by
/// matching every Taylor coefficient of the product. The stacked system is
/// solved in the minimum-norm least-squares sense.
inline CoefficientSolve coefficient_match_solve(const PolyMatrix &a,
                                                const PolyMatrix &b,
                                                int degree_cap, double tol,
                                                const DiscGrid &grid =
                                                    DiscGrid::standard()) {
  if (b.cols() != 1 || a.rows() != b.rows())
    detail::invalid("coefficient_match_solve: dimension mismatch");
  if (degree_cap < 0)
    detail::invalid("coefficient_match_solve: negative degree cap");
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  const int n_unknown = degree_cap + 1;
  const int top = std::max(a.max_degree() + degree_cap, b.max_degree());
  const Eigen::Index n_eq = r * (top + 1);

  CMatrix sys = CMatrix::Zero(n_eq, c * n_unknown);
  CVector rhs = CVector::Zero(n_eq);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (int t = 0; t <= top; ++t)
      rhs(i * (top + 1) + t) = b(i, 0).coeff(t);
    for (Eigen::Index j = 0; j < c; ++j) {
      const auto &aij = a(i, j);
      for (int s = 0; s <= degree_cap; ++s)
        for (int q = 0; q <= aij.degree(); ++q)
          sys(i * (top + 1) + q + s, j * n_unknown + s) += aij.coeff(q);
    }
  }
  const auto ls = min_norm_solve(sys, rhs);

  CoefficientSolve out;
  out.x = PolyMatrix(c, 1);
  for (Eigen::Index j = 0; j < c; ++j) {
    std::vector<cd> coeffs(ls.x.data() + j * n_unknown,
                           ls.x.data() + (j + 1) * n_unknown);
    out.x(j, 0) = ComplexPolynomial(std::move(coeffs));
  }
  out.coefficient_residual = ls.residual;
  out.residual = grid.empty() ? 0.0 : sup_operator_norm(a * out.x - b, grid);
  out.success = out.residual <= tol;
  return out;
}

} // namespace koszul
