#pragma once

// Hypotheses of the matrix Wolff theorem on a grid, and the scalar
// subproblem  k! sum_pi f_{i_1} Q_{i_2}^(1) ... Q_{i_k}^(k-1) v_pi = h.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "detk.hpp"
#include "exterior.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "poly.hpp"

namespace koszul {

/// How hypothesis (ii) on the multiplier norm of F is judged.
enum class NormMode {
  equal,   // |M_F| = 1 within 1e-6
  at_most, // |M_F| <= 1 + 1e-6
};

inline const char *to_string(NormMode m) {
  return m == NormMode::equal ? "equal" : "at_most";
}

inline constexpr double kMarginTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-6;
inline constexpr double kRangeTolerance = 1e-8;

struct HypothesisPoint {
  cd z;
  int rank = 0;
  double det_k = 0.0;
  double margin = 0.0; // det_k^(3/2) - max_i |h_i(z)|
  double norm = 0.0;   // |F(z)|
  double range_residual = 0.0;
};

struct HypothesisReport {
  std::vector<HypothesisPoint> points;
  int k = 0;
  std::optional<int> expected_k;
  bool k_mismatch = false;

  double min_margin = 0.0;
  std::size_t min_margin_at = 0;
  double norm_estimate = 0.0;
  NormMode norm_mode = NormMode::equal;
  double max_range_residual = 0.0;
  std::size_t max_range_residual_at = 0;
  double h_scale = 0.0; // grid sup of |H(z)|

  bool margin_ok = false;
  bool norm_ok = false;
  bool range_ok = false;
  std::vector<std::size_t> range_failures;

  bool pass() const { return margin_ok && norm_ok && range_ok; }
};

/// Minimum-norm least-squares u with F u ~ H, cutoff 1e-10 relative.
inline LeastSquares pointwise_min_norm_solution(const CMatrix &f_point,
                                                const CVector &h_point) {
  if (f_point.rows() != h_point.size())
    detail::invalid("pointwise_min_norm_solution: shape mismatch");
  return min_norm_solve(f_point, h_point);
}

inline HypothesisReport check_hypotheses(const PolyMatrix &f,
                                         const PolyMatrix &h,
                                         const DiscGrid &grid,
                                         NormMode mode = NormMode::equal,
                                         std::optional<int> expected_k = {}) {
  if (h.cols() != 1 || h.rows() != f.rows())
    detail::invalid("check_hypotheses: H must be m x 1 with m = rows(F)");
  if (grid.empty())
    detail::invalid("check_hypotheses: empty grid");
  HypothesisReport rep;
  rep.norm_mode = mode;
  rep.expected_k = expected_k;
  rep.points.resize(grid.size());

  parallel_for(grid.size(), [&](std::size_t i) {
    auto &pt = rep.points[i];
    pt.z = grid.points()[i];
    const CMatrix fz = f.eval(pt.z);
    const CVector hz = h.eval(pt.z).col(0);
    pt.rank = numeric_rank(fz);
    pt.norm = spectral_norm(fz);
    pt.range_residual = pointwise_min_norm_solution(fz, hz).residual;
  });

  for (const auto &pt : rep.points)
    rep.k = std::max(rep.k, pt.rank);
  rep.k = std::max(rep.k, 1);
  if (expected_k && *expected_k != rep.k)
    rep.k_mismatch = true;

  const int m = static_cast<int>(f.rows());
  const int k = std::min(rep.k, m);
  parallel_for(grid.size(), [&](std::size_t i) {
    auto &pt = rep.points[i];
    const CVector hz = h.eval(pt.z).col(0);
    pt.det_k = det_k_gram(f.eval(pt.z), k);
    const double hmax = hz.size() ? hz.cwiseAbs().maxCoeff() : 0.0;
    pt.margin = std::pow(std::max(pt.det_k, 0.0), 1.5) - hmax;
  });

  rep.min_margin = rep.points[0].margin;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto &pt = rep.points[i];
    if (pt.margin < rep.min_margin) {
      rep.min_margin = pt.margin;
      rep.min_margin_at = i;
    }
    if (pt.norm > rep.norm_estimate)
      rep.norm_estimate = pt.norm;
    if (pt.range_residual > rep.max_range_residual) {
      rep.max_range_residual = pt.range_residual;
      rep.max_range_residual_at = i;
    }
    rep.h_scale = std::max(rep.h_scale, h.eval(pt.z).col(0).norm());
  }

  rep.margin_ok = rep.min_margin >= -kMarginTolerance;
  rep.norm_ok = mode == NormMode::equal
                    ? std::abs(rep.norm_estimate - 1.0) <= kNormTolerance
                    : rep.norm_estimate <= 1.0 + kNormTolerance;
  // A zero H is trivially in the range; compare against an absolute floor.
  const double range_tol = kRangeTolerance * std::max(rep.h_scale, 1e-300);
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    if (rep.points[i].range_residual > range_tol)
      rep.range_failures.push_back(i);
  rep.range_ok = rep.range_failures.empty();
  return rep;
}

/// The polynomial row R = k! [chain_row(f_pi)]_pi, pi in Pi_k(m), of width
/// C(m,k) C(d,k). Its pointwise squared norm is (k!)^2 det_k(F F*).
inline PolyMatrix scalar_corona_row(const PolyMatrix &f, int k) {
  const int m = static_cast<int>(f.rows());
  const int d = static_cast<int>(f.cols());
  if (k < 1 || k > m || k > d)
    detail::invalid("scalar_corona_row: need 1 <= k <= min(m, d)");
  const auto tuples = enumerate_tuples(m, k);
  const auto width = static_cast<Eigen::Index>(binomial(d, k));
  PolyMatrix row(1, static_cast<Eigen::Index>(tuples.size()) * width);
  const ComplexPolynomial scale(factorial(k));
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const PolyMatrix c = chain_row(f, tuples[t]);
    for (Eigen::Index j = 0; j < width; ++j)
      row(0, static_cast<Eigen::Index>(t) * width + j) = scale * c(0, j);
  }
  return row;
}

struct ScalarSolve {
  int target_row = 0; // 0-based
  int k = 0;
  PolyMatrix row;  // R
  PolyMatrix v;    // stacked (v_pi)_pi, C(m,k) C(d,k) x 1
  double residual = 0.0;
  double coefficient_residual = 0.0;
  double v_sup_norm = 0.0;
  bool success = false;
};

/// Solves R v = h_target by coefficient matching with deg v <= degree_cap.
/// A residual above tol is reported (success = false), not thrown.
inline ScalarSolve scalar_corona_solve(const PolyMatrix &f,
                                       const ComplexPolynomial &h_target,
                                       int target_row, int k, int degree_cap,
                                       double tol,
                                       const DiscGrid &grid = DiscGrid::standard()) {
  ScalarSolve out;
  out.target_row = target_row;
  out.k = k;
  out.row = scalar_corona_row(f, k);
  PolyMatrix b(1, 1);
  b(0, 0) = h_target;
  const auto sol = coefficient_match_solve(out.row, b, degree_cap, tol, grid);
  out.v = sol.x;
  out.residual = sol.residual;
  out.coefficient_residual = sol.coefficient_residual;
  out.success = sol.success;
  out.v_sup_norm = sup_operator_norm(out.v, grid);
  return out;
}

} // namespace koszul
