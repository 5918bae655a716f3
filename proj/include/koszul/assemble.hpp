#pragma once

// Assembly of G from the scalar solutions v_i:
//
//   G_i = sum_{pi in Pi_k(m)} k "det"(pi) v_(i,pi)
//
// where "det"(pi) is the block determinant of the k x k operator matrix whose
// first row is the coordinate selector (delta_{i_1 i} I, ..., delta_{i_k i} I)
// and whose rows 2..k are Q_{i_1}^(r), ..., Q_{i_k}^(r). Each block maps
// L^k -> C^d. G = G_1 + ... + G_m.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "combinat.hpp"
#include "corona.hpp"
#include "detk.hpp"
#include "estimates.hpp"
#include "exterior.hpp"
#include "opdet.hpp"
#include "poly.hpp"

namespace koszul {

/// k "det" of the k x k block matrix with first row (alpha_1 I, ..., alpha_k I)
/// and rows r = 2..k given by Q^(r-1) of the rows of F indexed by pi. The
/// result maps L^k -> C^d.
template <class Scalar>
matrix_t<Scalar> wedge_block(const std::vector<std::vector<Scalar>> &rows_pi,
                             const std::vector<Scalar> &alpha_pi) {
  const int k = static_cast<int>(rows_pi.size());
  if (k < 1 || alpha_pi.size() != rows_pi.size())
    detail::invalid("wedge_block: need k >= 1 rows and k coefficients");
  const auto d = static_cast<Eigen::Index>(rows_pi.front().size());
  if (k > d)
    detail::invalid("wedge_block: k exceeds the ambient dimension");
  std::vector<Eigen::Index> dims{d};
  for (int r = 1; r <= k; ++r)
    dims.push_back(static_cast<Eigen::Index>(binomial(d, r)));
  BlockOperatorMatrix<matrix_t<Scalar>> b(static_cast<std::size_t>(k), dims);
  for (int l = 0; l < k; ++l) {
    b.set(0, l, ring<Scalar>::scaled_identity(alpha_pi[l], d));
    for (int r = 1; r < k; ++r)
      b.set(r, l, q_lowering<Scalar>(std::span<const Scalar>(rows_pi[l]), r));
  }
  matrix_t<Scalar> out = Scalar(static_cast<double>(k)) * operator_det(b);
  return out;
}

/// wedge_block for the coordinate selector alpha = e_i (target row i,
/// 0-based), as a d x C(d,k) polynomial matrix. Zero when i is not in pi.
inline PolyMatrix selector_block(const PolyMatrix &f, const IndexTuple &pi,
                                 int target_row, int k) {
  const Eigen::Index d = f.cols();
  if (static_cast<int>(pi.size()) != k || k < 1 || k > d)
    detail::invalid("selector_block: tuple length must equal k <= d");
  if (!pi.contains_index(target_row))
    return PolyMatrix::zero(d, static_cast<Eigen::Index>(binomial(d, k)));
  std::vector<std::vector<ComplexPolynomial>> rows;
  std::vector<ComplexPolynomial> alpha;
  for (int l = 0; l < k; ++l) {
    rows.push_back(to_entries(f.row(pi.index(l))));
    alpha.emplace_back(pi.index(l) == target_row ? 1.0 : 0.0);
  }
  return wedge_block<ComplexPolynomial>(rows, alpha);
}

/// G_i from the stacked v_i (C(m,k) C(d,k) x 1, canonical tuple order).
inline PolyMatrix build_Gi(const PolyMatrix &f, const PolyMatrix &v_i,
                           int target_row, int k) {
  const int m = static_cast<int>(f.rows());
  const int d = static_cast<int>(f.cols());
  if (k < 1 || k > std::min(m, d))
    detail::invalid("build_Gi: need 1 <= k <= min(m, d)");
  if (target_row < 0 || target_row >= m)
    detail::invalid("build_Gi: target row out of range");
  const auto tuples = enumerate_tuples(m, k);
  const auto width = static_cast<Eigen::Index>(binomial(d, k));
  if (v_i.cols() != 1 ||
      v_i.rows() != static_cast<Eigen::Index>(tuples.size()) * width)
    detail::invalid("build_Gi: v has the wrong shape");
  PolyMatrix g = PolyMatrix::zero(d, 1);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (!tuples[t].contains_index(target_row))
      continue;
    g += selector_block(f, tuples[t], target_row, k) *
         v_i.block(static_cast<Eigen::Index>(t) * width, 0, width, 1);
  }
  return g;
}

struct AnnihilationReport {
  double max_offdiagonal = 0.0;     // over rank-k points
  double max_offdiagonal_all = 0.0; // including excluded points
  double max_target_error = 0.0;    // |f_i G_i - h_i| over rank-k points
  std::vector<std::size_t> excluded; // grid points with rank F(z) < k
};

/// max |f_j(z) G_i(z)| over j != i and grid points where rank F(z) = k.
/// When h_i is supplied, also max |f_i(z) G_i(z) - h_i(z)| there.
inline AnnihilationReport
offdiagonal_annihilation_check(const PolyMatrix &f, const PolyMatrix &g_i,
                               int target_row, const DiscGrid &grid, int k,
                               const ComplexPolynomial *h_i = nullptr) {
  AnnihilationReport rep;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const cd z = grid.points()[p];
    const CMatrix fz = f.eval(z);
    const CVector fg = fz * g_i.eval(z).col(0);
    double off = 0.0;
    for (Eigen::Index j = 0; j < fg.size(); ++j)
      if (j != target_row)
        off = std::max(off, std::abs(fg(j)));
    rep.max_offdiagonal_all = std::max(rep.max_offdiagonal_all, off);
    if (numeric_rank(fz) < k) {
      rep.excluded.push_back(p);
      continue;
    }
    rep.max_offdiagonal = std::max(rep.max_offdiagonal, off);
    if (h_i)
      rep.max_target_error =
          std::max(rep.max_target_error, std::abs(fg(target_row) - (*h_i)(z)));
  }
  return rep;
}

enum class AssemblyStrategy {
  /// Assemble over all m rows exactly as the construction states.
  direct,
  /// When k < m, assemble on a k-row subsystem F_S of full generic rank and
  /// let the remaining rows follow by linear dependence.
  row_subset,
};

inline const char *to_string(AssemblyStrategy s) {
  return s == AssemblyStrategy::direct ? "direct" : "row_subset";
}

struct AssemblyOptions {
  int degree_cap = 2 * kDefaultMaxDegree + 4;
  double tol = 1e-8;
  NormMode norm_mode = NormMode::equal;
  std::optional<int> expected_k;
  AssemblyStrategy strategy = AssemblyStrategy::direct;
};

inline constexpr double kEndToEndTolerance = 1e-6;

struct RowPart {
  int row = 0; // 0-based row of F
  ScalarSolve solve;
  PolyMatrix g;
  double g_sup_norm = 0.0;
  double chain_bound = 0.0; // k! C(m-1,k-1) sup |v_i|
  bool chain_ok = false;
  AnnihilationReport annihilation;
};

struct SolutionBundle {
  int m = 0;
  int d = 0;
  int k = 0;
  AssemblyStrategy strategy = AssemblyStrategy::direct;
  std::vector<int> assembled_rows; // 0-based rows the construction ran on
  HypothesisReport hypotheses;

  PolyMatrix g;
  std::vector<RowPart> parts;
  std::vector<double> residuals; // |F(z)G(z) - H(z)| per grid point
  double max_residual = 0.0;
  std::size_t max_residual_at = 0;
  double mean_residual = 0.0;
  double h_scale = 0.0;
  double g_sup_norm = 0.0;

  double K = 0.0;
  double binom = 0.0; // C(m-1, k-1)
  double bound_binom_K = 0.0;    // m C(m-1,k-1) K
  double bound_k_factorial = 0.0; // m k! C(m-1,k-1) K
  double bound_data = 0.0;     // m k! C(m-1,k-1) max_i sup |v_i|

  bool all_solves_succeeded = false;
  bool residual_ok = false;
  bool annihilation_ok = false;
  bool chain_ok = false;
};

namespace detail {

inline PolyMatrix select_rows(const PolyMatrix &a, const std::vector<int> &rows) {
  PolyMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out(static_cast<Eigen::Index>(r), c) = a(rows[r], c);
  return out;
}

// First k-row subset whose rank matches rank F(z) = k at the most grid points.
inline std::vector<int> pick_row_subset(const PolyMatrix &f, int k,
                                        const DiscGrid &grid,
                                        const HypothesisReport &hyp) {
  const int m = static_cast<int>(f.rows());
  std::vector<int> best;
  std::size_t best_hits = 0;
  for (const auto &s : enumerate_tuples(m, k)) {
    const PolyMatrix fs = select_rows(f, s.zero_based());
    std::size_t hits = 0;
    for (std::size_t p = 0; p < grid.size(); ++p)
      if (hyp.points[p].rank == k && numeric_rank(fs.eval(grid.points()[p])) == k)
        ++hits;
    if (best.empty() || hits > best_hits) {
      best = s.zero_based();
      best_hits = hits;
    }
  }
  return best;
}

} // namespace detail

/// Solves F G = H: one scalar solve per row, G_i assembled, G = sum G_i.
/// Throws precondition_failed when H(z) is not in the range of F(z) on the
/// grid. Failed scalar solves are flagged in the bundle.
inline SolutionBundle solve_full(const PolyMatrix &f, const PolyMatrix &h,
                                 const DiscGrid &grid,
                                 const AssemblyOptions &opts = {}) {
  SolutionBundle b;
  b.m = static_cast<int>(f.rows());
  b.d = static_cast<int>(f.cols());
  b.strategy = opts.strategy;
  b.hypotheses = check_hypotheses(f, h, grid, opts.norm_mode, opts.expected_k);
  if (!b.hypotheses.range_ok)
    throw precondition_failed(
        "solve_full: H(z) is not in the range of F(z) on the grid");
  b.k = std::min({b.hypotheses.k, b.m, b.d});
  if (b.k < 1)
    detail::invalid("solve_full: F needs at least one column");

  std::vector<int> rows(b.m);
  for (int i = 0; i < b.m; ++i)
    rows[i] = i;
  if (opts.strategy == AssemblyStrategy::row_subset && b.k < b.m)
    rows = detail::pick_row_subset(f, b.k, grid, b.hypotheses);
  b.assembled_rows = rows;
  const PolyMatrix fa = detail::select_rows(f, rows);
  const PolyMatrix ha = detail::select_rows(h, rows);
  const int ma = static_cast<int>(rows.size());

  b.K = K_constant();
  b.binom = static_cast<double>(binomial(b.m - 1, b.k - 1));
  b.bound_binom_K = norm_bound(b.m, b.k);
  b.bound_k_factorial = b.m * factorial(b.k) * b.binom * b.K;
  const double chain_factor =
      factorial(b.k) * static_cast<double>(binomial(ma - 1, b.k - 1));

  b.g = PolyMatrix::zero(b.d, 1);
  b.all_solves_succeeded = true;
  b.chain_ok = true;
  b.annihilation_ok = true;
  double v_sup_max = 0.0;
  for (int i = 0; i < ma; ++i) {
    RowPart part;
    part.row = rows[i];
    part.solve = scalar_corona_solve(fa, ha(i, 0), i, b.k, opts.degree_cap,
                                     opts.tol, grid);
    part.g = build_Gi(fa, part.solve.v, i, b.k);
    part.g_sup_norm = sup_operator_norm(part.g, grid);
    part.chain_bound = chain_factor * part.solve.v_sup_norm;
    part.chain_ok = part.g_sup_norm <= part.chain_bound * (1.0 + 1e-12) + 1e-15;
    part.annihilation = offdiagonal_annihilation_check(fa, part.g, i, grid,
                                                       b.k, &ha(i, 0));
    b.all_solves_succeeded = b.all_solves_succeeded && part.solve.success;
    b.chain_ok = b.chain_ok && part.chain_ok;
    const double scale = std::max(1.0, b.hypotheses.h_scale);
    b.annihilation_ok =
        b.annihilation_ok &&
        part.annihilation.max_offdiagonal <= kEndToEndTolerance * scale &&
        part.annihilation.max_target_error <= kEndToEndTolerance * scale;
    v_sup_max = std::max(v_sup_max, part.solve.v_sup_norm);
    b.g += part.g;
    b.parts.push_back(std::move(part));
  }
  b.bound_data = b.m * factorial(b.k) * b.binom * v_sup_max;

  const PolyMatrix diff = f * b.g - h;
  b.residuals = pointwise_norms(diff, grid);
  double sum = 0.0;
  for (std::size_t p = 0; p < b.residuals.size(); ++p) {
    sum += b.residuals[p];
    if (b.residuals[p] > b.max_residual) {
      b.max_residual = b.residuals[p];
      b.max_residual_at = p;
    }
  }
  b.mean_residual = b.residuals.empty() ? 0.0 : sum / b.residuals.size();
  b.h_scale = b.hypotheses.h_scale;
  b.g_sup_norm = sup_operator_norm(b.g, grid);
  b.residual_ok = b.max_residual <= kEndToEndTolerance * b.h_scale ||
                  b.max_residual == 0.0;
  return b;
}

struct RadicalReport {
  int n = 1;
  double power_residual = 0.0; // grid sup |F G - H^n|
  double g_sup_norm = 0.0;
  double c_implemented = 0.0;  // (sup |G|)^2
  double c_stated = 0.0;       // (sup |G|)^(2m)
  double min_margin = 0.0;     // with c_implemented
  std::size_t min_margin_at = 0;
  int min_margin_row = 0;
  double min_margin_stated = 0.0; // with c_stated
  bool pass = false;
};

inline constexpr double kRadicalTolerance = 1e-10;

/// C det_1(F F*) >= |h_i|^(2n) on the grid, given F G = H^n (entrywise power).
/// Throws precondition_failed if F G differs from H^n by more than
/// power_tol * sup |H^n|.
inline RadicalReport radical_necessary_check(const PolyMatrix &f,
                                             const PolyMatrix &g,
                                             const PolyMatrix &h, int n,
                                             const DiscGrid &grid,
                                             double power_tol = kEndToEndTolerance) {
  if (n < 1)
    detail::invalid("radical_necessary_check: n must be positive");
  if (g.cols() != 1 || g.rows() != f.cols() || h.cols() != 1 ||
      h.rows() != f.rows())
    detail::invalid("radical_necessary_check: shape mismatch");
  PolyMatrix hn(h.rows(), 1);
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    hn(i, 0) = h(i, 0).pow(n);

  RadicalReport rep;
  rep.n = n;
  rep.power_residual = sup_operator_norm(f * g - hn, grid);
  const double hn_scale = sup_operator_norm(hn, grid);
  if (rep.power_residual > power_tol * std::max(hn_scale, 1e-300))
    throw precondition_failed("radical_necessary_check: F G != H^n on the grid");
  rep.g_sup_norm = sup_operator_norm(g, grid);
  rep.c_implemented = rep.g_sup_norm * rep.g_sup_norm;
  rep.c_stated = std::pow(rep.g_sup_norm, 2.0 * static_cast<double>(f.rows()));

  bool first = true;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const cd z = grid.points()[p];
    const double trace = f.eval(z).squaredNorm();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      const double rhs = std::pow(std::abs(h(i, 0)(z)), 2.0 * n);
      const double margin = rep.c_implemented * trace - rhs;
      const double stated = rep.c_stated * trace - rhs;
      if (first || margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.min_margin_at = p;
        rep.min_margin_row = static_cast<int>(i);
      }
      if (first || stated < rep.min_margin_stated)
        rep.min_margin_stated = stated;
      first = false;
    }
  }
  rep.pass = rep.min_margin >= -kRadicalTolerance;
  return rep;
}

struct ConcatResult {
  PolyMatrix g1;
  PolyMatrix g2;
  SolutionBundle bundle;
  /// Largest coefficient modulus of (F1 G1 + F2 G2) - (F G).
  double split_difference = 0.0;
};

/// Solves F1 G1 + F2 G2 = H through the concatenation [F1 F2].
inline ConcatResult concat_solve(const PolyMatrix &f1, const PolyMatrix &f2,
                                 const PolyMatrix &h, const DiscGrid &grid,
                                 const AssemblyOptions &opts = {}) {
  if (f1.rows() != f2.rows())
    detail::invalid("concat_solve: F1 and F2 must have the same row count");
  ConcatResult out;
  const PolyMatrix f = PolyMatrix::hcat(f1, f2);
  out.bundle = solve_full(f, h, grid, opts);
  out.g1 = out.bundle.g.block(0, 0, f1.cols(), 1);
  out.g2 = out.bundle.g.block(f1.cols(), 0, f2.cols(), 1);
  const PolyMatrix split = f1 * out.g1 + f2 * out.g2;
  const PolyMatrix whole = f * out.bundle.g;
  for (Eigen::Index i = 0; i < split.rows(); ++i) {
    const auto diff = split(i, 0) - whole(i, 0);
    for (const auto &c : diff.coeffs())
      out.split_difference = std::max(out.split_difference, std::abs(c));
  }
  return out;
}

} // namespace koszul
