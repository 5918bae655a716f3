#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "combinat.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace koszul {

/// K = 1 + 4 sqrt(e) + 8 sqrt(2) e + 72 e^(3/2), the constant bounding the
/// multiplier norm of the scalar solutions v (with alpha(t) = t^(1/2)).
inline double K_constant() {
  constexpr double e = std::numbers::e;
  return 1.0 + 4.0 * std::sqrt(e) + 8.0 * std::numbers::sqrt2 * e +
         72.0 * std::pow(e, 1.5);
}

/// m C(m-1, k-1) K.
inline double norm_bound(int m, int k) {
  if (m < 1 || k < 1 || k > m)
    detail::invalid("norm_bound: need 1 <= k <= m");
  return static_cast<double>(m) * static_cast<double>(binomial(m - 1, k - 1)) *
         K_constant();
}

/// Parameters of
///   alpha(t) = A0 (ln c/t)^(-3/2) (ln ln c/t)^(-3/2) (ln ln ln c/t)^(-1).
/// A0 is always derived from c through alpha(1) = 1.
class AlphaParams {
public:
  explicit AlphaParams(double c = 16.0) : c_(c) {
    if (!(c > std::exp(std::numbers::e)))
      detail::invalid("AlphaParams: c must exceed e^e");
    a0_ = 1.0 / shape(1.0);
  }
  double c() const { return c_; }
  double a0() const { return a0_; }

  // Unnormalized alpha; t in (0, 1].
  double shape(double t) const {
    const double l1 = std::log(c_ / t);
    const double l2 = std::log(l1);
    const double l3 = std::log(l2);
    return std::pow(l1, -1.5) * std::pow(l2, -1.5) / l3;
  }

private:
  double c_;
  double a0_;
};

inline double alpha(double t, const AlphaParams &params = AlphaParams()) {
  if (!(t >= 0.0 && t <= 1.0))
    detail::invalid("alpha: t must lie in [0, 1]");
  if (t == 0.0)
    return 0.0;
  return params.a0() * params.shape(t);
}

struct AlphaReport {
  std::vector<double> margins; // t alpha(t) - |h(z)| per grid point
  double min_margin = 0.0;
  std::size_t argmin = 0;
  bool pass = false;
};

/// Pointwise t alpha(t) >= |h(z)| with t = F(z) F(z)* for a single row F.
inline AlphaReport alpha_hypothesis_check(const PolyMatrix &f,
                                          const PolyMatrix &h,
                                          const DiscGrid &grid,
                                          const AlphaParams &params = AlphaParams()) {
  if (f.rows() != 1 || h.rows() != 1 || h.cols() != 1)
    detail::invalid("alpha_hypothesis_check: expects a 1 x d row and scalar h");
  if (grid.empty())
    detail::invalid("alpha_hypothesis_check: empty grid");
  AlphaReport out;
  out.margins.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cd z = grid.points()[i];
    const double t_raw = f.eval(z).squaredNorm();
    if (t_raw > 1.0 + 1e-9)
      throw precondition_failed(
          "alpha_hypothesis_check: F(z)F(z)* exceeds 1; F is not normalized");
    const double t = std::clamp(t_raw, 0.0, 1.0);
    out.margins[i] = t * alpha(t, params) - std::abs(h(0, 0)(z));
  }
  const auto it = std::min_element(out.margins.begin(), out.margins.end());
  out.min_margin = *it;
  out.argmin = static_cast<std::size_t>(it - out.margins.begin());
  out.pass = out.min_margin >= -1e-12;
  return out;
}

} // namespace koszul
