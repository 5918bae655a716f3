#pragma once

#include <random>

#include "koszul/linalg.hpp"
#include "koszul/poly.hpp"

namespace koszul::testing {

inline std::mt19937_64 &rng() {
  static std::mt19937_64 gen(7);
  return gen;
}

inline cd random_cd() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng()), u(rng())};
}

inline CVector random_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = random_cd();
  return v;
}

inline CMatrix random_matrix(Eigen::Index r, Eigen::Index c) {
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = random_cd();
  return m;
}

inline ComplexPolynomial random_poly(int degree) {
  std::vector<cd> c(static_cast<std::size_t>(degree) + 1);
  for (auto &x : c)
    x = random_cd();
  return ComplexPolynomial(std::move(c));
}

inline PolyMatrix random_poly_matrix(Eigen::Index r, Eigen::Index c, int degree) {
  PolyMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = random_poly(degree);
  return m;
}

} // namespace koszul::testing
