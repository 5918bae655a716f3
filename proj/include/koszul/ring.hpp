#pragma once

// Scalar rings the wedge and block-determinant code is instantiated over:
// complex numbers (pointwise checks) and polynomials (the assembly of G).

#include <complex>

#include "linalg.hpp"
#include "poly.hpp"

namespace koszul {

template <class Scalar> struct ring;

template <> struct ring<cd> {
  using matrix = CMatrix;
  static matrix zero(Eigen::Index r, Eigen::Index c) {
    return CMatrix::Zero(r, c);
  }
  static matrix scaled_identity(const cd &s, Eigen::Index n) {
    return s * CMatrix::Identity(n, n);
  }
};

template <> struct ring<ComplexPolynomial> {
  using matrix = PolyMatrix;
  static matrix zero(Eigen::Index r, Eigen::Index c) {
    return PolyMatrix::zero(r, c);
  }
  static matrix scaled_identity(const ComplexPolynomial &s, Eigen::Index n) {
    return PolyMatrix::scaled_identity(s, n);
  }
};

template <class Scalar> using matrix_t = typename ring<Scalar>::matrix;

template <class Matrix> struct matrix_ring;
template <> struct matrix_ring<CMatrix> : ring<cd> {};
template <> struct matrix_ring<PolyMatrix> : ring<ComplexPolynomial> {};

} // namespace koszul
