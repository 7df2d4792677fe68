#pragma once

#include <doctest.h>

#include "qerg/qcore.hpp"
#include "qerg/types.hpp"

namespace qerg::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix random_hermitian(int d, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return Matrix((a + a.adjoint()) / 2.0);
}

inline Matrix random_matrix(int d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return a;
}

inline Matrix random_density(int d, Rng& rng) {
  Matrix a = random_matrix(d, rng);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Matrix swap_gate() {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
  return s;
}

}  // namespace qerg::test
