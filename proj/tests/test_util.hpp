#pragma once

#include <random>

#include "klmlab/linalg.hpp"

namespace testutil {

using klmlab::Complex;
using klmlab::Matrix;
using klmlab::Vector;

inline Matrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  return m;
}

inline Matrix random_hermitian(int n, std::mt19937& rng) {
  const Matrix a = random_matrix(n, n, rng);
  return (a + a.adjoint()) / 2.0;
}

// PSD with unit trace.
inline Matrix random_density(int n, std::mt19937& rng) {
  const Matrix a = random_matrix(n, n, rng);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline Vector random_ket(int n, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(dist(rng), dist(rng));
  v.normalize();
  return v;
}

inline Matrix random_unitary(int n, std::mt19937& rng) {
  const Matrix a = random_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace testutil
