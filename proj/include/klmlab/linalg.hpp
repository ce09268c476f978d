// Copyright 2026 The klmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace klmlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Relative tolerance below which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues of a nominally PSD matrix above -kPsdClampTol are clamped to 0;
/// anything more negative is rejected.
inline constexpr double kPsdClampTol = 1e-10;
/// Relative singular-value threshold for null-space membership.
inline constexpr double kNullSpaceTol = 1e-10;

/// max_{ij} |a_ij - conj(a_ji)|.
double hermiticity_defect(const Matrix& a);

/// Hermitian within tol relative to max(1, max|a_ij|).
bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

/// (a + a^dag) / 2, evaluated into a fresh matrix (safe to assign back).
Matrix hermitize(const Matrix& a);

/// Kronecker product. Composite index convention: (i_a, i_b) -> i_a * cols(b) + i_b.
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Subsystem { A, B };

/// Transpose the indices of one subsystem of a bipartite operator on
/// C^{dim_a} (x) C^{dim_b}. Involutive: applying twice returns the input exactly.
Matrix partial_transpose(const Matrix& rho, int dim_a, int dim_b,
                         Subsystem subsystem = Subsystem::A);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-kPsdClampTol, 0) are clamped to 0; more negative spectra are a domain error.
Matrix matrix_sqrt(const Matrix& a);

/// Matrix exponential (scaling and squaring with a Pade kernel).
Matrix expm(const Matrix& a);

/// Orthonormal basis of the right null space: all singular directions with
/// singular value < tol * sigma_max. A zero matrix yields the full space.
std::vector<Vector> null_space(const Matrix& a, double tol = kNullSpaceTol);

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns, matching values
};

/// Eigendecomposition of a Hermitian matrix; throws DomainError otherwise.
HermitianEig eig_hermitian(const Matrix& a);

}  // namespace linalg

/// Hermitian, unit-trace, positive-semidefinite operator. The constructor
/// enforces all three within fixed tolerances (trace and Hermiticity defect
/// within 1e-6, eigenvalues above -1e-6) and throws NumericalError otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho);

  /// |psi><psi| for a normalized ket (norm within 1e-10 of 1).
  static DensityMatrix pure(const Vector& psi);

  const Matrix& matrix() const noexcept { return rho_; }
  int dim() const noexcept { return static_cast<int>(rho_.rows()); }

 private:
  Matrix rho_;
};

}  // namespace klmlab
