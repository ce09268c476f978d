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

#include "klmlab/liouville.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "klmlab/errors.hpp"

namespace klmlab::liouville {

namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr double kSteadyResidualLimit = 1e-8;
constexpr double kSteadyNegativeEigLimit = 1e-6;

}  // namespace

TimeGrid::TimeGrid(double t_max_, int n_points_) : t_max(t_max_), n_points(n_points_) {
  if (!(t_max > 0.0)) {
    throw ValidationError("TimeGrid: t_max must be positive, got " + std::to_string(t_max));
  }
  if (n_points < 2) {
    throw ValidationError("TimeGrid: need at least 2 points, got " +
                          std::to_string(n_points));
  }
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> ts(n_points);
  for (int j = 0; j < n_points; ++j) ts[j] = time(j);
  return ts;
}

Vector vectorize(const Matrix& rho) {
  // Eigen stores column-major, so the flat view is already column stacking.
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  if (static_cast<long>(dim) * dim != v.size()) {
    throw DimensionError("unvectorize: vector of size " + std::to_string(v.size()) +
                         " is not " + std::to_string(dim) + "^2");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Liouvillian build_liouvillian(const Matrix& hamiltonian,
                              const std::vector<Matrix>& lindblads) {
  const int dim = static_cast<int>(hamiltonian.rows());
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw DimensionError("build_liouvillian: Hamiltonian must be square");
  }
  if (!linalg::is_hermitian(hamiltonian)) {
    throw ValidationError("build_liouvillian: Hamiltonian is not Hermitian (defect " +
                          std::to_string(linalg::hermiticity_defect(hamiltonian)) + ")");
  }
  for (const Matrix& l : lindblads) {
    if (l.rows() != dim || l.cols() != dim) {
      throw DimensionError("build_liouvillian: jump operator shape " +
                           std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                           " does not match Hamiltonian dimension " + std::to_string(dim));
    }
  }

  const Matrix identity = Matrix::Identity(dim, dim);
  const Complex i_unit(0.0, 1.0);
  Matrix super = -i_unit * (linalg::tensor(identity, hamiltonian) -
                            linalg::tensor(hamiltonian.transpose(), identity));
  for (const Matrix& l : lindblads) {
    const Matrix ldl = l.adjoint() * l;
    super += linalg::tensor(l.conjugate(), l);
    super -= 0.5 * linalg::tensor(identity, ldl);
    super -= 0.5 * linalg::tensor(ldl.transpose(), identity);
  }
  return {std::move(super), dim};
}

std::vector<DensityMatrix> propagate(const Liouvillian& liouvillian,
                                     const DensityMatrix& rho0,
                                     const TimeGrid& grid) {
  const int dim = liouvillian.hilbert_dim;
  if (rho0.dim() != dim) {
    throw DimensionError("propagate: state dimension " + std::to_string(rho0.dim()) +
                         " does not match Liouvillian dimension " + std::to_string(dim));
  }

  const Matrix step = linalg::expm(liouvillian.matrix * grid.dt());
  Vector v = vectorize(rho0.matrix());

  std::vector<DensityMatrix> states;
  states.reserve(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    if (j > 0) v = step * v;
    Matrix rho = unvectorize(v, dim);
    const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (trace_err > kTraceDriftLimit) {
      throw NumericalError("propagate: trace drift " + std::to_string(trace_err) +
                           " at t = " + std::to_string(grid.time(j)));
    }
    try {
      states.emplace_back(std::move(rho));
    } catch (const NumericalError& e) {
      throw NumericalError("propagate: invalid state at t = " +
                           std::to_string(grid.time(j)) + ": " + e.what());
    }
  }
  return states;
}

DensityMatrix steady_state(const Liouvillian& liouvillian) {
  const int dim = liouvillian.hilbert_dim;
  const std::vector<Vector> kernel = linalg::null_space(liouvillian.matrix);
  if (kernel.size() != 1) {
    throw NonUniqueSteadyStateError(static_cast<int>(kernel.size()));
  }

  Matrix rho = unvectorize(kernel.front(), dim);

  // the null vector carries an arbitrary global phase; dividing by the raw
  // complex trace removes it for any phase, unlike hermitizing first
  const Complex trace = rho.trace();
  if (std::abs(trace) < 1e-12) {
    throw NumericalError("steady_state: null vector is traceless");
  }
  rho /= trace;
  rho = linalg::hermitize(rho);

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const RealVector& values = es.eigenvalues();
  if (values.minCoeff() < -kSteadyNegativeEigLimit) {
    throw NumericalError("steady_state: candidate has eigenvalue " +
                         std::to_string(values.minCoeff()));
  }
  RealVector clamped = values.cwiseMax(0.0);
  rho = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
  rho /= rho.trace().real();

  const double residual = (liouvillian.matrix * vectorize(rho)).norm();
  if (residual > kSteadyResidualLimit) {
    throw NumericalError("steady_state: residual |L vec(rho)| = " +
                         std::to_string(residual));
  }
  return DensityMatrix(std::move(rho));
}

double spectral_gap(const Liouvillian& liouvillian) {
  Eigen::ComplexEigenSolver<Matrix> es(liouvillian.matrix, false);
  const Vector& eigenvalues = es.eigenvalues();
  double max_abs_real = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    max_abs_real = std::max(max_abs_real, std::abs(eigenvalues(i).real()));
  }
  const double zero_tol = 1e-10 * std::max(1.0, max_abs_real);
  double gap = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double re = std::abs(eigenvalues(i).real());
    if (re > zero_tol && (gap == 0.0 || re < gap)) gap = re;
  }
  return gap;
}

}  // namespace klmlab::liouville
