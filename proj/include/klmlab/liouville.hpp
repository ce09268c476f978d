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

#include <vector>

#include "klmlab/linalg.hpp"

namespace klmlab::liouville {

/// Dense superoperator generating the Markovian master equation, acting on
/// column-stacked density matrices.
struct Liouvillian {
  Matrix matrix;    // d^2 x d^2
  int hilbert_dim;  // d
};

/// Uniform grid t_j = t_max * j / (n_points - 1), j = 0 .. n_points - 1,
/// in units of 1/Omega.
struct TimeGrid {
  TimeGrid(double t_max, int n_points);

  double dt() const noexcept { return t_max / (n_points - 1); }
  double time(int j) const noexcept {
    return t_max * static_cast<double>(j) / (n_points - 1);
  }
  std::vector<double> times() const;

  double t_max;
  int n_points;
};

/// Column-stacking vectorization: vec(rho)_{i + d*j} = rho_{ij}.
Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

/// Superoperator of drho/dt = -i[H, rho] + sum_k ( L_k rho L_k^dag
/// - 1/2 {L_k^dag L_k, rho} ) under column stacking:
///   L = -i (I (x) H - H^T (x) I)
///       + sum_k ( conj(L_k) (x) L_k - 1/2 I (x) L_k^dag L_k
///                 - 1/2 (L_k^dag L_k)^T (x) I ).
/// H must be Hermitian and all operators square of equal dimension.
Liouvillian build_liouvillian(const Matrix& hamiltonian,
                              const std::vector<Matrix>& lindblads);

/// States at every grid time, computed from one matrix exponential of
/// L * dt applied repeatedly. Trace drift beyond 1e-6 at any step raises
/// NumericalError naming the offending time.
std::vector<DensityMatrix> propagate(const Liouvillian& liouvillian,
                                     const DensityMatrix& rho0,
                                     const TimeGrid& grid);

/// Unique steady state from the null space of L: Hermitized, eigenvalue
/// clamped, trace normalized, residual-checked (|L vec(rho)| < 1e-8).
/// Throws NonUniqueSteadyStateError when the null space is not 1-dim and
/// NumericalError when the candidate has an eigenvalue below -1e-6.
DensityMatrix steady_state(const Liouvillian& liouvillian);

/// Smallest nonzero |Re(lambda)| over the spectrum of L; 0 when every
/// eigenvalue real part vanishes. Positive gap certifies a unique steady
/// state and sets the asymptotic convergence rate.
double spectral_gap(const Liouvillian& liouvillian);

}  // namespace klmlab::liouville
