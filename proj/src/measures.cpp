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

#include "klmlab/measures.hpp"

#include <cmath>
#include <limits>

#include "klmlab/errors.hpp"

namespace klmlab::measures {

double negativity(const DensityMatrix& rho, int dim_a, int dim_b) {
  if (static_cast<long>(dim_a) * dim_b != rho.dim()) {
    throw DimensionError("negativity: dims [" + std::to_string(dim_a) + "," +
                         std::to_string(dim_b) + "] do not factor dimension " +
                         std::to_string(rho.dim()));
  }
  const Matrix pt =
      linalg::partial_transpose(rho.matrix(), dim_a, dim_b, linalg::Subsystem::A);
  double value = (linalg::trace_norm(pt) - 1.0) / 2.0;
  if (value < 0.0 && value > -1e-10) value = 0.0;
  return value;
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double population(const DensityMatrix& rho, const Vector& psi) {
  if (psi.size() != rho.dim()) {
    throw DimensionError("population: ket dimension " + std::to_string(psi.size()) +
                         " does not match state dimension " + std::to_string(rho.dim()));
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw ValidationError("population: ket is not normalized");
  }
  return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& target) {
  if (rho.dim() != target.dim()) {
    throw DimensionError("fidelity: state dimensions differ");
  }
  const Matrix root = linalg::matrix_sqrt(target.matrix());
  const Matrix inner = linalg::hermitize(root * rho.matrix() * root);

  // Tr sqrt(inner) through the spectrum. Rank-deficient targets leave
  // round-off eigenvalues near eps * |inner| whose square roots would
  // otherwise dominate the error budget; they are floored to zero.
  const auto eig = linalg::eig_hermitian(inner);
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  const double floor = static_cast<double>(eig.values.size()) *
                       std::numeric_limits<double>::epsilon() * top;
  const double negative_limit = 1e-8 * std::max(1.0, top);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -negative_limit) {
      throw DomainError("fidelity: inner product matrix has eigenvalue " +
                        std::to_string(eig.values(i)));
    }
    if (eig.values(i) > floor) sum += std::sqrt(eig.values(i));
  }
  return sum;
}

double fidelity_to_pure(const DensityMatrix& rho, const Vector& psi) {
  const double overlap = population(rho, psi);
  return std::sqrt(std::max(overlap, 0.0));
}

}  // namespace klmlab::measures
