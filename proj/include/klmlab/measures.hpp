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

#include <map>
#include <optional>
#include <string>

#include "klmlab/linalg.hpp"

namespace klmlab::measures {

/// One time point of diagnostics. negativity in [0, 1/2], purity in
/// [1/dim, 1], populations and fidelity in [0, 1].
struct MeasureRecord {
  double time = 0.0;  // in units of Omega t
  std::optional<double> negativity;
  std::optional<double> purity;
  std::map<std::string, double> populations;
  std::optional<double> fidelity;
};

/// Entanglement negativity (|rho^{T_A}|_1 - 1) / 2 of a bipartite state on
/// C^{dim_a} (x) C^{dim_b}; round-off negatives above -1e-10 clamp to 0.
double negativity(const DensityMatrix& rho, int dim_a, int dim_b);

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

/// <psi| rho |psi> for a normalized ket.
double population(const DensityMatrix& rho, const Vector& psi);

/// Uhlmann fidelity Tr sqrt( sqrt(target) rho sqrt(target) ).
double fidelity(const DensityMatrix& rho, const DensityMatrix& target);

/// Exact pure-target form sqrt(<psi| rho |psi>); equals
/// fidelity(rho, |psi><psi|).
double fidelity_to_pure(const DensityMatrix& rho, const Vector& psi);

}  // namespace klmlab::measures
