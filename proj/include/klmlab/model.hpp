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

#include <array>
#include <string>
#include <vector>

#include "klmlab/linalg.hpp"

namespace klmlab::model {

inline constexpr int kLevels = 3;      // |0>, |1>, |r>
inline constexpr int kHilbertDim = 9;  // two atoms

/// All rates and detunings are dimensionless ratios to the Rydberg drive Rabi
/// frequency Omega, which is the unit of the whole simulation (omega_drive = 1).
/// Defaults are the reference working point: Delta = 70, delta = omega_mw = 0.02,
/// gamma = 0.05, u_rr at the antiblockade value, m = 1.
struct SystemParams {
  double omega_drive = 1.0;            // the unit; must stay 1
  double Delta = 70.0;                 // Rydberg drive detuning
  double delta = 0.02;                 // microwave detuning
  double omega_mw = 0.02;              // microwave Rabi frequency
  double gamma = 0.05;                 // Rydberg decay rate
  double u_rr = 2.0 * 70.0 - 2.0 / 70.0;  // Rydberg pair interaction
  double m = 1.0;                      // target-state weight, delta = m * omega_mw
};

/// Delta > 0, gamma >= 0, omega_drive == 1; throws ValidationError.
void validate(const SystemParams& p);

/// Interaction strength that re-enables the doubly excited transition:
/// 2*Delta - 2/Delta in units of Omega.
double antiblockade_urr(double Delta);

/// Copy of p with u_rr set to antiblockade_urr(p.Delta).
SystemParams with_antiblockade(SystemParams p);

enum class Level : int { Zero = 0, One = 1, Rydberg = 2 };

/// Two-atom product basis label. Composite index = 3 * atom1 + atom2
/// (atom-1-major), so |00>=0, |01>=1, |0r>=2, |10>=3, ..., |rr>=8.
struct BasisLabel {
  Level atom1;
  Level atom2;

  int index() const noexcept;
  std::string to_string() const;  // "00", "0r", "r1", ...

  static BasisLabel from_index(int index);
  static BasisLabel parse(const std::string& text);

  bool operator==(const BasisLabel&) const = default;
};

/// Unit ket of a product basis state in the 9-dim space.
Vector basis_ket(BasisLabel label);

/// Two-atom Hamiltonian in the rotated frame, with the single-atom Stark
/// shifts taken as exactly compensated (ancillary-level cancellation):
///   H = Omega (|r>_1<0| + |r>_2<1|) + omega (|1>_1<0| - |1>_2<0|) + h.c.
///       - Delta (|r>_1<r| + |r>_2<r|) + delta (|1>_1<1| - |0>_2<0|)
///       + U_rr |rr><rr| - (Omega^2/Delta) (|0>_1<0| + |1>_2<1|).
Matrix build_full_hamiltonian(const SystemParams& p);

/// Spontaneous-emission jump operators sqrt(gamma/2) |0(1)>_j <r|, j = 1, 2.
std::vector<Matrix> build_full_lindblads(const SystemParams& p);

/// Effective Hamiltonian after adiabatic elimination of single excitations:
///   H_eff = Omega_eff |rr><01| + omega (|00> - |11>)(<10| - <01|) + h.c.
///           + delta (|11><11| - |00><00|),  Omega_eff = 2 Omega^2 / Delta,
/// embedded in the same 9-dim space.
Matrix build_effective_hamiltonian(const SystemParams& p);

/// The twelve single-entry effective jump operators: decay of |rr> into the
/// four singly excited states and of those into the ground states.
std::vector<Matrix> build_effective_lindblads(const SystemParams& p);

/// Weighted bipartite target state (|00> + m |10> + |11>) / sqrt(2 + m^2).
Vector klm_state(double m);

/// The companion ground-manifold states E2', E3', E4' for weight m. They are
/// normalized for every m and form an orthonormal basis together with
/// klm_state(m) at m = 1; for m != 1 only E2' stays orthogonal to the target.
std::array<Vector, 3> complement_states(double m);

/// Diagonal mixture a|00><00| + b|11><11| + c|10><10| + d|01><01|.
/// Weights must be nonnegative and sum to 1 within 1e-12.
DensityMatrix initial_mixed_state(double a, double b, double c, double d);

}  // namespace klmlab::model
