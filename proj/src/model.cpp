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

#include "klmlab/model.hpp"

#include <cmath>

#include "klmlab/errors.hpp"

namespace klmlab::model {

namespace {

// 3x3 single-atom |a><b|.
Matrix site_op(Level a, Level b) {
  Matrix op = Matrix::Zero(kLevels, kLevels);
  op(static_cast<int>(a), static_cast<int>(b)) = 1.0;
  return op;
}

// |a><b| on atom 1, identity on atom 2.
Matrix op1(Level a, Level b) {
  return linalg::tensor(site_op(a, b), Matrix::Identity(kLevels, kLevels));
}

// |a><b| on atom 2, identity on atom 1.
Matrix op2(Level a, Level b) {
  return linalg::tensor(Matrix::Identity(kLevels, kLevels), site_op(a, b));
}

// |row><col| in the 9-dim two-atom space.
Matrix pair_op(BasisLabel row, BasisLabel col) {
  Matrix op = Matrix::Zero(kHilbertDim, kHilbertDim);
  op(row.index(), col.index()) = 1.0;
  return op;
}

Level level_from_char(char c) {
  switch (c) {
    case '0': return Level::Zero;
    case '1': return Level::One;
    case 'r': return Level::Rydberg;
    default:
      throw ValidationError(std::string("BasisLabel: unknown level '") + c +
                            "', expected 0, 1 or r");
  }
}

char level_to_char(Level l) {
  switch (l) {
    case Level::Zero: return '0';
    case Level::One: return '1';
    case Level::Rydberg: return 'r';
  }
  return '?';
}

}  // namespace

void validate(const SystemParams& p) {
  if (p.omega_drive != 1.0) {
    throw ValidationError("SystemParams: omega_drive is the unit and must be 1");
  }
  if (!(p.Delta > 0.0)) {
    throw ValidationError("SystemParams: Delta must be positive, got " +
                          std::to_string(p.Delta));
  }
  if (!(p.gamma >= 0.0)) {
    throw ValidationError("SystemParams: gamma must be nonnegative, got " +
                          std::to_string(p.gamma));
  }
}

double antiblockade_urr(double Delta) {
  if (Delta == 0.0) {
    throw ValidationError("antiblockade_urr: Delta must be nonzero");
  }
  return 2.0 * Delta - 2.0 / Delta;
}

SystemParams with_antiblockade(SystemParams p) {
  p.u_rr = antiblockade_urr(p.Delta);
  return p;
}

int BasisLabel::index() const noexcept {
  return kLevels * static_cast<int>(atom1) + static_cast<int>(atom2);
}

std::string BasisLabel::to_string() const {
  return {level_to_char(atom1), level_to_char(atom2)};
}

BasisLabel BasisLabel::from_index(int index) {
  if (index < 0 || index >= kHilbertDim) {
    throw ValidationError("BasisLabel: index " + std::to_string(index) +
                          " outside 0..8");
  }
  return {static_cast<Level>(index / kLevels), static_cast<Level>(index % kLevels)};
}

BasisLabel BasisLabel::parse(const std::string& text) {
  if (text.size() != 2) {
    throw ValidationError("BasisLabel: expected two characters from {0,1,r}, got '" +
                          text + "'");
  }
  return {level_from_char(text[0]), level_from_char(text[1])};
}

Vector basis_ket(BasisLabel label) {
  Vector ket = Vector::Zero(kHilbertDim);
  ket(label.index()) = 1.0;
  return ket;
}

Matrix build_full_hamiltonian(const SystemParams& p) {
  validate(p);
  const double omega = p.omega_drive;
  // drive and microwave couplings, then their conjugates
  Matrix coupling = omega * (op1(Level::Rydberg, Level::Zero) +
                             op2(Level::Rydberg, Level::One)) +
                    p.omega_mw * (op1(Level::One, Level::Zero) -
                                  op2(Level::One, Level::Zero));
  Matrix h = coupling + coupling.adjoint();
  h += -p.Delta * (op1(Level::Rydberg, Level::Rydberg) +
                   op2(Level::Rydberg, Level::Rydberg));
  h += p.delta * (op1(Level::One, Level::One) - op2(Level::Zero, Level::Zero));
  h += p.u_rr * pair_op({Level::Rydberg, Level::Rydberg},
                        {Level::Rydberg, Level::Rydberg});
  // single-atom Stark shifts (omega^2/Delta per driven level), taken as
  // exactly compensated by ancillary levels
  h += -(omega * omega / p.Delta) *
       (op1(Level::Zero, Level::Zero) + op2(Level::One, Level::One));
  return h;
}

std::vector<Matrix> build_full_lindblads(const SystemParams& p) {
  validate(p);
  const double rate = std::sqrt(p.gamma / 2.0);
  return {
      rate * op1(Level::Zero, Level::Rydberg),
      rate * op1(Level::One, Level::Rydberg),
      rate * op2(Level::Zero, Level::Rydberg),
      rate * op2(Level::One, Level::Rydberg),
  };
}

Matrix build_effective_hamiltonian(const SystemParams& p) {
  validate(p);
  const double omega_eff = 2.0 * p.omega_drive * p.omega_drive / p.Delta;
  const Vector k00 = basis_ket({Level::Zero, Level::Zero});
  const Vector k01 = basis_ket({Level::Zero, Level::One});
  const Vector k10 = basis_ket({Level::One, Level::Zero});
  const Vector k11 = basis_ket({Level::One, Level::One});
  const Vector krr = basis_ket({Level::Rydberg, Level::Rydberg});

  Matrix coupling = omega_eff * (krr * k01.adjoint()) +
                    p.omega_mw * ((k00 - k11) * (k10 - k01).adjoint());
  Matrix h = coupling + coupling.adjoint();
  h += p.delta * (k11 * k11.adjoint() - k00 * k00.adjoint());
  return h;
}

std::vector<Matrix> build_effective_lindblads(const SystemParams& p) {
  validate(p);
  const double rate = std::sqrt(p.gamma / 2.0);
  using L = Level;
  // (target, source) pairs: |rr> decays into the four singly excited states,
  // which decay into the ground states
  const std::pair<BasisLabel, BasisLabel> transitions[] = {
      {{L::Rydberg, L::Zero}, {L::Rydberg, L::Rydberg}},
      {{L::Rydberg, L::One}, {L::Rydberg, L::Rydberg}},
      {{L::Zero, L::Rydberg}, {L::Rydberg, L::Rydberg}},
      {{L::One, L::Rydberg}, {L::Rydberg, L::Rydberg}},
      {{L::Zero, L::Zero}, {L::Rydberg, L::Zero}},
      {{L::One, L::Zero}, {L::Rydberg, L::Zero}},
      {{L::Zero, L::One}, {L::Rydberg, L::One}},
      {{L::One, L::One}, {L::Rydberg, L::One}},
      {{L::Zero, L::Zero}, {L::Zero, L::Rydberg}},
      {{L::Zero, L::One}, {L::Zero, L::Rydberg}},
      {{L::One, L::Zero}, {L::One, L::Rydberg}},
      {{L::One, L::One}, {L::One, L::Rydberg}},
  };
  std::vector<Matrix> ops;
  ops.reserve(12);
  for (const auto& [target, source] : transitions) {
    ops.push_back(rate * pair_op(target, source));
  }
  return ops;
}

Vector klm_state(double m) {
  const double norm = std::sqrt(2.0 + m * m);
  Vector psi = Vector::Zero(kHilbertDim);
  psi(BasisLabel{Level::Zero, Level::Zero}.index()) = 1.0 / norm;
  psi(BasisLabel{Level::One, Level::Zero}.index()) = m / norm;
  psi(BasisLabel{Level::One, Level::One}.index()) = 1.0 / norm;
  return psi;
}

std::array<Vector, 3> complement_states(double m) {
  const int i00 = BasisLabel{Level::Zero, Level::Zero}.index();
  const int i01 = BasisLabel{Level::Zero, Level::One}.index();
  const int i10 = BasisLabel{Level::One, Level::Zero}.index();
  const int i11 = BasisLabel{Level::One, Level::One}.index();

  const double m2 = m * m;
  const double theta_plus = (std::sqrt(3.0 + 2.0 * m2) + 1.0) / 2.0;
  const double theta_minus = (std::sqrt(3.0 + 2.0 * m2) - 1.0) / 2.0;

  Vector e2 = Vector::Zero(kHilbertDim);
  const double n2 = std::sqrt((2.0 + m2) * (4.0 + m2));
  e2(i00) = m / n2;
  e2(i01) = -(2.0 + m2) / n2;
  e2(i10) = -2.0 / n2;
  e2(i11) = m / n2;

  Vector e3 = Vector::Zero(kHilbertDim);
  const double n34 = std::sqrt(4.0 + m2);
  e3(i00) = theta_plus / n34;
  e3(i01) = 1.0 / n34;
  e3(i10) = -1.0 / n34;
  e3(i11) = -theta_minus / n34;

  Vector e4 = Vector::Zero(kHilbertDim);
  e4(i00) = theta_minus / n34;
  e4(i01) = -1.0 / n34;
  e4(i10) = 1.0 / n34;
  e4(i11) = -theta_plus / n34;

  return {e2, e3, e4};
}

DensityMatrix initial_mixed_state(double a, double b, double c, double d) {
  const double weights[] = {a, b, c, d};
  for (double w : weights) {
    if (w < 0.0) {
      throw ValidationError("initial_mixed_state: negative weight " + std::to_string(w));
    }
  }
  const double sum = a + b + c + d;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("initial_mixed_state: weights sum to " + std::to_string(sum) +
                          ", expected 1");
  }
  Matrix rho = Matrix::Zero(kHilbertDim, kHilbertDim);
  rho(BasisLabel{Level::Zero, Level::Zero}.index(),
      BasisLabel{Level::Zero, Level::Zero}.index()) = a;
  rho(BasisLabel{Level::One, Level::One}.index(),
      BasisLabel{Level::One, Level::One}.index()) = b;
  rho(BasisLabel{Level::One, Level::Zero}.index(),
      BasisLabel{Level::One, Level::Zero}.index()) = c;
  rho(BasisLabel{Level::Zero, Level::One}.index(),
      BasisLabel{Level::Zero, Level::One}.index()) = d;
  return DensityMatrix(std::move(rho));
}

}  // namespace klmlab::model
