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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klmlab/liouville.hpp"
#include "klmlab/measures.hpp"
#include "klmlab/model.hpp"
#include "klmlab/table.hpp"

namespace klmlab::experiments {

enum class ModelKind { Full, Effective };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

/// Initial state: either the four diagonal ground-state weights in the order
/// a -> |00>, b -> |11>, c -> |10>, d -> |01>, or a single product basis ket.
struct InitialState {
  std::optional<std::array<double, 4>> weights;
  std::optional<model::BasisLabel> pure;

  static InitialState diagonal(double a, double b, double c, double d);
  static InitialState pure_state(model::BasisLabel label);

  /// Parses "diag:a,b,c,d" or "pure:LABEL" (e.g. "pure:00", "pure:r1").
  static InitialState parse(const std::string& text);
  std::string to_string() const;

  DensityMatrix build() const;
};

/// Laboratory-frame rates. gamma_mhz is the printed coefficient of a
/// "2 pi x ... MHz" quantity and is always expanded by 2 pi before use.
/// bare_is_angular selects how plain-MHz entries (omega, Delta) are read:
/// true (default) treats them as already angular, so gamma/Omega =
/// 2 pi gamma_mhz / omega_mhz; false multiplies them by 2 pi as well.
struct PhysicalParams {
  double omega_mhz = 0.0;
  double delta_big_mhz = 0.0;
  double gamma_mhz = 0.0;
  bool bare_is_angular = true;
};

/// Dimensionless Delta/Omega and gamma/Omega from laboratory rates; u_rr is
/// set to the antiblockade value and the remaining fields keep their
/// defaults. Requires omega_mhz > 0.
model::SystemParams convert_units(const PhysicalParams& p);

/// Reference parameter sets: (omega, Delta, gamma) = (14, 600, 2pi x 0.03)
/// and (20, 900, 2pi x 0.1) MHz.
PhysicalParams physical_set1(bool bare_is_angular = true);
PhysicalParams physical_set2(bool bare_is_angular = true);

/// Declarative description of one computation over a parameter grid.
/// varied names must be SystemParams field names (Delta, delta, omega_mw,
/// gamma, u_rr, m); the cartesian product is traversed row-major in
/// declaration order (first entry varies slowest).
struct SweepSpec {
  std::vector<std::pair<std::string, std::vector<double>>> varied;
  model::SystemParams fixed;
  ModelKind model = ModelKind::Full;
  InitialState initial_state = InitialState::diagonal(0.3, 0.15, 0.45, 0.1);
  liouville::TimeGrid grid{5000.0, 500};
  bool steady = false;  // solve the steady state instead of propagating
  std::vector<std::string> outputs = {"negativity", "purity",
                                      "pop_E1", "pop_E2", "pop_E3", "pop_E4"};
  /// Recompute omega_mw = delta / m after point overrides, unless omega_mw
  /// itself is varied. Matches the stationarity condition delta = m omega.
  bool omega_follows_delta = true;
  /// Recompute u_rr = antiblockade_urr(Delta) after point overrides, unless
  /// u_rr itself is varied.
  bool urr_follows_antiblockade = true;
  int jobs = 1;
};

void validate(const SweepSpec& spec);

/// One resolved grid point: the varied values plus the full parameter set
/// after the follow rules.
struct ParameterPoint {
  std::vector<std::pair<std::string, double>> values;
  model::SystemParams params;
};

std::vector<ParameterPoint> expand_points(const SweepSpec& spec);

/// Requested measures ("negativity", "purity", "fidelity", "pop_E1".."pop_E4",
/// or "pop_<basis label>") evaluated against the targets of one parameter
/// set; fidelity and pop_E* track klm_state(p.m) / complement_states(p.m).
class MeasureContext {
 public:
  MeasureContext(const model::SystemParams& p, std::vector<std::string> outputs);
  measures::MeasureRecord evaluate(const DensityMatrix& rho, double time) const;

 private:
  std::vector<std::string> outputs_;
  Vector target_;
  std::array<Vector, 3> complements_;
};

struct TimeSeries {
  ParameterPoint point;
  std::vector<measures::MeasureRecord> records;
};

/// Propagates every grid point and evaluates the requested measures at each
/// grid time. Output order is deterministic: points in declaration order,
/// times ascending, independent of the jobs count.
std::vector<TimeSeries> run_time_series(const SweepSpec& spec);

/// A steady-state solve that failed (degenerate null space or a numerical
/// guarantee violation) is recorded as a cell with no fidelity and the error
/// message, never skipped.
struct SteadyCell {
  ParameterPoint point;
  std::optional<double> fidelity;
  std::string error;
};

std::vector<SteadyCell> run_steady_sweep(const SweepSpec& spec);

struct GeneralKlmSeries {
  double m = 1.0;
  std::vector<double> times;
  std::vector<double> fidelity;  // to klm_state(m)
};

/// Fidelity-to-target time series for each weight m, with omega_mw = delta/m
/// per point. m = 0 with delta != 0 is rejected (delta = m omega unsatisfiable).
std::vector<GeneralKlmSeries> run_general_klm(const std::vector<double>& m_values,
                                              const model::SystemParams& params,
                                              const liouville::TimeGrid& grid,
                                              const InitialState& initial_state,
                                              ModelKind model = ModelKind::Full,
                                              int jobs = 1);

struct ModelComparison {
  std::vector<double> times;
  std::array<std::vector<double>, 4> populations_full;       // E1..E4
  std::array<std::vector<double>, 4> populations_effective;  // E1..E4
  double max_deviation = 0.0;  // sup over states and times
};

/// Populations of the target-state basis under the full and effective master
/// equations on a shared grid, plus their maximum pairwise deviation.
ModelComparison compare_full_effective(const model::SystemParams& params,
                                       const DensityMatrix& rho0,
                                       const liouville::TimeGrid& grid);

// Figure pipelines. Each returns a table with a frozen column schema.

/// Columns: omega_t,negativity,purity,pop_E1,pop_E2,pop_E3,pop_E4.
Table fig2_table(const model::SystemParams& params, const InitialState& init,
                 const liouville::TimeGrid& grid,
                 ModelKind model = ModelKind::Full, int jobs = 1);

/// Columns: omega_t,pop_E1,label with label "Delta=<value>".
Table fig3a_table(const model::SystemParams& params,
                  const std::vector<double>& delta_values,
                  const InitialState& init, const liouville::TimeGrid& grid,
                  ModelKind model = ModelKind::Full, int jobs = 1);

inline const std::vector<double> kFig3aDeltas = {30.0, 50.0, 70.0, 100.0};

/// Columns: gamma_over_omega,delta_over_omega,fidelity (steady-state solves;
/// degenerate points emit nan). Grid is row-major, gamma outermost.
Table fig3b_table(const model::SystemParams& params,
                  const std::vector<double>& gamma_values,
                  const std::vector<double>& delta_values,
                  ModelKind model = ModelKind::Full, int jobs = 1);

std::vector<double> fig3b_default_gammas();  // 20 points in [0.01, 0.5]
std::vector<double> fig3b_default_deltas();  // 20 points in [0.005, 0.2]

/// Columns: omega_t,fidelity,label with labels "set1" and "set2".
Table fig4_table(const PhysicalParams& set1, const PhysicalParams& set2,
                 double delta, const InitialState& init,
                 const liouville::TimeGrid& grid,
                 ModelKind model = ModelKind::Full, int jobs = 1);

/// Columns: omega_t,fidelity,label with label "m=<value>".
Table fig5_table(const model::SystemParams& params,
                 const std::vector<double>& m_values, const InitialState& init,
                 const liouville::TimeGrid& grid,
                 ModelKind model = ModelKind::Full, int jobs = 1);

inline const std::vector<double> kFig5Weights = {0.5, 2.0, 3.0};

/// Columns: omega_t,negativity,purity,fidelity,pop_E1,pop_E2,pop_E3,pop_E4.
Table evolve_table(const model::SystemParams& params, const InitialState& init,
                   const liouville::TimeGrid& grid, ModelKind model, int jobs = 1);

/// Generic sweep table: varied columns, then omega_t (time mode only), then
/// the requested outputs (steady mode emits a single fidelity output).
Table sweep_table(const SweepSpec& spec);

}  // namespace klmlab::experiments
