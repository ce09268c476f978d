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

#include "klmlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "klmlab/errors.hpp"

namespace klmlab::experiments {

namespace {

constexpr std::array<const char*, 6> kParamNames = {"Delta", "delta", "omega_mw",
                                                    "gamma",  "u_rr",  "m"};

void set_param(model::SystemParams& p, const std::string& name, double value) {
  if (name == "Delta") p.Delta = value;
  else if (name == "delta") p.delta = value;
  else if (name == "omega_mw") p.omega_mw = value;
  else if (name == "gamma") p.gamma = value;
  else if (name == "u_rr") p.u_rr = value;
  else if (name == "m") p.m = value;
  else throw ValidationError("sweep: '" + name + "' is not a SystemParams field");
}

// Ordered work distribution: results land at their point index regardless of
// which worker computes them.
void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  jobs = std::clamp(jobs, 1, std::max(1, n));
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string describe_point(const ParameterPoint& point) {
  if (point.values.empty()) return "(fixed parameters)";
  std::ostringstream os;
  for (size_t i = 0; i < point.values.size(); ++i) {
    if (i > 0) os << ", ";
    os << point.values[i].first << "=" << point.values[i].second;
  }
  return os.str();
}

std::string format_label(const char* name, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%g", name, value);
  return buf;
}

liouville::Liouvillian build_model(const model::SystemParams& p, ModelKind kind) {
  if (kind == ModelKind::Full) {
    return liouville::build_liouvillian(model::build_full_hamiltonian(p),
                                        model::build_full_lindblads(p));
  }
  return liouville::build_liouvillian(model::build_effective_hamiltonian(p),
                                      model::build_effective_lindblads(p));
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

std::string to_string(ModelKind kind) {
  return kind == ModelKind::Full ? "full" : "effective";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "full") return ModelKind::Full;
  if (text == "effective") return ModelKind::Effective;
  throw ValidationError("model must be 'full' or 'effective', got '" + text + "'");
}

InitialState InitialState::diagonal(double a, double b, double c, double d) {
  InitialState s;
  s.weights = {a, b, c, d};
  return s;
}

InitialState InitialState::pure_state(model::BasisLabel label) {
  InitialState s;
  s.pure = label;
  return s;
}

InitialState InitialState::parse(const std::string& text) {
  if (text.rfind("diag:", 0) == 0) {
    std::array<double, 4> w{};
    std::istringstream is(text.substr(5));
    std::string item;
    size_t count = 0;
    while (std::getline(is, item, ',')) {
      if (count >= 4) throw ValidationError("init: expected four diagonal weights");
      try {
        w[count++] = std::stod(item);
      } catch (const std::exception&) {
        throw ValidationError("init: '" + item + "' is not a number");
      }
    }
    if (count != 4) throw ValidationError("init: expected four diagonal weights");
    return diagonal(w[0], w[1], w[2], w[3]);
  }
  if (text.rfind("pure:", 0) == 0) {
    return pure_state(model::BasisLabel::parse(text.substr(5)));
  }
  throw ValidationError("init: expected 'diag:a,b,c,d' or 'pure:LABEL', got '" + text + "'");
}

std::string InitialState::to_string() const {
  if (weights) {
    std::ostringstream os;
    os << "diag:" << format_double((*weights)[0]) << ',' << format_double((*weights)[1])
       << ',' << format_double((*weights)[2]) << ',' << format_double((*weights)[3]);
    return os.str();
  }
  return "pure:" + pure->to_string();
}

DensityMatrix InitialState::build() const {
  if (weights) {
    return model::initial_mixed_state((*weights)[0], (*weights)[1], (*weights)[2],
                                      (*weights)[3]);
  }
  if (pure) {
    return DensityMatrix::pure(model::basis_ket(*pure));
  }
  throw ValidationError("init: empty initial-state specification");
}

model::SystemParams convert_units(const PhysicalParams& p) {
  if (!(p.omega_mhz > 0.0)) {
    throw ValidationError("convert_units: omega_mhz must be positive");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double omega = p.bare_is_angular ? p.omega_mhz : two_pi * p.omega_mhz;
  const double delta_big = p.bare_is_angular ? p.delta_big_mhz : two_pi * p.delta_big_mhz;
  const double gamma = two_pi * p.gamma_mhz;  // always a "2 pi x" quantity

  model::SystemParams out;
  out.Delta = delta_big / omega;
  out.gamma = gamma / omega;
  out.u_rr = model::antiblockade_urr(out.Delta);
  return out;
}

PhysicalParams physical_set1(bool bare_is_angular) {
  return {14.0, 600.0, 0.03, bare_is_angular};
}

PhysicalParams physical_set2(bool bare_is_angular) {
  return {20.0, 900.0, 0.1, bare_is_angular};
}

void validate(const SweepSpec& spec) {
  for (const auto& [name, values] : spec.varied) {
    if (std::find(kParamNames.begin(), kParamNames.end(), name) == kParamNames.end()) {
      throw ValidationError("sweep: '" + name + "' is not a SystemParams field");
    }
    if (values.empty()) {
      throw ValidationError("sweep: value list for '" + name + "' is empty");
    }
  }
  if (spec.jobs < 1) throw ValidationError("sweep: jobs must be >= 1");
  if (spec.outputs.empty() && !spec.steady) {
    throw ValidationError("sweep: no outputs requested");
  }
}

std::vector<ParameterPoint> expand_points(const SweepSpec& spec) {
  validate(spec);
  auto varied_contains = [&](const char* name) {
    return std::any_of(spec.varied.begin(), spec.varied.end(),
                       [&](const auto& v) { return v.first == name; });
  };

  size_t total = 1;
  for (const auto& [_, values] : spec.varied) total *= values.size();

  std::vector<ParameterPoint> points;
  points.reserve(total);
  for (size_t flat = 0; flat < total; ++flat) {
    // row-major: first declared parameter varies slowest
    ParameterPoint point;
    point.params = spec.fixed;
    size_t remainder = flat;
    size_t block = total;
    for (const auto& [name, values] : spec.varied) {
      block /= values.size();
      const size_t idx = remainder / block;
      remainder %= block;
      set_param(point.params, name, values[idx]);
      point.values.emplace_back(name, values[idx]);
    }
    if (spec.urr_follows_antiblockade && !varied_contains("u_rr")) {
      point.params.u_rr = model::antiblockade_urr(point.params.Delta);
    }
    if (spec.omega_follows_delta && !varied_contains("omega_mw")) {
      if (point.params.m != 0.0) {
        point.params.omega_mw = point.params.delta / point.params.m;
      } else if (point.params.delta != 0.0) {
        throw ValidationError(
            "sweep: delta = m * omega is unsatisfiable at m = 0 with delta = " +
            std::to_string(point.params.delta));
      }
    }
    model::validate(point.params);
    points.push_back(std::move(point));
  }
  return points;
}

MeasureContext::MeasureContext(const model::SystemParams& p,
                               std::vector<std::string> outputs)
    : outputs_(std::move(outputs)),
      target_(model::klm_state(p.m)),
      complements_(model::complement_states(p.m)) {
  for (const std::string& name : outputs_) {
    if (name == "negativity" || name == "purity" || name == "fidelity") continue;
    if (name.rfind("pop_", 0) == 0) {
      const std::string key = name.substr(4);
      if (key == "E1" || key == "E2" || key == "E3" || key == "E4") continue;
      model::BasisLabel::parse(key);  // throws on unknown labels
      continue;
    }
    throw ValidationError("unknown measure name '" + name + "'");
  }
}

measures::MeasureRecord MeasureContext::evaluate(const DensityMatrix& rho,
                                                 double time) const {
  measures::MeasureRecord rec;
  rec.time = time;
  for (const std::string& name : outputs_) {
    if (name == "negativity") {
      rec.negativity = measures::negativity(rho, model::kLevels, model::kLevels);
    } else if (name == "purity") {
      rec.purity = measures::purity(rho);
    } else if (name == "fidelity") {
      rec.fidelity = measures::fidelity_to_pure(rho, target_);
    } else {
      const std::string key = name.substr(4);
      if (key == "E1") {
        rec.populations[key] = measures::population(rho, target_);
      } else if (key == "E2" || key == "E3" || key == "E4") {
        rec.populations[key] = measures::population(rho, complements_[key[1] - '2']);
      } else {
        rec.populations[key] =
            measures::population(rho, model::basis_ket(model::BasisLabel::parse(key)));
      }
    }
  }
  return rec;
}

std::vector<TimeSeries> run_time_series(const SweepSpec& spec) {
  const std::vector<ParameterPoint> points = expand_points(spec);
  const DensityMatrix rho0 = spec.initial_state.build();

  std::vector<TimeSeries> results(points.size());
  parallel_for(static_cast<int>(points.size()), spec.jobs, [&](int i) {
    const ParameterPoint& point = points[i];
    try {
      const MeasureContext context(point.params, spec.outputs);
      const liouville::Liouvillian liou = build_model(point.params, spec.model);
      const std::vector<DensityMatrix> states = liouville::propagate(liou, rho0, spec.grid);
      TimeSeries series{point, {}};
      series.records.reserve(states.size());
      for (size_t j = 0; j < states.size(); ++j) {
        series.records.push_back(
            context.evaluate(states[j], spec.grid.time(static_cast<int>(j))));
      }
      results[i] = std::move(series);
    } catch (const NumericalError& e) {
      throw NumericalError("at parameter point " + describe_point(point) + ": " + e.what());
    }
  });
  return results;
}

std::vector<SteadyCell> run_steady_sweep(const SweepSpec& spec) {
  const std::vector<ParameterPoint> points = expand_points(spec);
  std::vector<SteadyCell> cells(points.size());
  parallel_for(static_cast<int>(points.size()), spec.jobs, [&](int i) {
    const ParameterPoint& point = points[i];
    SteadyCell cell{point, std::nullopt, ""};
    try {
      const liouville::Liouvillian liou = build_model(point.params, spec.model);
      const DensityMatrix rho = liouville::steady_state(liou);
      cell.fidelity = measures::fidelity_to_pure(rho, model::klm_state(point.params.m));
    } catch (const NonUniqueSteadyStateError& e) {
      cell.error = e.what();
    } catch (const NumericalError& e) {
      cell.error = e.what();
    }
    cells[i] = std::move(cell);
  });
  return cells;
}

std::vector<GeneralKlmSeries> run_general_klm(const std::vector<double>& m_values,
                                              const model::SystemParams& params,
                                              const liouville::TimeGrid& grid,
                                              const InitialState& initial_state,
                                              ModelKind model, int jobs) {
  SweepSpec spec;
  spec.varied = {{"m", m_values}};
  spec.fixed = params;
  spec.model = model;
  spec.initial_state = initial_state;
  spec.grid = grid;
  spec.outputs = {"fidelity"};
  spec.omega_follows_delta = true;       // the stationarity condition defines the run
  spec.urr_follows_antiblockade = false; // respect the caller's interaction strength
  spec.jobs = jobs;

  std::vector<GeneralKlmSeries> out;
  out.reserve(m_values.size());
  for (const TimeSeries& series : run_time_series(spec)) {
    GeneralKlmSeries g;
    g.m = series.point.values.front().second;
    g.times.reserve(series.records.size());
    g.fidelity.reserve(series.records.size());
    for (const auto& rec : series.records) {
      g.times.push_back(rec.time);
      g.fidelity.push_back(*rec.fidelity);
    }
    out.push_back(std::move(g));
  }
  return out;
}

ModelComparison compare_full_effective(const model::SystemParams& params,
                                       const DensityMatrix& rho0,
                                       const liouville::TimeGrid& grid) {
  const Vector target = model::klm_state(params.m);
  const std::array<Vector, 3> complements = model::complement_states(params.m);

  ModelComparison cmp;
  cmp.times = grid.times();
  const std::vector<DensityMatrix> full =
      liouville::propagate(build_model(params, ModelKind::Full), rho0, grid);
  const std::vector<DensityMatrix> effective =
      liouville::propagate(build_model(params, ModelKind::Effective), rho0, grid);

  for (int s = 0; s < 4; ++s) {
    cmp.populations_full[s].reserve(grid.n_points);
    cmp.populations_effective[s].reserve(grid.n_points);
  }
  for (int j = 0; j < grid.n_points; ++j) {
    for (int s = 0; s < 4; ++s) {
      const Vector& state = (s == 0) ? target : complements[s - 1];
      const double pf = measures::population(full[j], state);
      const double pe = measures::population(effective[j], state);
      cmp.populations_full[s].push_back(pf);
      cmp.populations_effective[s].push_back(pe);
      cmp.max_deviation = std::max(cmp.max_deviation, std::abs(pf - pe));
    }
  }
  return cmp;
}

Table fig2_table(const model::SystemParams& params, const InitialState& init,
                 const liouville::TimeGrid& grid, ModelKind model, int jobs) {
  SweepSpec spec;
  spec.fixed = params;
  spec.model = model;
  spec.initial_state = init;
  spec.grid = grid;
  spec.outputs = {"negativity", "purity", "pop_E1", "pop_E2", "pop_E3", "pop_E4"};
  spec.omega_follows_delta = false;
  spec.urr_follows_antiblockade = false;
  spec.jobs = jobs;

  const std::vector<TimeSeries> series = run_time_series(spec);
  Table table;
  table.columns = {"omega_t", "negativity", "purity",
                   "pop_E1",  "pop_E2",     "pop_E3", "pop_E4"};
  table.rows.reserve(series.front().records.size());
  for (const auto& rec : series.front().records) {
    table.rows.push_back({rec.time, *rec.negativity, *rec.purity,
                          rec.populations.at("E1"), rec.populations.at("E2"),
                          rec.populations.at("E3"), rec.populations.at("E4")});
  }
  return table;
}

Table fig3a_table(const model::SystemParams& params,
                  const std::vector<double>& delta_values, const InitialState& init,
                  const liouville::TimeGrid& grid, ModelKind model, int jobs) {
  SweepSpec spec;
  spec.varied = {{"Delta", delta_values}};
  spec.fixed = params;
  spec.model = model;
  spec.initial_state = init;
  spec.grid = grid;
  spec.outputs = {"pop_E1"};
  spec.omega_follows_delta = false;
  spec.urr_follows_antiblockade = true;  // each Delta keeps the antiblockade condition
  spec.jobs = jobs;

  Table table;
  table.columns = {"omega_t", "pop_E1", "label"};
  for (const TimeSeries& series : run_time_series(spec)) {
    const std::string label = format_label("Delta", series.point.values.front().second);
    for (const auto& rec : series.records) {
      table.rows.push_back({rec.time, rec.populations.at("E1"), label});
    }
  }
  return table;
}

std::vector<double> fig3b_default_gammas() { return linspace(0.01, 0.5, 20); }
std::vector<double> fig3b_default_deltas() { return linspace(0.005, 0.2, 20); }

Table fig3b_table(const model::SystemParams& params,
                  const std::vector<double>& gamma_values,
                  const std::vector<double>& delta_values, ModelKind model, int jobs) {
  SweepSpec spec;
  spec.varied = {{"gamma", gamma_values}, {"delta", delta_values}};
  spec.fixed = params;
  spec.model = model;
  spec.steady = true;
  spec.outputs = {"fidelity"};
  spec.omega_follows_delta = true;  // stationarity condition at each grid point
  spec.urr_follows_antiblockade = false;
  spec.jobs = jobs;

  Table table;
  table.columns = {"gamma_over_omega", "delta_over_omega", "fidelity"};
  for (const SteadyCell& cell : run_steady_sweep(spec)) {
    const double fid =
        cell.fidelity ? *cell.fidelity : std::numeric_limits<double>::quiet_NaN();
    table.rows.push_back(
        {cell.point.values[0].second, cell.point.values[1].second, fid});
  }
  return table;
}

Table fig4_table(const PhysicalParams& set1, const PhysicalParams& set2, double delta,
                 const InitialState& init, const liouville::TimeGrid& grid,
                 ModelKind model, int jobs) {
  Table table;
  table.columns = {"omega_t", "fidelity", "label"};
  const std::array<std::pair<const char*, PhysicalParams>, 2> sets = {
      std::make_pair("set1", set1), std::make_pair("set2", set2)};
  for (const auto& [label, physical] : sets) {
    model::SystemParams params = convert_units(physical);
    params.delta = delta;

    SweepSpec spec;
    spec.fixed = params;
    spec.model = model;
    spec.initial_state = init;
    spec.grid = grid;
    spec.outputs = {"fidelity"};
    spec.omega_follows_delta = true;
    spec.urr_follows_antiblockade = false;
    spec.jobs = jobs;
    const std::vector<TimeSeries> series = run_time_series(spec);
    for (const auto& rec : series.front().records) {
      table.rows.push_back({rec.time, *rec.fidelity, std::string(label)});
    }
  }
  return table;
}

Table fig5_table(const model::SystemParams& params, const std::vector<double>& m_values,
                 const InitialState& init, const liouville::TimeGrid& grid,
                 ModelKind model, int jobs) {
  Table table;
  table.columns = {"omega_t", "fidelity", "label"};
  for (const GeneralKlmSeries& series :
       run_general_klm(m_values, params, grid, init, model, jobs)) {
    const std::string label = format_label("m", series.m);
    for (size_t j = 0; j < series.times.size(); ++j) {
      table.rows.push_back({series.times[j], series.fidelity[j], label});
    }
  }
  return table;
}

Table evolve_table(const model::SystemParams& params, const InitialState& init,
                   const liouville::TimeGrid& grid, ModelKind model, int jobs) {
  SweepSpec spec;
  spec.fixed = params;
  spec.model = model;
  spec.initial_state = init;
  spec.grid = grid;
  spec.outputs = {"negativity", "purity", "fidelity",
                  "pop_E1",     "pop_E2", "pop_E3",   "pop_E4"};
  spec.omega_follows_delta = false;
  spec.urr_follows_antiblockade = false;
  spec.jobs = jobs;

  Table table;
  table.columns = {"omega_t", "negativity", "purity", "fidelity",
                   "pop_E1",  "pop_E2",     "pop_E3", "pop_E4"};
  const std::vector<TimeSeries> series = run_time_series(spec);
  for (const auto& rec : series.front().records) {
    table.rows.push_back({rec.time, *rec.negativity, *rec.purity, *rec.fidelity,
                          rec.populations.at("E1"), rec.populations.at("E2"),
                          rec.populations.at("E3"), rec.populations.at("E4")});
  }
  return table;
}

Table sweep_table(const SweepSpec& spec) {
  Table table;
  for (const auto& [name, _] : spec.varied) table.columns.push_back(name);

  if (spec.steady) {
    table.columns.push_back("fidelity");
    for (const SteadyCell& cell : run_steady_sweep(spec)) {
      std::vector<Cell> row;
      for (const auto& [_, value] : cell.point.values) row.push_back(value);
      row.push_back(cell.fidelity ? *cell.fidelity
                                  : std::numeric_limits<double>::quiet_NaN());
      table.rows.push_back(std::move(row));
    }
    return table;
  }

  table.columns.push_back("omega_t");
  for (const std::string& name : spec.outputs) table.columns.push_back(name);
  for (const TimeSeries& series : run_time_series(spec)) {
    for (const auto& rec : series.records) {
      std::vector<Cell> row;
      for (const auto& [_, value] : series.point.values) row.push_back(value);
      row.push_back(rec.time);
      for (const std::string& name : spec.outputs) {
        if (name == "negativity") row.push_back(*rec.negativity);
        else if (name == "purity") row.push_back(*rec.purity);
        else if (name == "fidelity") row.push_back(*rec.fidelity);
        else row.push_back(rec.populations.at(name.substr(4)));
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace klmlab::experiments
