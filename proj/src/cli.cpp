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

#include "klmlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "klmlab/errors.hpp"
#include "klmlab/version.hpp"

namespace klmlab::cli {

namespace {

using nlohmann::json;

Command parse_command(const std::string& text) {
  if (text == "evolve") return Command::Evolve;
  if (text == "steady") return Command::Steady;
  if (text == "sweep") return Command::Sweep;
  if (text == "figure") return Command::Figure;
  throw UsageError("unknown command '" + text + "'");
}

FigureId parse_figure_id(const std::string& text) {
  if (text == "fig2") return FigureId::Fig2;
  if (text == "fig3a") return FigureId::Fig3a;
  if (text == "fig3b") return FigureId::Fig3b;
  if (text == "fig4") return FigureId::Fig4;
  if (text == "fig5") return FigureId::Fig5;
  throw UsageError("unknown figure id '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("format must be 'csv' or 'json', got '" + text + "'");
}

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw UsageError("config key '" + key + "': expected a number");
  }
  return value.get<double>();
}

int as_int(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw UsageError("config key '" + key + "': expected an integer");
  }
  return value.get<int>();
}

std::string as_string(const json& value, const std::string& key) {
  if (!value.is_string()) {
    throw UsageError("config key '" + key + "': expected a string");
  }
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& key) {
  if (!value.is_boolean()) {
    throw UsageError("config key '" + key + "': expected a boolean");
  }
  return value.get<bool>();
}

std::vector<double> as_number_list(const json& value, const std::string& key) {
  if (!value.is_array() || value.empty()) {
    throw UsageError("config key '" + key + "': expected a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const auto& item : value) out.push_back(as_number(item, key));
  return out;
}

void apply_figure_defaults(RunConfig& cfg) {
  switch (*cfg.figure_id) {
    case FigureId::Fig2:
      break;  // the built-in defaults are the fig2 parameter set
    case FigureId::Fig3a:
      cfg.delta_big_values = experiments::kFig3aDeltas;
      break;
    case FigureId::Fig3b:
      cfg.params.Delta = 50.0;
      cfg.gamma_values = experiments::fig3b_default_gammas();
      cfg.delta_values = experiments::fig3b_default_deltas();
      break;
    case FigureId::Fig4:
      cfg.grid = liouville::TimeGrid(3e4, 500);
      cfg.init = experiments::InitialState::parse("pure:00");
      break;
    case FigureId::Fig5: {
      cfg.grid = liouville::TimeGrid(5e4, 500);
      cfg.init = experiments::InitialState::parse("pure:00");
      cfg.m_values = experiments::kFig5Weights;
      const model::SystemParams set2 =
          experiments::convert_units(experiments::physical_set2(cfg.bare_is_angular));
      cfg.params.Delta = set2.Delta;
      cfg.params.gamma = set2.gamma;
      cfg.params.u_rr = set2.u_rr;
      break;
    }
  }
}

std::string default_output_path(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Evolve: return "evolve.csv";
    case Command::Steady: return cfg.format == OutputFormat::Csv ? "steady.csv" : "steady.json";
    case Command::Sweep: return "sweep.csv";
    case Command::Figure: return to_string(*cfg.figure_id) + ".csv";
  }
  return "out.csv";
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Evolve: return "evolve";
    case Command::Steady: return "steady";
    case Command::Sweep: return "sweep";
    case Command::Figure: return "figure";
  }
  return "?";
}

std::string to_string(FigureId f) {
  switch (f) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3a: return "fig3a";
    case FigureId::Fig3b: return "fig3b";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  return f == OutputFormat::Csv ? "csv" : "json";
}

void apply_json_config(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) {
    throw UsageError("config document must be a JSON object");
  }
  // physical first so that explicit Delta/gamma keys can override the converted values
  if (doc.contains("physical")) {
    const json& phys = doc.at("physical");
    if (!phys.is_object()) throw UsageError("config key 'physical': expected an object");
    experiments::PhysicalParams p;
    for (const auto& [key, value] : phys.items()) {
      if (key == "omega_mhz") p.omega_mhz = as_number(value, key);
      else if (key == "delta_big_mhz") p.delta_big_mhz = as_number(value, key);
      else if (key == "gamma_mhz") p.gamma_mhz = as_number(value, key);
      else if (key == "bare_is_angular") p.bare_is_angular = as_bool(value, key);
      else throw UsageError("unknown config key 'physical." + key + "'");
    }
    cfg.physical = p;
    const model::SystemParams converted = experiments::convert_units(p);
    cfg.params.Delta = converted.Delta;
    cfg.params.gamma = converted.gamma;
    cfg.params.u_rr = converted.u_rr;
    cfg.bare_is_angular = p.bare_is_angular;
  }

  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "physical") continue;  // handled above
      else if (key == "command") cfg.command = parse_command(as_string(value, key));
      else if (key == "figure") cfg.figure_id = parse_figure_id(as_string(value, key));
      else if (key == "Delta") cfg.params.Delta = as_number(value, key);
      else if (key == "delta") cfg.params.delta = as_number(value, key);
      else if (key == "omega_mw") cfg.params.omega_mw = as_number(value, key);
      else if (key == "gamma") cfg.params.gamma = as_number(value, key);
      else if (key == "m") cfg.params.m = as_number(value, key);
      else if (key == "u_rr") cfg.params.u_rr = as_number(value, key);
      else if (key == "omega_follows_delta") cfg.omega_follows_delta = as_bool(value, key);
      else if (key == "urr_follows_antiblockade") cfg.urr_follows_antiblockade = as_bool(value, key);
      else if (key == "bare_is_angular") cfg.bare_is_angular = as_bool(value, key);
      else if (key == "init") cfg.init = experiments::InitialState::parse(as_string(value, key));
      else if (key == "t_max") cfg.grid = liouville::TimeGrid(as_number(value, key), cfg.grid.n_points);
      else if (key == "points") cfg.grid = liouville::TimeGrid(cfg.grid.t_max, as_int(value, key));
      else if (key == "model") cfg.model = experiments::parse_model_kind(as_string(value, key));
      else if (key == "out") cfg.output_path = as_string(value, key);
      else if (key == "format") cfg.format = parse_format(as_string(value, key));
      else if (key == "jobs") cfg.jobs = as_int(value, key);
      else if (key == "Delta_values") cfg.delta_big_values = as_number_list(value, key);
      else if (key == "gamma_values") cfg.gamma_values = as_number_list(value, key);
      else if (key == "delta_values") cfg.delta_values = as_number_list(value, key);
      else if (key == "m_values") cfg.m_values = as_number_list(value, key);
      else if (key == "mode") {
        const std::string mode = as_string(value, key);
        if (mode == "steady") cfg.sweep_steady = true;
        else if (mode == "time") cfg.sweep_steady = false;
        else throw UsageError("config key 'mode': expected 'time' or 'steady'");
      } else if (key == "outputs") {
        if (!value.is_array()) throw UsageError("config key 'outputs': expected an array");
        cfg.outputs.clear();
        for (const auto& item : value) cfg.outputs.push_back(as_string(item, key));
      } else if (key == "varied") {
        if (!value.is_array()) throw UsageError("config key 'varied': expected an array");
        cfg.varied.clear();
        for (const auto& item : value) {
          if (!item.is_object() || !item.contains("name") || !item.contains("values")) {
            throw UsageError("config key 'varied': entries need 'name' and 'values'");
          }
          cfg.varied.emplace_back(as_string(item.at("name"), "varied.name"),
                                  as_number_list(item.at("values"), "varied.values"));
        }
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    } catch (const ValidationError& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
}

json config_to_json(const RunConfig& cfg) {
  json doc;
  doc["command"] = to_string(cfg.command);
  if (cfg.figure_id) doc["figure"] = to_string(*cfg.figure_id);
  doc["Delta"] = cfg.params.Delta;
  doc["delta"] = cfg.params.delta;
  doc["omega_mw"] = cfg.params.omega_mw;
  doc["gamma"] = cfg.params.gamma;
  doc["m"] = cfg.params.m;
  doc["u_rr"] = cfg.params.u_rr;
  doc["omega_follows_delta"] = cfg.omega_follows_delta;
  doc["urr_follows_antiblockade"] = cfg.urr_follows_antiblockade;
  doc["bare_is_angular"] = cfg.bare_is_angular;
  if (cfg.physical) {
    doc["physical"] = {{"omega_mhz", cfg.physical->omega_mhz},
                       {"delta_big_mhz", cfg.physical->delta_big_mhz},
                       {"gamma_mhz", cfg.physical->gamma_mhz},
                       {"bare_is_angular", cfg.physical->bare_is_angular}};
  }
  doc["init"] = cfg.init.to_string();
  doc["t_max"] = cfg.grid.t_max;
  doc["points"] = cfg.grid.n_points;
  doc["model"] = experiments::to_string(cfg.model);
  doc["out"] = cfg.output_path;
  doc["format"] = to_string(cfg.format);
  doc["jobs"] = cfg.jobs;
  if (cfg.command == Command::Figure) {
    switch (*cfg.figure_id) {
      case FigureId::Fig3a: doc["Delta_values"] = cfg.delta_big_values; break;
      case FigureId::Fig3b:
        doc["gamma_values"] = cfg.gamma_values;
        doc["delta_values"] = cfg.delta_values;
        break;
      case FigureId::Fig5: doc["m_values"] = cfg.m_values; break;
      default: break;
    }
  }
  if (cfg.command == Command::Sweep) {
    json varied = json::array();
    for (const auto& [name, values] : cfg.varied) {
      varied.push_back({{"name", name}, {"values", values}});
    }
    doc["varied"] = varied;
    doc["mode"] = cfg.sweep_steady ? "steady" : "time";
    doc["outputs"] = cfg.outputs;
  }
  return doc;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"klmlab: two-atom Rydberg master-equation simulator for dissipative "
               "preparation of bipartite KLM states"};
  app.require_subcommand(0, 1);

  std::string config_path, model_str, init_str, out_path, format_str, figure_str;
  double Delta = 0, delta = 0, omega_mw = 0, gamma = 0, m = 0, urr = 0, t_max = 0;
  int points = 0, jobs = 1;

  auto* opt_config = app.add_option("--config", config_path, "JSON config file; flags override file values");
  auto* opt_Delta = app.add_option("--Delta", Delta, "Rydberg drive detuning Delta/Omega (default 70)");
  auto* opt_delta = app.add_option("--delta", delta, "microwave detuning delta/Omega (default 0.02)");
  auto* opt_omega = app.add_option("--omega-mw", omega_mw, "microwave Rabi frequency omega/Omega (default delta/m)");
  auto* opt_gamma = app.add_option("--gamma", gamma, "Rydberg decay rate gamma/Omega (default 0.05)");
  auto* opt_m = app.add_option("--m", m, "target-state weight m (default 1)");
  auto* opt_urr = app.add_option("--urr", urr, "interaction U_rr/Omega (default 2 Delta - 2/Delta)");
  auto* opt_tmax = app.add_option("--t-max", t_max, "time horizon in units of 1/Omega (default 5000)");
  auto* opt_points = app.add_option("--points", points, "number of grid points (default 500)")
                         ->check(CLI::Range(2, 1000000));
  auto* opt_model = app.add_option("--model", model_str, "master equation: full|effective (default full)")
                        ->check(CLI::IsMember({"full", "effective"}));
  auto* opt_init = app.add_option("--init", init_str,
                                  "initial state: diag:a,b,c,d (weights on |00>,|11>,|10>,|01>) "
                                  "or pure:LABEL (default diag:0.3,0.15,0.45,0.1)");
  auto* opt_out = app.add_option("--out", out_path, "output path (default <command>.csv)");
  auto* opt_format = app.add_option("--format", format_str, "output format: csv|json (default csv; steady: json)")
                         ->check(CLI::IsMember({"csv", "json"}));
  auto* opt_jobs = app.add_option("--jobs", jobs, "parallel workers for sweeps (default 1)")
                       ->envname("KLMLAB_JOBS")
                       ->check(CLI::Range(1, 4096));

  auto* cmd_evolve = app.add_subcommand("evolve", "propagate the master equation and tabulate measures");
  auto* cmd_steady = app.add_subcommand("steady", "solve the steady state and report its measures");
  auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep described by --config");
  auto* cmd_figure = app.add_subcommand("figure", "reproduce one of the reference figures");
  for (CLI::App* sub : {cmd_evolve, cmd_steady, cmd_sweep, cmd_figure}) {
    sub->fallthrough();
  }
  cmd_figure->add_option("id", figure_str, "fig2|fig3a|fig3b|fig4|fig5")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3a", "fig3b", "fig4", "fig5"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  // load the config file before looking at any flag so flags can override it
  json doc;
  if (opt_config->count() > 0) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file '" + config_path + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config file '" + config_path + "': " + e.what());
    }
    // a run manifest embeds the config under "config"
    if (doc.is_object() && doc.contains("config")) doc = doc.at("config");
  }

  // the command comes from the subcommand, the config file, or both (consistently)
  std::optional<Command> cli_command;
  if (app.got_subcommand(cmd_evolve)) cli_command = Command::Evolve;
  if (app.got_subcommand(cmd_steady)) cli_command = Command::Steady;
  if (app.got_subcommand(cmd_sweep)) cli_command = Command::Sweep;
  if (app.got_subcommand(cmd_figure)) cli_command = Command::Figure;

  std::optional<Command> file_command;
  std::optional<FigureId> file_figure;
  if (doc.is_object() && doc.contains("command")) {
    file_command = parse_command(as_string(doc.at("command"), "command"));
  }
  if (doc.is_object() && doc.contains("figure")) {
    file_figure = parse_figure_id(as_string(doc.at("figure"), "figure"));
  }

  RunConfig cfg;
  if (cli_command && file_command && *cli_command != *file_command) {
    throw UsageError("conflicting command: '" + to_string(*cli_command) +
                     "' on the command line vs '" + to_string(*file_command) +
                     "' in the config file");
  }
  if (!cli_command && !file_command) {
    throw UsageError("no command given; expected evolve, steady, sweep or figure");
  }
  cfg.command = cli_command ? *cli_command : *file_command;

  // fig5 defaults derive from a unit conversion, so the convention flag must
  // be known before the figure defaults are filled in
  if (doc.is_object() && doc.contains("bare_is_angular")) {
    cfg.bare_is_angular = as_bool(doc.at("bare_is_angular"), "bare_is_angular");
  }

  if (cfg.command == Command::Figure) {
    if (app.got_subcommand(cmd_figure)) {
      cfg.figure_id = parse_figure_id(figure_str);
      if (file_figure && *cfg.figure_id != *file_figure) {
        throw UsageError("conflicting figure id: '" + figure_str + "' vs '" +
                         to_string(*file_figure) + "' in the config file");
      }
    } else {
      cfg.figure_id = file_figure;
    }
    if (!cfg.figure_id) {
      throw UsageError("command 'figure' requires a figure id (fig2|fig3a|fig3b|fig4|fig5)");
    }
    apply_figure_defaults(cfg);
  }
  if (cfg.command == Command::Steady) cfg.format = OutputFormat::Json;

  if (!doc.is_null()) apply_json_config(cfg, doc);

  // explicit flags win over everything
  try {
    if (opt_Delta->count() > 0) cfg.params.Delta = Delta;
    if (opt_delta->count() > 0) cfg.params.delta = delta;
    if (opt_omega->count() > 0) {
      cfg.params.omega_mw = omega_mw;
      cfg.omega_follows_delta = false;
    }
    if (opt_gamma->count() > 0) cfg.params.gamma = gamma;
    if (opt_m->count() > 0) {
      cfg.params.m = m;
      if (cfg.command == Command::Figure && cfg.figure_id == FigureId::Fig5) {
        cfg.m_values = {m};
      }
    }
    if (opt_urr->count() > 0) {
      cfg.params.u_rr = urr;
      cfg.urr_follows_antiblockade = false;
    }
    if (opt_tmax->count() > 0) cfg.grid = liouville::TimeGrid(t_max, cfg.grid.n_points);
    if (opt_points->count() > 0) cfg.grid = liouville::TimeGrid(cfg.grid.t_max, points);
    if (opt_model->count() > 0) cfg.model = experiments::parse_model_kind(model_str);
    if (opt_init->count() > 0) cfg.init = experiments::InitialState::parse(init_str);
    if (opt_out->count() > 0) cfg.output_path = out_path;
    if (opt_format->count() > 0) cfg.format = parse_format(format_str);
    if (opt_jobs->count() > 0) cfg.jobs = jobs;
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }

  // resolve derived fields
  if (cfg.urr_follows_antiblockade) {
    cfg.params.u_rr = model::antiblockade_urr(cfg.params.Delta);
  }
  if (cfg.omega_follows_delta) {
    if (cfg.params.m != 0.0) {
      cfg.params.omega_mw = cfg.params.delta / cfg.params.m;
    } else if (cfg.params.delta != 0.0) {
      throw UsageError("delta = m * omega is unsatisfiable: m = 0 with delta = " +
                       format_double(cfg.params.delta));
    }
  }
  if (cfg.command == Command::Figure && cfg.figure_id == FigureId::Fig5) {
    for (double mv : cfg.m_values) {
      if (mv == 0.0 && cfg.params.delta != 0.0) {
        throw UsageError("fig5: m = 0 with delta = " + format_double(cfg.params.delta) +
                         " leaves delta = m * omega unsatisfiable");
      }
    }
  }
  if (cfg.command != Command::Figure && cfg.figure_id.has_value()) {
    throw UsageError("config key 'figure' is only valid with the figure command");
  }
  if (cfg.command == Command::Sweep && cfg.varied.empty()) {
    throw UsageError("sweep requires a 'varied' list in the config file");
  }
  if (cfg.outputs.empty()) {
    cfg.outputs = cfg.sweep_steady
                      ? std::vector<std::string>{"fidelity"}
                      : std::vector<std::string>{"negativity", "purity", "fidelity",
                                                 "pop_E1", "pop_E2", "pop_E3", "pop_E4"};
  }
  if (cfg.output_path.empty()) cfg.output_path = default_output_path(cfg);

  try {
    model::validate(cfg.params);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Table run_pipeline(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Evolve:
      return experiments::evolve_table(cfg.params, cfg.init, cfg.grid, cfg.model, cfg.jobs);
    case Command::Steady: {
      const liouville::Liouvillian liou =
          cfg.model == experiments::ModelKind::Full
              ? liouville::build_liouvillian(model::build_full_hamiltonian(cfg.params),
                                             model::build_full_lindblads(cfg.params))
              : liouville::build_liouvillian(model::build_effective_hamiltonian(cfg.params),
                                             model::build_effective_lindblads(cfg.params));
      const DensityMatrix rho = liouville::steady_state(liou);
      const experiments::MeasureContext context(
          cfg.params, {"negativity", "purity", "fidelity",
                       "pop_E1", "pop_E2", "pop_E3", "pop_E4"});
      const measures::MeasureRecord rec = context.evaluate(rho, 0.0);
      Table table;
      table.columns = {"fidelity", "negativity", "purity",
                       "pop_E1",   "pop_E2",     "pop_E3", "pop_E4"};
      table.rows.push_back({*rec.fidelity, *rec.negativity, *rec.purity,
                            rec.populations.at("E1"), rec.populations.at("E2"),
                            rec.populations.at("E3"), rec.populations.at("E4")});
      return table;
    }
    case Command::Sweep: {
      experiments::SweepSpec spec;
      spec.varied = cfg.varied;
      spec.fixed = cfg.params;
      spec.model = cfg.model;
      spec.initial_state = cfg.init;
      spec.grid = cfg.grid;
      spec.steady = cfg.sweep_steady;
      spec.outputs = cfg.outputs;
      spec.omega_follows_delta = cfg.omega_follows_delta;
      spec.urr_follows_antiblockade = cfg.urr_follows_antiblockade;
      spec.jobs = cfg.jobs;
      return experiments::sweep_table(spec);
    }
    case Command::Figure:
      switch (*cfg.figure_id) {
        case FigureId::Fig2:
          return experiments::fig2_table(cfg.params, cfg.init, cfg.grid, cfg.model, cfg.jobs);
        case FigureId::Fig3a:
          return experiments::fig3a_table(cfg.params, cfg.delta_big_values, cfg.init,
                                          cfg.grid, cfg.model, cfg.jobs);
        case FigureId::Fig3b:
          return experiments::fig3b_table(cfg.params, cfg.gamma_values, cfg.delta_values,
                                          cfg.model, cfg.jobs);
        case FigureId::Fig4:
          return experiments::fig4_table(experiments::physical_set1(cfg.bare_is_angular),
                                         experiments::physical_set2(cfg.bare_is_angular),
                                         cfg.params.delta, cfg.init, cfg.grid, cfg.model,
                                         cfg.jobs);
        case FigureId::Fig5:
          return experiments::fig5_table(cfg.params, cfg.m_values, cfg.init, cfg.grid,
                                         cfg.model, cfg.jobs);
      }
      throw UsageError("figure id missing");
  }
  throw UsageError("unknown command");
}

namespace {

// Physical duration of the run for a laboratory parameter set, under both
// readings of the bare-MHz convention.
json unit_readings(const RunConfig& cfg) {
  json readings = json::object();
  std::vector<std::pair<const char*, experiments::PhysicalParams>> sets;
  if (cfg.figure_id == FigureId::Fig4) {
    sets.emplace_back("set1", experiments::physical_set1(cfg.bare_is_angular));
  }
  sets.emplace_back("set2", experiments::physical_set2(cfg.bare_is_angular));
  for (const auto& [name, p] : sets) {
    const double t_ms_angular = cfg.grid.t_max / (p.omega_mhz * 1e3);
    readings[name] = {{"omega_mhz", p.omega_mhz},
                      {"omega_t_end", cfg.grid.t_max},
                      {"t_end_ms_bare_angular", t_ms_angular},
                      {"t_end_ms_bare_ordinary", t_ms_angular / (2.0 * std::acos(-1.0))}};
  }
  return readings;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw NumericalError("failed while writing '" + path + "'");
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err_stream) {
  const std::string manifest_path = cfg.output_path + ".manifest.json";
  std::vector<std::string> written;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Table table = run_pipeline(cfg);

    std::string payload;
    if (cfg.format == OutputFormat::Csv) {
      std::ostringstream os;
      write_csv(table, os);
      payload = os.str();
    } else if (cfg.command == Command::Steady) {
      // scalar result: a flat JSON object reads better than a one-row table
      json obj;
      for (size_t i = 0; i < table.columns.size(); ++i) {
        obj[table.columns[i]] = std::get<double>(table.rows.front()[i]);
      }
      payload = obj.dump(2) + "\n";
    } else {
      payload = table_to_json(table).dump(2) + "\n";
    }
    written.push_back(cfg.output_path);
    write_text_file(cfg.output_path, payload);

    const double wall = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    json manifest;
    manifest["config"] = config_to_json(cfg);
    manifest["tool_version"] = kVersion;
    manifest["wall_time_seconds"] = wall;
    manifest["output"] = cfg.output_path;
    manifest["columns"] = table.columns;
    manifest["rows"] = table.rows.size();
    if (cfg.command == Command::Figure &&
        (cfg.figure_id == FigureId::Fig4 || cfg.figure_id == FigureId::Fig5)) {
      manifest["unit_readings"] = unit_readings(cfg);
    }
    written.push_back(manifest_path);
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    out_stream << "wrote " << cfg.output_path << " (" << table.rows.size()
               << " rows) and " << manifest_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    for (const std::string& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    json record;
    record["error"] = "run_failed";
    record["message"] = e.what();
    err_stream << record.dump() << "\n";
    return 1;
  }
}

int execute(const RunConfig& cfg) { return execute(cfg, std::cout, std::cerr); }

}  // namespace klmlab::cli
