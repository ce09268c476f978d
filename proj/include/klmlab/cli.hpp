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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "klmlab/experiments.hpp"

namespace klmlab::cli {

enum class Command { Evolve, Steady, Sweep, Figure };
enum class FigureId { Fig2, Fig3a, Fig3b, Fig4, Fig5 };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
std::string to_string(FigureId f);
std::string to_string(OutputFormat f);

/// Fully resolved run description. Produced by parse_config, serialized
/// verbatim into the run manifest, and accepted back through --config.
struct RunConfig {
  Command command = Command::Evolve;
  std::optional<FigureId> figure_id;  // required iff command == Figure

  model::SystemParams params;
  bool omega_follows_delta = true;
  bool urr_follows_antiblockade = true;
  std::optional<experiments::PhysicalParams> physical;
  bool bare_is_angular = true;

  experiments::InitialState init = experiments::InitialState::diagonal(0.3, 0.15, 0.45, 0.1);
  liouville::TimeGrid grid{5000.0, 500};
  experiments::ModelKind model = experiments::ModelKind::Full;

  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
  int jobs = 1;

  // figure grids (fig3a / fig3b / fig5) and generic sweep description
  std::vector<double> delta_big_values;  // fig3a Delta list
  std::vector<double> gamma_values;      // fig3b rows
  std::vector<double> delta_values;      // fig3b columns
  std::vector<double> m_values;          // fig5 weights
  std::vector<std::pair<std::string, std::vector<double>>> varied;  // sweep
  bool sweep_steady = false;
  std::vector<std::string> outputs;  // sweep measure names
};

/// Help text was requested; the caller should print .text and exit 0.
struct HelpRequested {
  std::string text;
};

/// Parses command-line arguments (without argv[0]) plus an optional JSON
/// config file given by --config. Flags override file values; file values
/// override the built-in defaults (the fig2 parameter set). Unknown config
/// keys, out-of-range values and conflicting commands raise UsageError
/// naming the offender. A run manifest is accepted directly: when the
/// document has a top-level "config" object, that object is the config.
RunConfig parse_config(const std::vector<std::string>& args);

/// Applies one parsed JSON document onto cfg (used by parse_config and by
/// manifest round-trips).
void apply_json_config(RunConfig& cfg, const nlohmann::json& doc);

nlohmann::json config_to_json(const RunConfig& cfg);

/// Computes the table for cfg without touching the filesystem.
Table run_pipeline(const RunConfig& cfg);

/// Runs the pipeline, writes the output file and its run manifest
/// (<out>.manifest.json), and returns the exit status. On failure the
/// partial outputs are removed, a machine-readable JSON error record goes
/// to err, and the status is nonzero.
int execute(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err_stream);

/// Convenience overload writing to std::cout / std::cerr.
int execute(const RunConfig& cfg);

}  // namespace klmlab::cli
