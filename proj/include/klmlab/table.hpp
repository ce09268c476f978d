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

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace klmlab {

using Cell = std::variant<double, std::string>;

/// Column-ordered tabular result. Column order is part of the output schema
/// and never reordered.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double value);

/// Header row then one line per row; numeric cells at full double precision,
/// failure cells as "nan".
void write_csv(const Table& table, std::ostream& out);

nlohmann::json table_to_json(const Table& table);

}  // namespace klmlab
