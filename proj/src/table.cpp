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

#include "klmlab/table.hpp"

#include <cmath>
#include <cstdio>

namespace klmlab {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      if (std::holds_alternative<double>(row[i])) {
        out << format_double(std::get<double>(row[i]));
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << '\n';
  }
}

nlohmann::json table_to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell)) {
        const double v = std::get<double>(cell);
        // JSON has no NaN; keep failure cells readable
        if (std::isnan(v)) {
          jrow.push_back(nullptr);
        } else {
          jrow.push_back(v);
        }
      } else {
        jrow.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jrow));
  }
  return nlohmann::json{{"columns", table.columns}, {"rows", rows}};
}

}  // namespace klmlab
