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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "klmlab/cli.hpp"
#include "klmlab/errors.hpp"

namespace {

void print_error_record(const char* kind, const std::string& message) {
  nlohmann::json record;
  record["error"] = kind;
  record["message"] = message;
  std::cerr << record.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const klmlab::cli::RunConfig config = klmlab::cli::parse_config(args);
    return klmlab::cli::execute(config);
  } catch (const klmlab::cli::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const klmlab::UsageError& e) {
    print_error_record("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error_record("run_failed", e.what());
    return 1;
  }
}
