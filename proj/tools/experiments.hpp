// Copyright 2026 The qsync Authors
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

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qsync::cli {

using Json = nlohmann::json;

/// Bad experiment name, parameter or format: exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string experiment;
  Json parameters = Json::object();  // missing keys take the experiment defaults
  std::string output;                // empty: $QSYNC_OUTPUT_DIR/<experiment>.<format>
  std::string format = "json";
};

struct DerivedCheck {
  std::string claim;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;  // absolute
  bool pass = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  Json config;  // experiment, parameters (defaults filled in), format
  Json results = Json::object();
  Table table;
  std::vector<DerivedCheck> derived_checks;
  double runtime_ms = 0.0;

  bool all_pass() const;
};

const std::vector<std::string>& experiment_names();

/// Parameters each experiment accepts, with defaults.
Json default_parameters(const std::string& experiment);

/// Fills defaults and validates every parameter before anything runs.
/// Throws UsageError naming the offending key.
Json resolve_parameters(const std::string& experiment, const Json& given);

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Reads {"experiment", "parameters", "output", "format"}.
ExperimentConfig config_from_json(const Json& j);

Json report_to_json(const ExperimentReport& report);
std::string table_to_csv(const Table& table);

/// Writes via a temporary file and rename. json: full report; csv: table only.
void emit_report(const ExperimentReport& report, const std::string& path, const std::string& format);

/// Default path for a config without an explicit output.
std::string default_output_path(const ExperimentConfig& config);

}  // namespace qsync::cli
