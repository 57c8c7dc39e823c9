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


#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiments.hpp"

namespace qsync::cli {

namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "experiment" && key != "parameters" && key != "output" && key != "format")
      throw UsageError(key + ": not a config field (experiment, parameters, output, format)");
  }
  ExperimentConfig c;
  try {
    if (j.contains("experiment")) c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("parameters")) c.parameters = j.at("parameters");
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

Json report_to_json(const ExperimentReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.derived_checks) {
    checks.push_back({{"claim", c.claim},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  Json j = {{"config", report.config},
            {"results", report.results},
            {"derived_checks", checks},
            {"all_pass", report.all_pass()},
            {"runtime_ms", report.runtime_ms}};
  if (!report.table.columns.empty())
    j["table"] = {{"columns", report.table.columns}, {"rows", report.table.rows}};
  return j;
}

std::string table_to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string default_output_path(const ExperimentConfig& config) {
  const char* dir = std::getenv("QSYNC_OUTPUT_DIR");
  const std::filesystem::path base = dir && *dir ? dir : ".";
  return (base / (config.experiment + "." + config.format)).string();
}

void emit_report(const ExperimentReport& report, const std::string& path, const std::string& format) {
  std::string body;
  if (format == "json") {
    body = report_to_json(report).dump(2) + "\n";
  } else if (format == "csv") {
    if (report.table.columns.empty()) throw UsageError("this experiment has no table to write as csv");
    body = table_to_csv(report.table);
  } else {
    throw UsageError("format: must be json or csv");
  }

  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << body;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move report into place at " + target.string() + ": " + ec.message());
  }
}

}  // namespace qsync::cli
