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


// qsync: run one named experiment and write its report.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace {

using qsync::cli::Json;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config_path;
  std::optional<double> omega, t, delta_lag, eta, fidelity, delta_phase, gamma, sigma, transit, t_end;
  std::optional<std::int64_t> pairs, rounds, seed, samples, mc;
  std::optional<std::string> superop, channel, noise, out, format;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_path, "JSON config; flags override it");
  app.add_option("--omega", f.omega, "precession frequency");
  app.add_option("--t", f.t, "clock offset (or evolution time)");
  app.add_option("--delta-lag", f.delta_lag, "Bob's lag");
  app.add_option("--eta", f.eta, "damping factor exp(-gamma T)");
  app.add_option("--fidelity", f.fidelity, "pair fidelity");
  app.add_option("--delta-phase", f.delta_phase, "systematic phase");
  app.add_option("--pairs", f.pairs, "pairs, carriers or trials");
  app.add_option("--rounds", f.rounds, "distillation rounds");
  app.add_option("--gamma", f.gamma, "damping rate");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--sigma", f.sigma, "gaussian noise width");
  app.add_option("--transit", f.transit, "transit proper time (sct)");
  app.add_option("--t-end", f.t_end, "trajectory length (master-eq)");
  app.add_option("--samples", f.samples, "trajectory points (master-eq)");
  app.add_option("--mc", f.mc, "also sample integer pair counts (distill-analytic)");
  app.add_option("--superop", f.superop, "sorkin, bell, product:AB or stabilizer:P1,P2");
  app.add_option("--channel", f.channel, "bitflip or dephasing");
  app.add_option("--noise", f.noise, "none, uniform or gaussian");
  app.add_option("--out", f.out, "output path");
  app.add_option("--format", f.format, "json or csv");
}

template <class T>
void put(Json& params, const char* key, const std::optional<T>& v) {
  if (v) params[key] = *v;
}

qsync::cli::ExperimentConfig build_config(const std::string& experiment, const Flags& f) {
  qsync::cli::ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw qsync::cli::UsageError("cannot read config " + f.config_path);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw qsync::cli::UsageError("config " + f.config_path + ": " + e.what());
    }
    c = qsync::cli::config_from_json(j);
    if (!c.experiment.empty() && c.experiment != experiment)
      throw qsync::cli::UsageError("config is for '" + c.experiment + "', not '" + experiment + "'");
  }
  c.experiment = experiment;
  Json& p = c.parameters;
  put(p, "omega", f.omega);
  put(p, "t", f.t);
  put(p, "delta_lag", f.delta_lag);
  put(p, "eta", f.eta);
  put(p, "fidelity", f.fidelity);
  put(p, "delta_phase", f.delta_phase);
  put(p, "pairs", f.pairs);
  put(p, "rounds", f.rounds);
  put(p, "gamma", f.gamma);
  put(p, "seed", f.seed);
  put(p, "sigma", f.sigma);
  put(p, "transit", f.transit);
  put(p, "t_end", f.t_end);
  put(p, "samples", f.samples);
  put(p, "mc", f.mc);
  put(p, "superop", f.superop);
  put(p, "channel", f.channel);
  put(p, "noise", f.noise);
  if (f.out) c.output = *f.out;
  if (f.format) c.format = *f.format;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsync: quantum clock synchronization experiments"};
  app.require_subcommand(1);
  Flags flags;
  std::string chosen;
  for (const auto& name : qsync::cli::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_flags(*sub, flags);
    sub->callback([&chosen, name] { chosen = name; });
  }
  if (argc > 1 && argv[1][0] != '-') {
    const auto& names = qsync::cli::experiment_names();
    if (std::find(names.begin(), names.end(), argv[1]) == names.end()) {
      std::cerr << "error: unknown experiment '" << argv[1] << "'; valid:";
      for (const auto& n : names) std::cerr << ' ' << n;
      std::cerr << '\n';
      return kExitUsage;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto config = build_config(chosen, flags);
    const auto report = qsync::cli::run_experiment(config);
    const auto path = config.output.empty() ? qsync::cli::default_output_path(config) : config.output;
    qsync::cli::emit_report(report, path, config.format);
    for (const auto& c : report.derived_checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.claim << ": observed " << c.observed << ", expected "
                << c.expected << " +/- " << c.tolerance << '\n';
    }
    std::cout << "wrote " << path << '\n';
    return report.all_pass() ? 0 : kExitFailedCheck;
  } catch (const qsync::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
