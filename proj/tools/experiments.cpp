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


#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include "qsync/causal.hpp"
#include "qsync/channels.hpp"
#include "qsync/distill.hpp"
#include "qsync/estimation.hpp"
#include "qsync/numerics.hpp"
#include "qsync/ops.hpp"
#include "qsync/protocols.hpp"
#include "qsync/qec.hpp"
#include "qsync/rng.hpp"

namespace qsync::cli {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Kind { real, integer, text };

struct ParamDef {
  std::string name;
  Kind kind;
  Json fallback;
  // Returns an error message for a bad value, empty when fine.
  std::function<std::string(const Json&)> check;
};

std::string finite(const Json& v) { return std::isfinite(v.get<double>()) ? "" : "must be finite"; }
std::string positive(const Json& v) {
  const double x = v.get<double>();
  return x > 0.0 && std::isfinite(x) ? "" : "must be positive";
}
std::string non_negative(const Json& v) {
  const double x = v.get<double>();
  return x >= 0.0 && std::isfinite(x) ? "" : "must be >= 0";
}
std::string unit_interval(const Json& v) {
  const double x = v.get<double>();
  return x >= 0.0 && x <= 1.0 ? "" : "must lie in [0, 1]";
}
std::string above_half(const Json& v) {
  const double x = v.get<double>();
  return x > 0.5 && x <= 1.0 ? "" : "must lie in (0.5, 1]";
}
std::string angle(const Json& v) {
  const double x = v.get<double>();
  return x > -kPi && x <= kPi ? "" : "must lie in (-pi, pi]";
}
std::string at_least_one(const Json& v) { return v.get<std::int64_t>() >= 1 ? "" : "must be >= 1"; }
std::string any_seed(const Json& v) { return v.get<std::int64_t>() >= 0 ? "" : "must be >= 0"; }
auto one_of(std::vector<std::string> allowed) {
  return [allowed](const Json& v) -> std::string {
    const auto s = v.get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) != allowed.end()) return "";
    std::string msg = "must be one of";
    for (const auto& a : allowed) msg += " " + a;
    return msg;
  };
}
std::string superop_name(const Json& v) {
  const auto s = v.get<std::string>();
  if (s == "sorkin" || s == "bell") return "";
  if (s.rfind("product:", 0) == 0 && s.size() == 10) return "";
  if (s.rfind("stabilizer:", 0) == 0 && s.size() > 11) return "";
  return "must be sorkin, bell, product:AB or stabilizer:P1,P2,...";
}

ParamDef omega(double d = 1.0) { return {"omega", Kind::real, d, positive}; }
ParamDef offset(double d = 0.7) { return {"t", Kind::real, d, finite}; }
ParamDef lag(double d = 0.0) { return {"delta_lag", Kind::real, d, finite}; }
ParamDef eta() { return {"eta", Kind::real, 1.0, unit_interval}; }
ParamDef fidelity(double d, decltype(&unit_interval) check = unit_interval) {
  return {"fidelity", Kind::real, d, check};
}
ParamDef phase(double d) { return {"delta_phase", Kind::real, d, angle}; }
ParamDef pairs(std::int64_t d) { return {"pairs", Kind::integer, d, at_least_one}; }
ParamDef rounds(std::int64_t d) { return {"rounds", Kind::integer, d, at_least_one}; }
ParamDef seed() { return {"seed", Kind::integer, 7, any_seed}; }

using Runner = std::function<void(const Json&, ExperimentReport&)>;

struct Experiment {
  std::vector<ParamDef> params;
  Runner run;
  // Checks that involve more than one parameter; empty string when fine.
  std::function<std::string(const Json&)> cross_check = [](const Json&) { return std::string(); };
};

void add_check(ExperimentReport& r, std::string claim, double expected, double observed,
               double tolerance) {
  const bool pass = std::isfinite(observed) && std::abs(observed - expected) <= tolerance;
  r.derived_checks.push_back({std::move(claim), expected, observed, tolerance, pass});
}

unsigned workers() { return std::max(1U, std::thread::hardware_concurrency()); }

// Representative of t in [0, pi / omega] under t -> -t and t -> t + period.
double fold_offset(double t, double omega) {
  double theta = wrap_periodic(omega * t, 2.0 * kPi);
  if (theta > kPi) theta = 2.0 * kPi - theta;
  return theta / omega;
}

Json estimate_json(const protocols::OffsetEstimate& e) {
  return {{"t_hat", e.t_hat},
          {"mirror_t_hat", e.mirror_t_hat},
          {"std_error", e.std_error},
          {"n_used", e.n_used},
          {"log_likelihood", e.log_likelihood}};
}

// Estimate, recovery check and Fisher-bound check shared by the sampling experiments.
protocols::OffsetEstimate estimate_and_check(const std::vector<protocols::SampleRecord>& samples,
                                             const protocols::OffsetModel& model,
                                             double effective_t, double omega,
                                             ExperimentReport& r) {
  const auto est = protocols::estimate_offset(samples, omega, model);
  const double target = fold_offset(effective_t, omega);
  r.results["estimate"] = estimate_json(est);
  r.results["effective_offset"] = target;
  add_check(r, "offset_recovered_within_5_sigma", target, est.t_hat, 5.0 * est.std_error);
  const double info = protocols::fisher_information(model, target, omega);
  const double bound = 1.0 / std::sqrt(static_cast<double>(samples.size()) * info);
  r.results["cramer_rao_std"] = bound;
  add_check(r, "std_error_matches_fisher_bound", bound, est.std_error, 0.1 * bound);
  return est;
}

StateVector random_state(int qubits, RngStream& rng) {
  Vector v(Eigen::Index{1} << qubits);
  for (auto& a : v) a = Complex(rng.normal(), rng.normal());
  return StateVector::normalized(v);
}

DensityMatrix random_density(int qubits, RngStream& rng) {
  const auto dim = Eigen::Index{1} << qubits;
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  const Matrix m = g * g.adjoint();
  return DensityMatrix(Matrix(m / m.trace().real()));
}

void add_trace_table(const std::vector<distill::DistillationStep>& trace, ExperimentReport& r) {
  r.table.columns = {"round", "n", "F", "delta", "survival"};
  Json rows = Json::array();
  for (const auto& s : trace) {
    r.table.rows.push_back({static_cast<double>(s.round), s.n, s.result.fidelity_out,
                            s.result.delta_out, s.result.survival});
    rows.push_back({{"round", s.round},
                    {"n", s.n},
                    {"F", s.result.fidelity_out},
                    {"delta", s.result.delta_out},
                    {"survival", s.result.survival}});
  }
  r.results["trace"] = rows;
}

// ---------------------------------------------------------------------------

void run_qcs(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], eta_v = p["eta"], f = p["fidelity"];
  const protocols::ClockFrame frame{p["t"].get<double>(), p["delta_lag"].get<double>(), 0.0};
  const auto n = p["pairs"].get<std::size_t>();
  const auto samples = protocols::run_qcs(n, frame, w, eta_v, f, p["seed"].get<std::uint64_t>(), workers());
  estimate_and_check(samples, protocols::QcsModel{eta_v, f}, protocols::qcs_effective_time(frame), w, r);
  const double predicted = protocols::qcs_accuracy(static_cast<double>(n), w, f) / eta_v;
  r.results["predicted_accuracy"] = predicted;
  if (eta_v == 1.0 && f == 1.0) {
    // Unit contrast: the information is omega^2 at every offset.
    add_check(r, "std_error_matches_accuracy_formula", predicted,
              r.results["estimate"]["std_error"].get<double>(), 0.15 * predicted);
  }
}

void run_sct(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], eta_v = p["eta"];
  const protocols::ClockFrame frame{p["t"].get<double>(), 0.0, p["transit"].get<double>()};
  const auto samples = protocols::run_sct(p["pairs"].get<std::size_t>(), frame, w, eta_v,
                                          p["seed"].get<std::uint64_t>(), workers());
  const double te = protocols::sct_effective_time(frame);
  estimate_and_check(samples, protocols::SctModel{eta_v}, te, w, r);
  const double sct_info = protocols::fisher_information(protocols::SctModel{eta_v}, te, w);
  const double qcs_info = protocols::fisher_information(protocols::QcsModel{eta_v, 1.0}, te, w);
  r.results["fisher_information"] = sct_info;
  add_check(r, "fisher_equals_qcs_with_perfect_pairs", qcs_info, sct_info, 1e-12 * std::max(1.0, qcs_info));
}

void run_product(const Json& p, ExperimentReport& r) {
  const double w = p["omega"];
  const protocols::ClockFrame frame{p["t"].get<double>(), 0.0, 0.0};
  const auto samples = protocols::run_product_protocol(p["pairs"].get<std::size_t>(), frame, w,
                                                       p["seed"].get<std::uint64_t>(), workers());
  estimate_and_check(samples, protocols::ProductModel{}, frame.true_offset, w, r);
  const auto qcs_peak = protocols::most_sensitive_offset(protocols::QcsModel{1.0, 1.0}, w);
  const auto product_peak = protocols::most_sensitive_offset(protocols::ProductModel{}, w);
  const double ratio = qcs_peak.information / product_peak.information;
  r.results["fisher_ratio_qcs_over_product"] = ratio;
  r.results["product_peak_offset"] = product_peak.t;
  add_check(r, "product_needs_four_times_the_pairs", 4.0, ratio, 0.2);
}

void run_flawed_pair(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], t = p["t"], d = p["delta_lag"];
  const auto exact = protocols::x_measurement_joint(DensityMatrix(protocols::make_flawed_pair(d, w)), t, w);
  const auto formula = protocols::qcs_joint(t - d, w, 1.0, 1.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(exact.p[k] - formula.p[k]));
  r.results["joint_distribution"] = exact.p;
  add_check(r, "lagged_pair_statistics_shift_by_delta", 0.0, worst, 1e-12);

  const protocols::ClockFrame frame{t, d, 0.0};
  const auto samples = protocols::run_qcs(p["pairs"].get<std::size_t>(), frame, w, 1.0, 1.0,
                                          p["seed"].get<std::uint64_t>(), workers());
  estimate_and_check(samples, protocols::QcsModel{}, t - d, w, r);
}

void run_distill_analytic(const Json& p, ExperimentReport& r) {
  const distill::PairEnsemble e{p["pairs"].get<double>(), p["fidelity"].get<double>(),
                                p["delta_phase"].get<double>(), 0.0};
  const int k = p["rounds"];
  const auto trace = distill::iterate_distillation(e, k, distill::RoundMode::analytic);
  add_trace_table(trace, r);

  // Each analytic round against a circuit round on the same input.
  double f = e.fidelity, d = e.delta;
  double worst_f = 0.0, worst_s = 0.0;
  for (const auto& s : trace) {
    const auto circuit = distill::recurrence_round_circuit(
        distill::ensemble_state({1.0, f, d, 0.0}, 1.0), 0.0, 1.0);
    worst_f = std::max(worst_f, std::abs(circuit.fidelity_out - s.result.fidelity_out));
    worst_s = std::max(worst_s, std::abs(circuit.survival - s.result.survival));
    if (d != 0.0) d = s.result.delta_out; else f = s.result.fidelity_out;
  }
  add_check(r, "circuit_round_matches_fidelity", 0.0, worst_f, 1e-12);
  add_check(r, "circuit_round_matches_survival", 0.0, worst_s, 1e-12);

  if (p["mc"].get<std::int64_t>() != 0) {
    // Integer pair counts: couples agree with probability 2 x survival.
    RngStream rng(p["seed"].get<std::uint64_t>(), "distill/mc");
    auto count = static_cast<std::int64_t>(e.n);
    Json sampled = Json::array();
    for (const auto& s : trace) {
      const double keep = 2.0 * s.result.survival;
      std::int64_t kept = 0;
      for (std::int64_t c = 0; c < count / 2; ++c) kept += rng.bernoulli(keep) ? 1 : 0;
      count = kept;
      sampled.push_back(count);
    }
    r.results["sampled_counts"] = sampled;
  }
}

void run_distill_circuit(const Json& p, ExperimentReport& r) {
  const double w = p["omega"];
  const distill::PairEnsemble e{p["pairs"].get<double>(), p["fidelity"].get<double>(),
                                p["delta_phase"].get<double>(), p["delta_lag"].get<double>()};
  const int k = p["rounds"];
  const auto trace = distill::iterate_distillation(e, k, distill::RoundMode::circuit, w);
  add_trace_table(trace, r);

  DensityMatrix state = distill::ensemble_state(e, w);
  double f = e.fidelity;
  double worst_path = 0.0, worst_recursion = 0.0;
  for (const auto& s : trace) {
    const auto gates = distill::recurrence_round_circuit(state, e.bob_lag, w, distill::CircuitPath::gates);
    worst_path = std::max({worst_path, std::abs(gates.fidelity_out - s.result.fidelity_out),
                           std::abs(gates.survival - s.result.survival)});
    if (e.delta == 0.0) {
      const auto a = distill::recurrence_round_analytic(f);
      worst_recursion = std::max({worst_recursion, std::abs(a.fidelity_out - s.result.fidelity_out),
                                  std::abs(a.survival - s.result.survival)});
      f = a.fidelity_out;
    }
    state = *s.result.kept_state;
  }
  add_check(r, "gate_path_matches_projective_path", 0.0, worst_path, 1e-12);
  if (e.delta == 0.0) add_check(r, "lagged_rounds_follow_unlagged_recursion", 0.0, worst_recursion, 1e-12);
  r.results["final_fidelity_to_lagged_singlet"] = trace.back().result.fidelity_out;
}

void run_systematic_phase(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], d0 = p["delta_phase"], l = p["delta_lag"];
  const int k = p["rounds"];
  const auto trace = distill::iterate_distillation({1.0, 1.0, d0, l}, k, distill::RoundMode::analytic, w);
  add_trace_table(trace, r);
  double d = d0, worst_f = 0.0, worst_d = 0.0, worst_s = 0.0;
  for (const auto& s : trace) {
    const auto c = distill::recurrence_round_circuit(distill::ensemble_state({1.0, 1.0, d, l}, w), l, w);
    worst_f = std::max(worst_f, std::abs(c.fidelity_out - s.result.fidelity_out));
    worst_s = std::max(worst_s, std::abs(c.survival - s.result.survival));
    worst_d = std::max(worst_d, std::abs(c.delta_out - s.result.delta_out));
    d = s.result.delta_out;
  }
  add_check(r, "circuit_survival_matches", 0.0, worst_s, 1e-12);
  add_check(r, "circuit_fidelity_matches", 0.0, worst_f, 1e-12);
  // The phase is read back as sqrt of an infidelity, so rounding sets a ~1e-8 floor.
  add_check(r, "circuit_phase_matches", 0.0, worst_d, 1e-7);
  if (k >= 5 && std::abs(d0) < kPi / 2.0)
    add_check(r, "phase_below_1e-3_after_rounds", 0.0, trace.back().result.delta_out, 1e-3);
}

void run_hashing(const Json& p, ExperimentReport& r) {
  const double n = p["pairs"].get<double>(), f = p["fidelity"];
  const double y = distill::hashing_yield(n, f);
  r.results["yield"] = y;
  const double h = (f <= 0.0 || f >= 1.0) ? 0.0
                                          : -(f * std::log(f) + (1.0 - f) * std::log(1.0 - f)) / std::log(2.0);
  add_check(r, "yield_matches_binary_entropy", n * (1.0 - h), y, 1e-9 * std::max(1.0, n));
}

void run_teleport(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], d = p["delta_lag"];
  const auto trials = p["pairs"].get<std::size_t>();
  const auto s = p["seed"].get<std::uint64_t>();
  RngStream rng(s, "teleport/states");
  double worst_lagged = 0.0, worst_prediction = 0.0, min_unlagged = 1.0;
  std::map<std::string, int> sampled;
  const char* names[] = {"psi_minus", "psi_plus", "phi_minus", "phi_plus"};
  r.table.columns = {"trial", "outcome", "probability", "fidelity", "fidelity_without_lag"};
  for (std::size_t i = 0; i < trials; ++i) {
    const StateVector psi = random_state(1, rng);
    const double a2 = std::norm(psi[0]), b2 = std::norm(psi[1]);
    const double predicted = std::pow(std::cos(w * d / 2.0), 2) +
                             std::pow(a2 - b2, 2) * std::pow(std::sin(w * d / 2.0), 2);
    for (int o = 0; o < 4; ++o) {
      const auto br = protocols::teleport_branch(psi, d, w, static_cast<protocols::BellOutcome>(o));
      worst_lagged = std::max(worst_lagged, 1.0 - br.fidelity);
      worst_prediction = std::max(worst_prediction, std::abs(br.fidelity_without_lag - predicted));
      min_unlagged = std::min(min_unlagged, br.fidelity_without_lag);
      r.table.rows.push_back({static_cast<double>(i), static_cast<double>(o), br.probability,
                              br.fidelity, br.fidelity_without_lag});
    }
    const auto drawn = protocols::teleport_with_offset(psi, d, w, derive_seed(s, "teleport/outcome", i));
    ++sampled[names[static_cast<int>(drawn.outcome)]];
  }
  r.results["sampled_outcomes"] = sampled;
  r.results["min_fidelity_without_lag"] = min_unlagged;
  add_check(r, "lag_evolution_restores_state", 0.0, worst_lagged, 1e-12);
  add_check(r, "skipped_lag_fidelity_matches_prediction", 0.0, worst_prediction, 1e-12);
}

causal::CausalityReport check_superop(const DecoherenceSuperop& s, std::uint64_t seed_value,
                                      ExperimentReport& r) {
  causal::CausalityOptions options;
  options.seed = seed_value;
  const auto rep = causal::causality_check(s, options);
  r.results["a_to_b_causal"] = rep.a_to_b_causal;
  r.results["b_to_a_causal"] = rep.b_to_a_causal;
  r.results["a_to_b_deviation"] = rep.a_to_b_deviation;
  r.results["b_to_a_deviation"] = rep.b_to_a_deviation;
  r.results["max_deviation"] = rep.max_deviation;
  if (rep.witness) {
    const auto& wt = *rep.witness;
    const auto to_arrays = [](const Matrix& m) {
      Json re = Json::array(), im = Json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json rr = Json::array(), ii = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          rr.push_back(m(i, j).real());
          ii.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
      }
      return Json{{"real", re}, {"imag", im}};
    };
    r.results["witness"] = {{"input_label", wt.input_label},
                            {"unitary_label", wt.unitary_label},
                            {"direction", causal::to_string(wt.direction)},
                            {"deviation", wt.deviation},
                            {"input", to_arrays(wt.input.matrix())},
                            {"unitary", to_arrays(wt.unitary)}};
    const bool a_side = wt.direction == causal::Direction::a_to_b;
    const auto id = Matrix::Identity(wt.unitary.rows(), wt.unitary.cols());
    const auto replay = a_side ? causal::bob_marginal(wt.input, wt.unitary, s)
                               : causal::alice_marginal(wt.input, wt.unitary, s);
    const auto base = a_side ? causal::bob_marginal(wt.input, id, s) : causal::alice_marginal(wt.input, id, s);
    add_check(r, "witness_replays", wt.deviation, trace_distance(replay.matrix(), base.matrix()), 1e-12);
  }
  return rep;
}

void run_causal_check(const Json& p, ExperimentReport& r) {
  const auto name = p["superop"].get<std::string>();
  const auto s = p["seed"].get<std::uint64_t>();
  if (name == "sorkin") {
    const auto rep = check_superop(causal::sorkin_superop(), s, r);
    add_check(r, "sorkin_signals_with_deviation_half", 0.5, rep.a_to_b_deviation, 1e-12);
    return;
  }
  DecoherenceSuperop op = causal::bell_superop();
  if (name.rfind("product:", 0) == 0) {
    op = causal::product_observable_superop(causal::pauli_string(name.substr(8, 1)),
                                            causal::pauli_string(name.substr(9, 1)));
  } else if (name.rfind("stabilizer:", 0) == 0) {
    std::vector<std::string> gens;
    std::string rest = name.substr(11);
    for (std::size_t pos; (pos = rest.find(',')) != std::string::npos; rest.erase(0, pos + 1))
      gens.push_back(rest.substr(0, pos));
    gens.push_back(rest);
    op = causal::stabilizer_superop(gens);
  }
  // Bell, product-observable and stabilizer decoherence are all averages of
  // local operations, so neither side can signal.
  const auto rep = check_superop(op, s, r);
  add_check(r, "no_signaling_either_way", 0.0, rep.max_deviation, 1e-10);
}

void run_twirl(const Json& p, ExperimentReport& r) {
  RngStream rng(p["seed"].get<std::uint64_t>(), "twirl/states");
  const auto bell = causal::bell_superop();
  double worst = 0.0, worst_commutator = 0.0;
  for (std::int64_t i = 0; i < p["pairs"].get<std::int64_t>(); ++i) {
    const DensityMatrix rho = random_density(2, rng);
    const DensityMatrix t = causal::pauli_twirl(rho);
    worst = std::max(worst, t.distance(causal::apply_superop(rho, bell)));
    for (const Matrix& e : bell.projectors())
      worst_commutator = std::max(worst_commutator, (e * t.matrix() - t.matrix() * e).cwiseAbs().maxCoeff());
  }
  add_check(r, "twirl_equals_bell_decoherence", 0.0, worst, 1e-12);
  add_check(r, "twirl_output_commutes_with_bell_projectors", 0.0, worst_commutator, 1e-12);
  const DensityMatrix t01 = causal::pauli_twirl(DensityMatrix(StateVector::basis(2, 1)));
  const Matrix expected = 0.5 * (DensityMatrix(states::psi_plus()).matrix() +
                                 DensityMatrix(states::psi_minus()).matrix());
  add_check(r, "twirl_of_01", 0.0, (t01.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

void run_master_eq(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], g = p["gamma"], t_end = p["t_end"];
  const bool bitflip = p["channel"].get<std::string>() == "bitflip";
  const channels::BlochDynamics dyn{w, bitflip ? channels::NoiseKind::bitflip : channels::NoiseKind::dephasing, g};
  const channels::BlochVector b0{1.0, 0.0, 0.0};
  const int samples = p["samples"];
  const auto rk4 = channels::bloch_trajectory(b0, dyn, t_end, samples, channels::BlochMethod::integrator);
  const auto exact = channels::bloch_trajectory(b0, dyn, t_end, samples, channels::BlochMethod::analytic);
  r.table.columns = {"t", "x", "y", "z"};
  double worst = 0.0, worst_x = 0.0;
  for (std::size_t i = 0; i < rk4.size(); ++i) {
    const auto& s = rk4[i];
    r.table.rows.push_back({s.t, s.b.x, s.b.y, s.b.z});
    worst = std::max({worst, std::abs(s.b.x - exact[i].b.x), std::abs(s.b.y - exact[i].b.y),
                      std::abs(s.b.z - exact[i].b.z)});
    const double predicted_x = bitflip ? 1.0 : std::exp(-2.0 * g * s.t) * std::cos(w * s.t);
    worst_x = std::max(worst_x, std::abs(s.b.x - predicted_x));
  }
  r.results["final"] = {{"x", rk4.back().b.x}, {"y", rk4.back().b.y}, {"z", rk4.back().b.z}};
  add_check(r, "integrator_matches_closed_form", 0.0, worst, 1e-6);
  if (!bitflip) add_check(r, "dephasing_decays_x_as_exp_minus_2_gamma_t", 0.0, worst_x, 1e-6);
  if (bitflip && w == 0.0) add_check(r, "bitflip_preserves_x_polarization", 0.0, worst_x, 1e-8);
}

void run_repetition(const Json& p, ExperimentReport& r) {
  const double w = p["omega"], t = p["t"];
  const auto cat = qec::cat_encode_evolve(3, w, t);
  const DensityMatrix rho(cat.state());
  r.results["cat_phase"] = cat.phase;
  double worst_x = 0.0, worst_z = 0.0;
  int nontrivial_z = 0;
  Json rows = Json::array();
  const auto flipped = qec::CatState{3, cat.phase + kPi}.state();
  for (int q = 0; q < 3; ++q) {
    const auto cx = qec::repetition_correct(rho, qec::SingleError{Pauli::X, q});
    worst_x = std::max(worst_x, 1.0 - fidelity(cx.corrected, cat.state()));
    const auto cz = qec::repetition_correct(rho, qec::SingleError{Pauli::Z, q});
    worst_z = std::max(worst_z, 1.0 - fidelity(cz.corrected, flipped));
    if (cz.syndrome[0] != 1 || cz.syndrome[1] != 1) ++nontrivial_z;
    rows.push_back({{"qubit", q}, {"x_syndrome", cx.syndrome}, {"z_syndrome", cz.syndrome}});
  }
  r.results["syndromes"] = rows;
  add_check(r, "x_errors_corrected", 0.0, worst_x, 1e-12);
  add_check(r, "z_errors_invisible_to_syndrome", 0.0, nontrivial_z, 0.0);
  add_check(r, "z_errors_flip_logical_phase_by_pi", 0.0, worst_z, 1e-12);
}

void run_dfs(const Json& p, ExperimentReport& r) {
  const double d = p["delta_phase"];
  RngStream rng(p["seed"].get<std::uint64_t>(), "dfs/angles");
  const auto encoded = qec::dfs_encode({Complex(1.0 / std::sqrt(2.0)), std::polar(1.0 / std::sqrt(2.0), d)});
  const double annihilated = (qec::dfs_generator() * encoded.amplitudes()).cwiseAbs().maxCoeff();
  add_check(r, "code_state_is_zero_eigenvector", 0.0, annihilated, 1e-12);
  const auto reference = qec::dfs_decode(DensityMatrix(encoded)).logical;
  double worst_collective = 0.0, worst_single = 0.0;
  for (std::int64_t i = 0; i < p["pairs"].get<std::int64_t>(); ++i) {
    const double theta = 2.0 * kPi * rng.uniform();
    const auto after = qec::dfs_decode(channels::collective_z_rotation(DensityMatrix(encoded), theta, {0, 1}));
    worst_collective = std::max({worst_collective, after.logical.distance(reference), after.leakage});
    const auto single = qec::dfs_decode(evolve_free(DensityMatrix(encoded), {1.0, theta}, {0})).logical;
    const double shift = std::arg(single(1, 0)) - std::arg(reference(1, 0));
    worst_single = std::max(worst_single, std::abs(wrap_angle(shift - theta)));
  }
  add_check(r, "collective_rotation_leaves_logical_state", 0.0, worst_collective, 1e-12);
  add_check(r, "one_sided_rotation_shifts_logical_phase", 0.0, worst_single, 1e-12);
}

void run_phase_lock(const Json& p, ExperimentReport& r) {
  const double d = p["delta_phase"];
  const auto n = p["pairs"].get<std::size_t>();
  const auto s = p["seed"].get<std::uint64_t>();
  const qec::PhaseNoise noise{qec::parse_collective_noise(p["noise"]), p["sigma"].get<double>()};
  const auto to_json = [](const qec::PhaseLockResult& x) {
    return Json{{"delta_true", x.delta_true}, {"delta_hat", x.delta_hat}, {"n", x.n},
                {"noise_model", x.noise_model}, {"seed", x.seed}, {"visibility", x.visibility},
                {"flatness_chi2", x.flatness_chi2}};
  };
  const auto enc = qec::phase_lock_run(d, n, noise, s, true);
  const auto bare = qec::phase_lock_run(d, n, noise, s, false);
  r.results["encoded"] = to_json(enc);
  r.results["bare"] = to_json(bare);
  const double tol = 3.0 / std::sqrt(static_cast<double>(n));
  add_check(r, "encoded_carriers_lock_phase", 0.0, wrap_angle(enc.delta_hat - d), tol);
  switch (noise.kind) {
    case qec::CollectiveNoise::none:
      add_check(r, "bare_carriers_lock_phase_without_noise", 0.0, wrap_angle(bare.delta_hat - d), tol);
      break;
    case qec::CollectiveNoise::uniform:
      add_check(r, "bare_carriers_carry_no_phase", 0.0, bare.flatness_chi2, qec::kFlatnessThreshold);
      break;
    case qec::CollectiveNoise::gaussian:
      add_check(r, "bare_visibility_shrinks_as_gaussian", std::exp(-0.5 * noise.sigma * noise.sigma),
                bare.visibility, 5.0 / std::sqrt(static_cast<double>(n)));
      break;
  }
}

const std::map<std::string, Experiment>& registry() {
  static const std::map<std::string, Experiment> table = {
      {"qcs", {{omega(), offset(), lag(), eta(), fidelity(1.0, above_half), pairs(40000), seed()}, run_qcs}},
      {"sct",
       {{omega(), offset(), eta(), {"transit", Kind::real, 0.0, finite}, pairs(40000), seed()}, run_sct,
        [](const Json& p) { return p["eta"].get<double>() > 0.0 ? "" : "eta: must be positive"; }}},
      {"product", {{omega(), offset(kPi / 2.0), pairs(40000), seed()}, run_product}},
      {"flawed-pair", {{omega(), offset(), lag(0.3), pairs(40000), seed()}, run_flawed_pair}},
      {"distill-analytic",
       {{fidelity(0.75), phase(0.0), rounds(3), pairs(1000), {"mc", Kind::integer, 0, any_seed}, seed()},
        run_distill_analytic,
        [](const Json& p) {
          return p["delta_phase"].get<double>() != 0.0 && p["fidelity"].get<double>() < 1.0
                     ? "delta_phase: analytic rounds need fidelity = 1 when a systematic phase is set"
                     : "";
        }}},
      {"distill-circuit",
       {{omega(), fidelity(0.8), phase(0.0), lag(0.3), rounds(3), pairs(1000)}, run_distill_circuit}},
      {"systematic-phase", {{omega(), phase(1.0), lag(0.0), rounds(5)}, run_systematic_phase}},
      {"hashing", {{fidelity(0.9), pairs(1000)}, run_hashing}},
      {"teleport-offset", {{omega(), lag(kPi / 2.0), pairs(50), seed()}, run_teleport}},
      {"causal-check", {{{"superop", Kind::text, "sorkin", superop_name}, seed()}, run_causal_check}},
      {"twirl", {{pairs(100), seed()}, run_twirl}},
      {"master-eq",
       {{{"omega", Kind::real, 0.0, non_negative}, {"gamma", Kind::real, 1.0, non_negative},
         {"channel", Kind::text, "dephasing", one_of({"bitflip", "dephasing"})},
         {"t_end", Kind::real, 5.0, positive}, {"samples", Kind::integer, 200, at_least_one}},
        run_master_eq}},
      {"repetition", {{omega(), offset(0.2)}, run_repetition}},
      {"dfs", {{phase(1.1), pairs(20), seed()}, run_dfs}},
      {"phase-lock",
       {{phase(1.1), pairs(10000), {"noise", Kind::text, "uniform", one_of({"none", "uniform", "gaussian"})},
         {"sigma", Kind::real, 1.0, non_negative}, seed()},
        run_phase_lock}},
  };
  return table;
}

const Experiment& find_experiment(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) {
    std::string msg = "unknown experiment '" + name + "'; valid:";
    for (const auto& n : experiment_names()) msg += " " + n;
    throw UsageError(msg);
  }
  return it->second;
}

}  // namespace

bool ExperimentReport::all_pass() const {
  return !derived_checks.empty() &&
         std::all_of(derived_checks.begin(), derived_checks.end(), [](const auto& c) { return c.pass; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, e] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Json default_parameters(const std::string& experiment) {
  Json out = Json::object();
  for (const auto& d : find_experiment(experiment).params) out[d.name] = d.fallback;
  return out;
}

Json resolve_parameters(const std::string& experiment, const Json& given) {
  const auto& e = find_experiment(experiment);
  if (!given.is_object()) throw UsageError("parameters must be a JSON object");
  for (const auto& [key, value] : given.items()) {
    const bool known = std::any_of(e.params.begin(), e.params.end(), [&](const auto& d) { return d.name == key; });
    if (!known) throw UsageError(key + ": not a parameter of " + experiment);
  }
  Json out = Json::object();
  for (const auto& d : e.params) {
    Json v = given.contains(d.name) ? given.at(d.name) : d.fallback;
    switch (d.kind) {
      case Kind::real:
        if (!v.is_number()) throw UsageError(d.name + ": expected a number");
        v = v.get<double>();
        break;
      case Kind::integer:
        if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()))
          v = static_cast<std::int64_t>(v.get<double>());
        if (!v.is_number_integer()) throw UsageError(d.name + ": expected an integer");
        break;
      case Kind::text:
        if (!v.is_string()) throw UsageError(d.name + ": expected a string");
        break;
    }
    if (const auto msg = d.check(v); !msg.empty()) throw UsageError(d.name + ": " + msg);
    out[d.name] = v;
  }
  if (const auto msg = e.cross_check(out); !msg.empty()) throw UsageError(msg);
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.format != "json" && config.format != "csv")
    throw UsageError("format: must be json or csv");
  const auto& e = find_experiment(config.experiment);
  ExperimentReport report;
  report.config = {{"experiment", config.experiment},
                   {"parameters", resolve_parameters(config.experiment, config.parameters)},
                   {"format", config.format}};
  const auto start = std::chrono::steady_clock::now();
  e.run(report.config["parameters"], report);
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qsync::cli
