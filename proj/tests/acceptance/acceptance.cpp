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


// Acceptance runner: one PASS/FAIL line per criterion. `--only ID` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "../oracle.hpp"
#include "qsync/causal.hpp"
#include "qsync/channels.hpp"
#include "qsync/distill.hpp"
#include "qsync/estimation.hpp"
#include "qsync/numerics.hpp"
#include "qsync/protocols.hpp"
#include "qsync/qec.hpp"

namespace {

using namespace qsync;
using oracle::kPi;

struct Line {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double sample_std(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  double ss = 0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(v.size() - 1));
}

std::vector<double> qcs_sweep(double fidelity, double t, std::size_t n, int reps, std::uint64_t base) {
  std::vector<double> t_hat;
  for (int r = 0; r < reps; ++r) {
    const auto s = protocols::run_qcs(n, {t, 0.0, 0.0}, 1.0, 1.0, fidelity, base + std::uint64_t(r));
    t_hat.push_back(protocols::estimate_offset(s, 1.0, protocols::QcsModel{1.0, fidelity}).t_hat);
  }
  return t_hat;
}

Line qcs_accuracy_line(double fidelity, std::uint64_t base) {
  const std::size_t n = 40000;
  const double target = 1.0 / ((2 * fidelity - 1) * std::sqrt(double(n)));
  const double sd = sample_std(qcs_sweep(fidelity, 0.7, n, 200, base));
  return {std::abs(sd / target - 1) <= 0.15,
          fmt("F=%g: std(t_hat) = %.5f vs %.5f (+/-15%%)", fidelity, sd, target)};
}

Line c1a() { return qcs_accuracy_line(1.0, 10000); }
Line c1b() { return qcs_accuracy_line(0.75, 20000); }

Line c1_runtime() {
  const auto start = std::chrono::steady_clock::now();
  qcs_accuracy_line(1.0, 10000);
  qcs_accuracy_line(0.75, 20000);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {s < 60.0, fmt("both QCS sweeps took %.2f s (< 60 s)", s)};
}

Line c2() {
  const auto q = protocols::most_sensitive_offset(protocols::QcsModel{}, 1.0);
  const auto p = protocols::most_sensitive_offset(protocols::ProductModel{}, 1.0);
  const double ratio = q.information / p.information;
  return {std::abs(ratio / 4 - 1) <= 0.05, fmt("Fisher ratio QCS/product = %.6f vs 4 (+/-5%%)", ratio)};
}

Line c3() {
  double worst = 0;
  for (const double f : {0.6, 0.75, 0.9}) {
    const auto a = distill::recurrence_round_analytic(f);
    const auto c = distill::recurrence_round_circuit(distill::ensemble_state({1.0, f, 0.0, 0.0}, 1.0), 0.0, 1.0);
    worst = std::max({worst, std::abs(a.survival - c.survival), std::abs(a.fidelity_out - c.fidelity_out)});
  }
  const auto spot = distill::recurrence_round_analytic(0.75);
  const double spot_err = std::max(std::abs(spot.survival - 0.3125), std::abs(spot.fidelity_out - 0.9));
  return {worst <= 1e-12 && spot_err <= 1e-12,
          fmt("circuit vs analytic max diff %.2e, spot (0.3125, 0.9) diff %.2e (<= 1e-12)", worst, spot_err)};
}

Line c4() {
  const double r1 = distill::accuracy_ratio_after_round(1.0), r75 = distill::accuracy_ratio_after_round(0.75);
  const bool analytic = std::abs(r1 - std::sqrt(2.0)) <= 1e-12 && std::abs(r75 - std::sqrt(1.25)) <= 1e-12;
  // Monte Carlo at the most sensitive offset, where the accuracy formula is exact.
  const std::size_t n = 4000;
  const auto round = distill::recurrence_round_analytic(0.75);
  const auto kept = static_cast<std::size_t>(std::lround(double(n) * round.survival));
  const double before = sample_std(qcs_sweep(0.75, kPi / 2, n, 2000, 30000));
  const double after = sample_std(qcs_sweep(round.fidelity_out, kPi / 2, kept, 2000, 40000));
  const double mc = after / before;
  return {analytic && std::abs(mc / r75 - 1) <= 0.10,
          fmt("ratio(1) = %.6f, ratio(0.75) = %.6f, Monte Carlo %.4f (+/-10%%)", r1, r75, mc)};
}

Line c5() {
  const double w = 1.0, lag = 0.3 / w;
  const oracle::Vec target = protocols::make_flawed_pair(lag, w).amplitudes();
  DensityMatrix state = distill::ensemble_state({1.0, 0.8, 0.0, lag}, w);
  double f = 0.8, worst = 0, final_f = 0;
  for (int round = 0; round < 3; ++round) {
    const auto r = distill::recurrence_round_circuit(state, lag, w);
    const double kept_f = (target.adjoint() * r.kept_state->matrix() * target)(0, 0).real();
    f = distill::recurrence_round_analytic(f).fidelity_out;
    worst = std::max(worst, std::abs(kept_f - f));
    final_f = kept_f;
    state = *r.kept_state;
  }
  return {worst <= 1e-12 && final_f > 0.996,
          fmt("lagged rounds track unlagged recursion to %.2e (<= 1e-12); F after 3 rounds %.6f (> 0.996)", worst,
              final_f)};
}

Line c6() {
  double worst = 0;
  for (const double d : {0.3, 0.92730, 1.5}) {
    const auto a = distill::systematic_phase_round(d);
    const auto c = distill::recurrence_round_circuit(distill::ensemble_state({1.0, 1.0, d, 0.0}, 1.0), 0.0, 1.0);
    worst = std::max({worst, std::abs(a.survival - c.survival), std::abs(a.delta_out - c.delta_out)});
  }
  const auto trace = distill::iterate_distillation({1.0, 1.0, 1.0, 0.0}, 5, distill::RoundMode::analytic);
  const double last = std::abs(trace.back().result.delta_out);
  return {worst <= 1e-12 && last < 1e-3,
          fmt("circuit vs analytic (survival, delta') max diff %.2e (<= 1e-12); |delta| after 5 rounds %.2e (< 1e-3)",
              worst, last)};
}

Line c7() {
  const double y = distill::hashing_yield(1000, 0.9);
  const double independent = 1000 * (1 - oracle::binary_entropy(0.9));
  return {std::abs(y - 531.0) <= 0.1 && std::abs(y - independent) <= 0.1,
          fmt("yield %.4f vs 531.0 (+/-0.1), independent entropy gives %.4f", y, independent)};
}

Line c8() {
  const double w = 1.0, lag = kPi / (2 * w);
  std::mt19937_64 rng(2026);
  double worst = 0, min_without = 1;
  for (int i = 0; i < 50; ++i) {
    const StateVector psi(oracle::random_state(1, rng));
    for (int o = 0; o < 4; ++o) {
      const auto r = protocols::teleport_branch(psi, lag, w, static_cast<protocols::BellOutcome>(o));
      worst = std::max(worst, std::abs(1 - r.fidelity));
      min_without = std::min(min_without, r.fidelity_without_lag);
    }
  }
  return {worst <= 1e-12 && min_without < 0.999,
          fmt("max |1 - F| with lag %.2e (<= 1e-12); min F without lag %.6f (< 0.999)", worst, min_without)};
}

Line c9() {
  const auto sorkin = causal::causality_check(causal::sorkin_superop());
  const bool sorkin_ok = !sorkin.a_to_b_causal && sorkin.witness && std::abs(sorkin.witness->deviation - 0.5) <= 1e-12;
  double causal_worst = causal::causality_check(causal::bell_superop()).max_deviation;
  RngStream rng(2026, "acceptance/observables", 0);
  std::uniform_real_distribution<double> eig(-1.0, 1.0);
  std::mt19937_64 eig_rng(2026);
  const auto observable = [&] {
    const Matrix u = causal::random_unitary(2, rng);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = eig(eig_rng);
    d(1, 1) = eig(eig_rng);
    return Matrix(u * d * u.adjoint());
  };
  for (int i = 0; i < 20; ++i) {
    const Matrix a = observable(), b = observable();
    causal_worst = std::max(causal_worst, causal::causality_check(causal::product_observable_superop(a, b)).max_deviation);
  }
  std::mt19937_64 states(77);
  const auto bell = causal::bell_superop();
  double twirl = 0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho(oracle::random_density(2, states));
    twirl = std::max(twirl, oracle::max_abs(causal::pauli_twirl(rho).matrix() - causal::apply_superop(rho, bell).matrix()));
  }
  return {sorkin_ok && causal_worst < 1e-10 && twirl <= 1e-12,
          fmt("Sorkin witness deviation %.15f (0.5 +/- 1e-12); Bell + 20 product observables max deviation %.2e (< "
              "1e-10); twirl vs Bell %.2e (<= 1e-12)",
              sorkin.witness ? sorkin.witness->deviation : -1.0, causal_worst, twirl)};
}

Line c10() {
  const double gamma = 1.0;
  const channels::BlochVector x{1.0, 0.0, 0.0};
  const auto flip = channels::bloch_trajectory(x, {0.0, channels::NoiseKind::bitflip, gamma}, 5 / gamma, 500,
                                               channels::BlochMethod::integrator);
  const auto deph = channels::bloch_trajectory(x, {0.0, channels::NoiseKind::dephasing, gamma}, 5 / gamma, 500,
                                               channels::BlochMethod::integrator);
  double flip_err = 0, deph_err = 0;
  for (const auto& s : flip) flip_err = std::max(flip_err, std::abs(s.b.x - 1.0));
  for (const auto& s : deph) deph_err = std::max(deph_err, std::abs(s.b.x - std::exp(-2 * gamma * s.t)));
  return {flip_err < 1e-8 && deph_err <= 1e-6,
          fmt("bit-flip x drift %.2e (< 1e-8); dephasing vs exp(-2 gamma t) %.2e (<= 1e-6)", flip_err, deph_err)};
}

Line c11() {
  const double w = 1.0, t = 0.2;
  const DensityMatrix in(qec::cat_encode_evolve(3, w, t).state());
  const auto cat = [](double phase) {
    return oracle::Vec((oracle::ket("000") + std::polar(1.0, phase) * oracle::ket("111")) / std::sqrt(2.0));
  };
  const auto fid = [](const DensityMatrix& r, const oracle::Vec& v) { return (v.adjoint() * r.matrix() * v)(0, 0).real(); };
  double x_worst = 0, z_worst = 0;
  bool trivial = true;
  for (int q = 0; q < 3; ++q) {
    x_worst = std::max(x_worst, 1 - fid(qec::repetition_correct(in, qec::SingleError{Pauli::X, q}).corrected, cat(3 * w * t)));
    const auto z = qec::repetition_correct(in, qec::SingleError{Pauli::Z, q});
    trivial = trivial && z.syndrome == std::array<int, 2>{+1, +1};
    z_worst = std::max(z_worst, 1 - fid(z.corrected, cat(3 * w * t + kPi)));
  }
  return {x_worst <= 1e-12 && trivial && z_worst <= 1e-12,
          fmt("X errors: 1 - F = %.2e (<= 1e-12); Z errors: trivial syndrome, 1 - F to pi-shifted cat %.2e", x_worst,
              z_worst)};
}

Line c12() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  double kernel = 0, rotation = 0;
  for (int i = 0; i < 20; ++i) {
    const oracle::Vec l = oracle::random_state(1, rng);
    const StateVector enc = qec::dfs_encode({l(0), l(1)});
    kernel = std::max(kernel, (qec::dfs_generator() * enc.amplitudes()).norm());
    const double theta = angle(rng);
    const auto rotated = channels::collective_z_rotation(enc, theta, {0, 1});
    rotation = std::max(rotation, 1 - std::norm(enc.amplitudes().dot(rotated.amplitudes())));
  }
  const qec::PhaseNoise noise{qec::CollectiveNoise::uniform, 0.0};
  const auto enc = qec::phase_lock_run(1.1, 10000, noise, 2026, true);
  const auto bare = qec::phase_lock_run(1.1, 10000, noise, 2026, false);
  return {kernel <= 1e-12 && rotation <= 1e-12 && std::abs(enc.delta_hat - 1.1) <= 3e-2 &&
              bare.flatness_chi2 < qec::kFlatnessThreshold,
          fmt("generator residual %.2e, rotation infidelity %.2e (<= 1e-12); encoded delta_hat %.5f (1.1 +/- 0.03)",
              kernel, rotation, enc.delta_hat) +
              fmt("; bare flatness chi2 %.3f (< %.3f)", bare.flatness_chi2, qec::kFlatnessThreshold)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
      {"1a", c1a}, {"1b", c1b}, {"1-runtime", c1_runtime}, {"2", c2},   {"3", c3},   {"4", c4}, {"5", c5},
      {"6", c6},   {"7", c7},   {"8", c8},                 {"9", c9},   {"10", c10}, {"11", c11}, {"12", c12}};
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else if (a == "--list") {
      for (const auto& [id, fn] : criteria) std::cout << id << '\n';
      return 0;
    } else {
      std::cerr << "usage: qsync_acceptance [--only ID | --list]\n";
      return 2;
    }
  }
  bool all = true, ran = false;
  for (const auto& [id, fn] : criteria) {
    if (!only.empty() && id != only) continue;
    ran = true;
    Line l;
    try {
      l = fn();
    } catch (const std::exception& e) {
      l = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (l.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << l.detail << std::endl;
    all = all && l.pass;
  }
  if (!ran) {
    std::cerr << "unknown criterion " << only << '\n';
    return 2;
  }
  return all ? 0 : 1;
}
