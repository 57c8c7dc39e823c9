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

#include "qsync/protocols.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "qsync/ops.hpp"
#include "qsync/rng.hpp"

namespace qsync::protocols {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(v));
  }
}

void check_alice(int alice) {
  if (alice != 1 && alice != -1) throw std::invalid_argument("outcome must be +1 or -1");
}

void check_sampler_args(std::size_t n, double omega) {
  if (n < 1) throw std::invalid_argument("need at least one pair");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be positive and finite");
  }
}

template <class DrawPair>
std::vector<SampleRecord> sample_blocks(std::size_t n, std::uint64_t seed, const char* stream,
                                        unsigned workers, DrawPair draw) {
  std::vector<SampleRecord> out(n);
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  detail::for_each_block(blocks, workers, [&](std::size_t block) {
    RngStream rng(seed, stream, block);
    const std::size_t begin = block * kSampleBlock;
    const std::size_t end = std::min(n, begin + kSampleBlock);
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = draw(rng);
      out[i].pair_index = i;
    }
  });
  return out;
}

}  // namespace

double qcs_outcome_prob(int alice, double t, double omega, double eta, double fidelity) {
  check_alice(alice);
  check_unit_interval(eta, "eta");
  check_unit_interval(fidelity, "fidelity");
  const double contrast = eta * (2.0 * fidelity - 1.0);
  return 0.5 * (1.0 - alice * contrast * std::cos(omega * t));
}

JointDistribution qcs_joint(double t, double omega, double eta, double fidelity) {
  JointDistribution j;
  for (int a : {+1, -1}) {
    const double pb = qcs_outcome_prob(a, t, omega, eta, fidelity);
    j.p[JointDistribution::cell(a, +1)] = 0.5 * pb;
    j.p[JointDistribution::cell(a, -1)] = 0.5 * (1.0 - pb);
  }
  return j;
}

JointDistribution x_measurement_joint(const DensityMatrix& pair, double bob_delay, double omega) {
  if (pair.num_qubits() != 2) throw std::invalid_argument("expected a two-qubit state");
  const DensityMatrix evolved = evolve_free(pair, {omega, bob_delay}, {1});
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix x = pauli_matrix(Pauli::X);
  JointDistribution j;
  for (int a : {+1, -1}) {
    for (int b : {+1, -1}) {
      const Matrix proj = embed_operator(0.5 * (id + a * x), {0}, 2) *
                          embed_operator(0.5 * (id + b * x), {1}, 2);
      j.p[JointDistribution::cell(a, b)] = (proj * evolved.matrix()).trace().real();
    }
  }
  return j;
}

StateVector make_flawed_pair(double delta_lag, double omega) {
  const Matrix back = free_evolution_unitary({omega, -delta_lag});
  return apply_unitary(states::psi_minus(), back, {1});
}

StateVector make_flawed_partner(double delta_lag, double omega) {
  const Matrix back = free_evolution_unitary({omega, -delta_lag});
  return apply_unitary(states::psi_plus(), back, {1});
}

double qcs_effective_time(const ClockFrame& frame) { return frame.true_offset - frame.bob_lag; }

double sct_effective_time(const ClockFrame& frame) {
  return frame.transit_proper_time + frame.true_offset;
}

std::vector<SampleRecord> run_qcs(std::size_t n, const ClockFrame& frame, double omega, double eta,
                                  double fidelity, std::uint64_t seed, unsigned workers) {
  check_sampler_args(n, omega);
  const double t = qcs_effective_time(frame);
  const double p_plus[2] = {qcs_outcome_prob(+1, t, omega, eta, fidelity),
                            qcs_outcome_prob(-1, t, omega, eta, fidelity)};
  return sample_blocks(n, seed, "qcs", workers, [&](RngStream& rng) {
    SampleRecord r;
    r.alice = rng.sign(0.5);
    r.bob = rng.sign(p_plus[r.alice > 0 ? 0 : 1]);
    return r;
  });
}

std::vector<SampleRecord> run_sct(std::size_t n, const ClockFrame& frame, double omega, double eta,
                                  std::uint64_t seed, unsigned workers) {
  check_sampler_args(n, omega);
  check_unit_interval(eta, "eta");
  const double c = eta * std::cos(omega * sct_effective_time(frame));
  return sample_blocks(n, seed, "sct", workers, [&](RngStream& rng) {
    SampleRecord r;
    r.alice = rng.sign(0.5);
    r.bob = rng.sign(0.5 * (1.0 + r.alice * c));
    return r;
  });
}

std::vector<SampleRecord> run_product_protocol(std::size_t n, const ClockFrame& frame,
                                               double omega, std::uint64_t seed,
                                               unsigned workers) {
  check_sampler_args(n, omega);
  const double period = 2.0 * std::numbers::pi / omega;
  const double offset = frame.true_offset;
  return sample_blocks(n, seed, "product", workers, [&](RngStream& rng) {
    const double age = rng.uniform() * period;
    // Alice holds |0> + e^{i w T}|1>, Bob holds |0> - e^{i w (T + t)}|1>.
    SampleRecord r;
    r.alice = rng.sign(0.5 * (1.0 + std::cos(omega * age)));
    r.bob = rng.sign(0.5 * (1.0 - std::cos(omega * (age + offset))));
    return r;
  });
}

void write_samples_csv(std::ostream& os, std::span<const SampleRecord> samples) {
  os << "pair_index,alice,bob\n";
  for (const auto& s : samples) os << s.pair_index << ',' << s.alice << ',' << s.bob << '\n';
}

double qcs_accuracy(double n, double omega, double fidelity) {
  if (!(fidelity > 0.5 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must exceed 1/2: pairs at F <= 1/2 carry no offset information");
  }
  if (!(n >= 1.0)) throw std::invalid_argument("need at least one pair");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  return 1.0 / ((2.0 * fidelity - 1.0) * omega * std::sqrt(n));
}

}  // namespace qsync::protocols
