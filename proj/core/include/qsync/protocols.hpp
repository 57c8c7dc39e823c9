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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsync/state.hpp"

namespace qsync::protocols {

/// Scalar stand-in for the relativistic bookkeeping of one synchronization run.
struct ClockFrame {
  double true_offset = 0.0;          // t = t_A - t_B, the quantity to estimate
  double bob_lag = 0.0;              // Delta: systematic lag of Bob's operations / pair preparation
  double transit_proper_time = 0.0;  // tau elapsed on a transported clock
};

struct SampleRecord {
  int alice = +1;  // +1 or -1
  int bob = +1;    // +1 or -1
  std::size_t pair_index = 0;
};

/// P(Bob finds X = +1 | Alice found `alice`) for QCS with damping eta and pair
/// fidelity F: 1/2 (1 -+ eta (2F - 1) cos(omega t)), minus sign for alice = +1.
double qcs_outcome_prob(int alice, double t, double omega, double eta, double fidelity);

/// Joint distribution of (alice, bob) X outcomes, indexed by cell().
struct JointDistribution {
  std::array<double, 4> p{};

  static std::size_t cell(int alice, int bob) {
    return (alice > 0 ? 0U : 2U) + (bob > 0 ? 0U : 1U);
  }
  double operator()(int alice, int bob) const { return p[cell(alice, bob)]; }
  double conditional_bob_plus(int alice) const {
    return (*this)(alice, +1) / ((*this)(alice, +1) + (*this)(alice, -1));
  }
};

JointDistribution qcs_joint(double t, double omega, double eta, double fidelity);

/// Exact joint X-measurement statistics of a two-qubit state when Bob measures
/// `bob_delay` after Alice (Bob's qubit precesses for that extra time).
/// Computed by density-matrix simulation, not by formula.
JointDistribution x_measurement_joint(const DensityMatrix& pair, double bob_delay, double omega);

/// |psi-(Delta)> = (I (x) U_Delta^{-1}) |psi->  ~  |01> - e^{i omega Delta} |10>.
StateVector make_flawed_pair(double delta_lag, double omega);
/// (I (x) U_Delta^{-1}) |psi+>, the phase-flipped partner of make_flawed_pair.
StateVector make_flawed_partner(double delta_lag, double omega);

/// Effective offset seen by QCS statistics: true offset minus Bob's lag.
double qcs_effective_time(const ClockFrame& frame);
/// Elapsed precession time of an SCT qubit: transit plus offset.
double sct_effective_time(const ClockFrame& frame);

/// Pairs are sampled in fixed blocks, each drawing from its own substream
/// derived from (seed, block index); the result does not depend on `workers`.
inline constexpr std::size_t kSampleBlock = 4096;

/// QCS: Charlie's pairs (fidelity F, damping eta; flawed by frame.bob_lag) are
/// measured in X by Alice and, t later, by Bob.
std::vector<SampleRecord> run_qcs(std::size_t n, const ClockFrame& frame, double omega, double eta,
                                  double fidelity, std::uint64_t seed, unsigned workers = 1);

/// SCT: Alice prepares |+> or |->, recorded in `alice`; the qubit precesses for
/// sct_effective_time(frame) under damping eta; Bob measures X.
std::vector<SampleRecord> run_sct(std::size_t n, const ClockFrame& frame, double omega, double eta,
                                  std::uint64_t seed, unsigned workers = 1);

/// Product-state protocol: |+>_A (x) |->_B of unknown age T, uniform over one
/// period; Alice measures at age T and Bob at T + frame.true_offset.
std::vector<SampleRecord> run_product_protocol(std::size_t n, const ClockFrame& frame,
                                               double omega, std::uint64_t seed,
                                               unsigned workers = 1);

/// Header "pair_index,alice,bob".
void write_samples_csv(std::ostream& os, std::span<const SampleRecord> samples);

/// (2F - 1)^{-1} omega^{-1} n^{-1/2}. Throws std::invalid_argument for F <= 1/2.
double qcs_accuracy(double n, double omega, double fidelity);

// ---------------------------------------------------------------------------
// Teleportation through a lagged resource pair.

/// Alice's Bell outcome on (input, her half of the pair).
enum class BellOutcome { psi_minus, psi_plus, phi_minus, phi_plus };

struct TeleportResult {
  BellOutcome outcome;
  double probability;
  Pauli correction;             // sigma, with Bob's raw state U_Delta^{-1} sigma |psi>
  DensityMatrix bob_raw;        // right after Alice's measurement
  DensityMatrix bob_after_lag;  // after free evolution for Delta and sigma^{-1}
  double fidelity;              // of bob_after_lag to |psi>
  double fidelity_without_lag;  // sigma^{-1} applied to bob_raw directly
};

Pauli teleport_correction(BellOutcome outcome);

/// Deterministic: the branch for one measurement outcome.
TeleportResult teleport_branch(const StateVector& psi, double delta_lag, double omega,
                               BellOutcome outcome);

/// Samples Alice's outcome from the seeded stream.
TeleportResult teleport_with_offset(const StateVector& psi, double delta_lag, double omega,
                                    std::uint64_t seed);

}  // namespace qsync::protocols
