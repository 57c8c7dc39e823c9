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

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsync/state.hpp"

namespace qsync::distill {

/// Expected-count description of a pair ensemble. `fidelity` is measured against
/// |psi-(bob_lag)>; `delta` is a systematic phase shared by every pair.
struct PairEnsemble {
  double n = 1.0;
  double fidelity = 1.0;
  double delta = 0.0;
  double bob_lag = 0.0;
};

void validate(const PairEnsemble& ensemble);

struct RecurrenceResult {
  double survival = 0.0;  // n'/n, at most 1/2
  double fidelity_out = 0.0;
  /// Systematic phase of a pure pair with fidelity `fidelity_out`:
  /// 2 atan(sqrt((1 - F) / F)). Zero for a perfect pair.
  double delta_out = 0.0;
  std::optional<DensityMatrix> kept_state;
};

/// 2 atan(sqrt((1 - F) / F)); inverse of F = cos^2(delta / 2).
double equivalent_phase(double fidelity);

RecurrenceResult recurrence_round_analytic(double fidelity);
RecurrenceResult systematic_phase_round(double delta);

/// Ratio of QCS accuracy after one round to before it. Throws for F <= 1/2.
double accuracy_ratio_after_round(double fidelity);

double binary_entropy(double p);
double hashing_yield(double n, double fidelity);

/// Mixture of pairs (|01> - e^{i delta}|10>) with weight F and the phase-flipped
/// partner with weight 1 - F, Bob's half then lagged by bob_lag.
DensityMatrix ensemble_state(const PairEnsemble& ensemble, double omega);

enum class CircuitPath {
  projective,  // measure {O2, O1 O2} with O = X_A (x) X_B directly
  gates,       // Hadamards, bilateral CNOT, Z readout of pair 2
};

class NoAgreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One recurrence round on two i.i.d. copies of `pair` (qubits A1 B1 A2 B2).
/// Pairs are kept when the bilateral X parities of the two pairs agree; Bob's
/// operations are conjugated by his lag. Fidelity is taken against
/// |psi-(bob_lag)>. The gate path ends with an X on Bob's qubit so both paths
/// report pair 1 in the same Bell frame.
RecurrenceResult recurrence_round_circuit(const DensityMatrix& pair, double bob_lag, double omega,
                                          CircuitPath path = CircuitPath::projective);

enum class RoundMode { analytic, circuit };

struct DistillationStep {
  int round = 0;
  double n = 0.0;  // expected pairs after this round
  RecurrenceResult result;
};

/// Analytic mode handles either a phase-error mixture (delta = 0) or pure
/// systematic-phase pairs (F = 1); it rejects both at once. Circuit mode feeds
/// each kept state into the next round.
std::vector<DistillationStep> iterate_distillation(const PairEnsemble& ensemble, int rounds,
                                                   RoundMode mode, double omega = 1.0);

/// CSV with header "round,n,F,delta,survival".
void write_trace_csv(std::ostream& out, const std::vector<DistillationStep>& trace);

}  // namespace qsync::distill
