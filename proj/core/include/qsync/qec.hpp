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
#include <optional>
#include <string>

#include "qsync/state.hpp"

namespace qsync::qec {

/// (|0...0> + e^{i phase} |1...1>) / sqrt(2) on 1 to 4 qubits.
struct CatState {
  int n_qubits = 1;
  double phase = 0.0;

  StateVector state() const;
};

/// Prepares the n-qubit cat and lets every qubit precess for t: phase n omega t.
CatState cat_encode_evolve(int n_qubits, double omega, double t);

struct SingleError {
  Pauli pauli = Pauli::X;
  int qubit = 0;
};

struct CorrectionResult {
  DensityMatrix corrected;
  std::array<int, 2> syndrome{+1, +1};  // (Z0 Z1, Z1 Z2) of the most likely branch
  int flipped_qubit = -1;               // X correction applied, -1 for none
  bool deterministic = true;            // a single syndrome branch had weight
  /// The input was outside span{|000>, |111>}, so the correction may have
  /// completed a logical error.
  bool miscorrection_risk = false;
};

/// Three-qubit bit-flip code: optional error, exact parity projection, then the
/// X correction each syndrome branch calls for.
CorrectionResult repetition_correct(const DensityMatrix& state,
                                    std::optional<SingleError> error = std::nullopt);

struct DfsLogical {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
};

/// a|01> + b|10>. Throws unless |a|^2 + |b|^2 = 1 within 1e-12.
StateVector dfs_encode(const DfsLogical& logical);

struct DfsDecoded {
  DensityMatrix logical;  // |01> -> |0>, |10> -> |1>
  double leakage = 0.0;   // weight outside span{|01>, |10>}
};

/// Throws std::invalid_argument when nothing is left in the subspace.
DfsDecoded dfs_decode(const DensityMatrix& state);

/// Z (x) I + I (x) Z, which annihilates the code space.
Matrix dfs_generator();

enum class CollectiveNoise { none, uniform, gaussian };

struct PhaseNoise {
  CollectiveNoise kind = CollectiveNoise::uniform;
  double sigma = 0.0;  // gaussian only
};

std::string to_string(CollectiveNoise kind);
CollectiveNoise parse_collective_noise(const std::string& name);

struct PhaseLockResult {
  double delta_true = 0.0;
  double delta_hat = 0.0;  // in (-pi, pi]
  std::size_t n = 0;
  std::string noise_model;
  std::uint64_t seed = 0;
  bool encoded = true;
  std::size_t x_plus = 0, x_total = 0;
  std::size_t y_plus = 0, y_total = 0;
  /// Length of the measured Bloch vector (2 x_plus / x_total - 1, ...).
  double visibility = 0.0;
  /// z_x^2 + z_y^2 against P(+) = 1/2; chi-square with two degrees of freedom
  /// when the carriers hold no phase information.
  double flatness_chi2 = 0.0;
};

/// 0.1% tail of chi-square with two degrees of freedom.
inline constexpr double kFlatnessThreshold = 13.815510557964274;

/// Alice sends n carriers holding |0> + e^{i delta}|1>, either DFS-encoded
/// pairs or bare qubits. Each suffers its own collective Z rotation. Bob
/// measures even carriers in X and odd ones in Y and returns the MLE of delta.
PhaseLockResult phase_lock_run(double delta, std::size_t n, const PhaseNoise& noise,
                               std::uint64_t seed, bool encoded = true);

}  // namespace qsync::qec
