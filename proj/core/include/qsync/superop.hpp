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

#include <cstddef>
#include <optional>
#include <vector>

#include "qsync/rng.hpp"
#include "qsync/state.hpp"

namespace qsync {

/// A complete family of orthogonal projectors {E_a} on a bipartite space
/// A (x) B. Acting on a state it models decoherence on a time slice,
/// rho -> sum_a E_a rho E_a, with no readout.
class DecoherenceSuperop {
 public:
  /// Throws std::invalid_argument unless every E_a is Hermitian and idempotent,
  /// E_a E_b = 0 for a != b, and sum_a E_a = I, all within 1e-12. dim_a * dim_b
  /// must equal the projector size.
  DecoherenceSuperop(std::vector<Matrix> projectors, std::size_t dim_a, std::size_t dim_b);

  const std::vector<Matrix>& projectors() const { return projectors_; }
  std::size_t size() const { return projectors_.size(); }
  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dimension() const { return dim_a_ * dim_b_; }

 private:
  std::vector<Matrix> projectors_;
  std::size_t dim_a_;
  std::size_t dim_b_;
};

/// sum_a E_a rho E_a.
DensityMatrix decohere(const DensityMatrix& rho, const DecoherenceSuperop& s);

struct MeasurementDistribution {
  std::vector<double> probabilities;  // P(a) = tr(E_a rho)
  /// E_a rho E_a / P(a); empty where P(a) < 1e-12.
  std::vector<std::optional<DensityMatrix>> post_states;
  DensityMatrix decohered;  // sum_a E_a rho E_a
};

struct SampledMeasurement {
  std::size_t outcome;
  double probability;
  DensityMatrix post_state;
};

MeasurementDistribution measure_projective(const DensityMatrix& rho, const DecoherenceSuperop& s);
SampledMeasurement measure_projective(const DensityMatrix& rho, const DecoherenceSuperop& s,
                                      RngStream& rng);

/// Two-outcome measurement of a single-qubit Pauli (X, Y or Z) on `qubit` of an
/// n-qubit register. Outcome 0 is the +1 eigenvalue. The whole register is
/// treated as side A (dim_b = 1).
DecoherenceSuperop pauli_measurement(int num_qubits, int qubit, Pauli basis);

enum class XMeasurement {
  direct,  // project onto |+>, |->
  pulse,   // Hadamard (pi/2 pulse), Z projection, Hadamard back
};

MeasurementDistribution measure_x(const DensityMatrix& rho, int qubit, XMeasurement method);

}  // namespace qsync
