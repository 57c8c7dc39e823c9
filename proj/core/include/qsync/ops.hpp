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

#include <variant>

#include "qsync/state.hpp"

namespace qsync {

/// Either kind of state; lets callers compose states whose kind is only known
/// at run time.
using QuantumState = std::variant<StateVector, DensityMatrix>;

/// Kronecker product with `a` on the leading qubits.
StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
/// Throws std::invalid_argument when the operands are of different kinds.
QuantumState tensor_product(const QuantumState& a, const QuantumState& b);

/// Lifts a 2^k x 2^k operator acting on `qubits` (in the listed order, first
/// listed = most significant) into the full 2^n space.
Matrix embed_operator(const Matrix& op, const QubitList& qubits, int num_qubits);

StateVector apply_unitary(const StateVector& psi, const Matrix& u, const QubitList& qubits);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, const QubitList& qubits);

/// Reduced state on `keep`, in ascending qubit order.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep);

/// Free precession under H = omega Z / 2 for `duration` (negative runs it backwards).
struct FreeEvolutionParams {
  double omega = 0.0;
  double duration = 0.0;
};

/// exp(-i H duration) = diag(e^{-i omega t / 2}, e^{+i omega t / 2}).
Matrix free_evolution_unitary(const FreeEvolutionParams& params);

StateVector evolve_free(const StateVector& psi, const FreeEvolutionParams& params,
                        const QubitList& qubits);
DensityMatrix evolve_free(const DensityMatrix& rho, const FreeEvolutionParams& params,
                          const QubitList& qubits);

/// <target| rho |target>, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const StateVector& target);

/// Throws unless every index is in [0, num_qubits) and none repeats.
void validate_qubits(const QubitList& qubits, int num_qubits);

}  // namespace qsync
