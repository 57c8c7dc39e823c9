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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsync/rng.hpp"
#include "qsync/state.hpp"
#include "qsync/superop.hpp"

namespace qsync::causal {

/// Dimension-checked sum_a E_a rho E_a.
DensityMatrix apply_superop(const DensityMatrix& rho, const DecoherenceSuperop& s);

/// Tensor product of single-qubit Paulis, e.g. "XZ" = X (x) Z. 1 to 4 letters.
Matrix pauli_string(const std::string& label);

enum class SuperopKind { sorkin, bell_complete, product_observable, stabilizer_products };

struct SuperopSpec {
  SuperopKind kind = SuperopKind::sorkin;
  // product_observable: Hermitian A on Alice's side, B on Bob's side.
  Matrix alice_observable;
  Matrix bob_observable;
  // stabilizer_products: equal-length Pauli strings; the first `alice_qubits`
  // letters belong to Alice (0 means half of them).
  std::vector<std::string> generators;
  int alice_qubits = 0;
};

/// sorkin: {|psi-><psi-|, I - |psi-><psi-|}. bell_complete: the four Bell
/// projectors. product_observable: eigenspaces of A (x) B. stabilizer_products:
/// joint eigenspaces of commuting Pauli strings (rejects non-commuting lists).
DecoherenceSuperop make_superop(const SuperopSpec& spec);

DecoherenceSuperop sorkin_superop();
DecoherenceSuperop bell_superop();
DecoherenceSuperop product_observable_superop(const Matrix& a, const Matrix& b);
DecoherenceSuperop stabilizer_superop(const std::vector<std::string>& generators,
                                      int alice_qubits = 0);

/// tr_A[ sum_a E_a (U_A (x) I) rho (U_A (x) I)^dag E_a ].
DensityMatrix bob_marginal(const DensityMatrix& rho, const Matrix& alice_unitary,
                           const DecoherenceSuperop& s);
/// The mirror image: Bob acts, Alice's marginal is returned.
DensityMatrix alice_marginal(const DensityMatrix& rho, const Matrix& bob_unitary,
                             const DecoherenceSuperop& s);

enum class Direction { a_to_b, b_to_a };
std::string to_string(Direction d);

struct Witness {
  DensityMatrix input;
  std::string input_label;  // e.g. "0+" for |0>|+>
  Matrix unitary;           // acts on the sender's side
  std::string unitary_label;
  Direction direction = Direction::a_to_b;
  double deviation = 0.0;
};

struct CausalityReport {
  bool a_to_b_causal = true;
  bool b_to_a_causal = true;
  double max_deviation = 0.0;
  double a_to_b_deviation = 0.0;
  double b_to_a_deviation = 0.0;
  std::optional<Witness> witness;  // present whenever a direction is acausal
};

struct CausalityOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 2026;
  int random_unitaries = 32;
};

/// Scans product inputs built from {|0>, |1>, |+>, |+i>} on every qubit (an
/// operator basis) against sender unitaries I, the Pauli strings, H on every
/// qubit and seeded Haar-random unitaries. The deviation of a cell is the trace
/// distance between the receiver's marginal and its U = I value.
CausalityReport causality_check(const DecoherenceSuperop& s, const CausalityOptions& options = {});

/// Haar-random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(Eigen::Index dim, RngStream& rng);

/// 1/4 sum over sigma in {I, X, Y, Z} of (sigma (x) sigma) rho (sigma (x) sigma).
DensityMatrix pauli_twirl(const DensityMatrix& rho);

}  // namespace qsync::causal
