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

#include <stdexcept>

#include "qsync/ops.hpp"
#include "qsync/protocols.hpp"
#include "qsync/rng.hpp"

namespace qsync::protocols {

namespace {

StateVector bell_state(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::psi_minus: return states::psi_minus();
    case BellOutcome::psi_plus: return states::psi_plus();
    case BellOutcome::phi_minus: return states::phi_minus();
    case BellOutcome::phi_plus: return states::phi_plus();
  }
  throw std::invalid_argument("unknown Bell outcome");
}

}  // namespace

Pauli teleport_correction(BellOutcome outcome) {
  // With a |psi-> resource Bob holds sigma|psi> for these sigma.
  switch (outcome) {
    case BellOutcome::psi_minus: return Pauli::I;
    case BellOutcome::psi_plus: return Pauli::Z;
    case BellOutcome::phi_minus: return Pauli::X;
    case BellOutcome::phi_plus: return Pauli::Y;
  }
  throw std::invalid_argument("unknown Bell outcome");
}

TeleportResult teleport_branch(const StateVector& psi, double delta_lag, double omega,
                               BellOutcome outcome) {
  if (psi.num_qubits() != 1) throw std::invalid_argument("teleportation input must be one qubit");

  // Qubit 0: input, qubit 1: Alice's half, qubit 2: Bob's half.
  const DensityMatrix joint(tensor_product(psi, make_flawed_pair(delta_lag, omega)));
  const StateVector bell = bell_state(outcome);
  const Matrix projector =
      embed_operator(bell.amplitudes() * bell.amplitudes().adjoint(), {0, 1}, 3);
  const Matrix branch = projector * joint.matrix() * projector;
  const double p = branch.trace().real();
  if (!(p > 1e-12)) throw std::runtime_error("teleportation branch has zero probability");

  DensityMatrix bob_raw = partial_trace(DensityMatrix(Matrix(branch / p)), {2});
  const Pauli sigma = teleport_correction(outcome);
  const Matrix undo = pauli_matrix(sigma);  // Paulis are their own inverses

  DensityMatrix after_lag = apply_unitary(evolve_free(bob_raw, {omega, delta_lag}, {0}), undo, {0});
  DensityMatrix without_lag = apply_unitary(bob_raw, undo, {0});
  const double f = fidelity(after_lag, psi);
  const double f_no_lag = fidelity(without_lag, psi);
  return {outcome, p, sigma, std::move(bob_raw), std::move(after_lag), f, f_no_lag};
}

TeleportResult teleport_with_offset(const StateVector& psi, double delta_lag, double omega,
                                    std::uint64_t seed) {
  RngStream rng(seed, "teleport");
  const double u = rng.uniform();
  double acc = 0.0;
  const BellOutcome outcomes[] = {BellOutcome::psi_minus, BellOutcome::psi_plus,
                                  BellOutcome::phi_minus, BellOutcome::phi_plus};
  for (BellOutcome o : outcomes) {
    TeleportResult r = teleport_branch(psi, delta_lag, omega, o);
    acc += r.probability;
    if (u < acc || o == BellOutcome::phi_plus) return r;
  }
  throw std::logic_error("unreachable");
}

}  // namespace qsync::protocols
