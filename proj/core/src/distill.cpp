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


#include "qsync/distill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsync/ops.hpp"
#include "qsync/protocols.hpp"

namespace qsync::distill {

namespace {

void require_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fidelity must lie in [0, 1]");
}

Matrix pauli_x() { return pauli_matrix(Pauli::X); }

Matrix cnot() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 3) = 1.0;
  c(3, 2) = 1.0;
  return c;
}

// Bob's version of a gate: U^{-1} g U on each of his qubits.
Matrix bob_gate(const Matrix& g, double bob_lag, double omega) {
  const Matrix u1 = free_evolution_unitary({omega, bob_lag});
  Matrix u = u1;
  for (Eigen::Index k = 2; k < g.rows(); k *= 2) u = Eigen::kroneckerProduct(u, u1).eval();
  return u.adjoint() * g * u;
}

Matrix conjugate(const Matrix& op, const Matrix& m) { return op * m * op.adjoint(); }

RecurrenceResult finish(const Matrix& kept4, double p_keep, double bob_lag, double omega) {
  if (!(p_keep > 1e-14)) throw NoAgreement("pairs never agree; nothing survives the round");
  const DensityMatrix reduced =
      partial_trace(DensityMatrix(Matrix(kept4 / p_keep)), QubitList{0, 1});
  RecurrenceResult r;
  r.survival = 0.5 * p_keep;
  r.fidelity_out = fidelity(reduced, protocols::make_flawed_pair(bob_lag, omega));
  // Summing the small weights on the other lagged Bell states keeps 1 - F
  // accurate when F is within rounding of one.
  const Matrix lag = free_evolution_unitary({omega, -bob_lag});
  double infidelity = 0.0;
  for (const StateVector& b : {states::psi_plus(), states::phi_minus(), states::phi_plus()}) {
    const Vector v = apply_unitary(b, lag, {1}).amplitudes();
    infidelity += (v.adjoint() * reduced.matrix() * v)(0, 0).real();
  }
  r.delta_out = 2.0 * std::atan2(std::sqrt(std::max(infidelity, 0.0)),
                                 std::sqrt(std::max(r.fidelity_out, 0.0)));
  r.kept_state = reduced;
  return r;
}

RecurrenceResult projective_round(const Matrix& rho4, double bob_lag, double omega) {
  const Matrix x_bob = bob_gate(pauli_x(), bob_lag, omega);
  const Matrix o_pair = Eigen::kroneckerProduct(pauli_x(), x_bob).eval();
  const Matrix o1 = embed_operator(o_pair, {0, 1}, 4);
  const Matrix o2 = embed_operator(o_pair, {2, 3}, 4);
  const Matrix id = Matrix::Identity(16, 16);
  const Matrix agree = 0.5 * (id + o1 * o2);

  Matrix kept = Matrix::Zero(16, 16);
  for (const double o2_sign : {+1.0, -1.0}) {
    const Matrix p = agree * (0.5 * (id + o2_sign * o2));
    kept += p * rho4 * p.adjoint();
  }
  return finish(kept, kept.trace().real(), bob_lag, omega);
}

RecurrenceResult gate_round(const Matrix& rho4, double bob_lag, double omega) {
  const Matrix h = hadamard();
  const Matrix h_bob = bob_gate(h, bob_lag, omega);
  Matrix m = rho4;
  for (const int q : {0, 2}) m = conjugate(embed_operator(h, {q}, 4), m);
  for (const int q : {1, 3}) m = conjugate(embed_operator(h_bob, {q}, 4), m);
  m = conjugate(embed_operator(cnot(), {0, 2}, 4), m);
  m = conjugate(embed_operator(bob_gate(cnot(), bob_lag, omega), {1, 3}, 4), m);

  // Z readout of A2 and B2; keep when the bits agree.
  Matrix kept = Matrix::Zero(16, 16);
  for (int bit = 0; bit < 2; ++bit) {
    Matrix z = Matrix::Zero(2, 2);
    z(bit, bit) = 1.0;
    const Matrix p = embed_operator(z, {2}, 4) * embed_operator(z, {3}, 4);
    kept += p * m * p;
  }
  kept = conjugate(embed_operator(h, {0}, 4), kept);
  kept = conjugate(embed_operator(h_bob, {1}, 4), kept);
  // The CNOT back-action moves pair 1 into the phi frame; X on Bob undoes it.
  kept = conjugate(embed_operator(bob_gate(pauli_x(), bob_lag, omega), {1}, 4), kept);
  return finish(kept, kept.trace().real(), bob_lag, omega);
}

}  // namespace

void validate(const PairEnsemble& e) {
  if (!(e.n >= 0.0) || !std::isfinite(e.n)) throw std::invalid_argument("n must be finite and >= 0");
  require_fidelity(e.fidelity);
  if (!(e.delta > -std::numbers::pi && e.delta <= std::numbers::pi))
    throw std::invalid_argument("delta must lie in (-pi, pi]");
  if (!std::isfinite(e.bob_lag)) throw std::invalid_argument("bob_lag must be finite");
}

double equivalent_phase(double f) {
  require_fidelity(f);
  if (f == 0.0) return std::numbers::pi;
  return 2.0 * std::atan(std::sqrt((1.0 - f) / f));
}

RecurrenceResult recurrence_round_analytic(double f) {
  require_fidelity(f);
  const double agree = f * f + (1.0 - f) * (1.0 - f);
  RecurrenceResult r;
  r.survival = 0.5 * agree;
  r.fidelity_out = f * f / agree;
  r.delta_out = equivalent_phase(r.fidelity_out);
  return r;
}

RecurrenceResult systematic_phase_round(double delta) {
  if (!(std::abs(delta) <= std::numbers::pi)) throw std::invalid_argument("|delta| must be <= pi");
  const double c2 = std::pow(std::cos(delta / 2.0), 2);
  const double s2 = 1.0 - c2;
  RecurrenceResult r;
  r.survival = 0.5 * (c2 * c2 + s2 * s2);
  const double t = std::tan(std::abs(delta) / 2.0);
  r.delta_out = std::abs(delta) == std::numbers::pi ? std::numbers::pi : 2.0 * std::atan(t * t);
  r.fidelity_out = std::pow(std::cos(r.delta_out / 2.0), 2);
  return r;
}

double accuracy_ratio_after_round(double f) {
  if (!(f > 0.5 && f <= 1.0)) throw std::invalid_argument("accuracy ratio needs F in (1/2, 1]");
  return std::sqrt(2.0 * (f * f + (1.0 - f) * (1.0 - f)));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double hashing_yield(double n, double f) {
  if (!(n >= 0.0)) throw std::invalid_argument("n must be >= 0");
  return n * (1.0 - binary_entropy(f));
}

DensityMatrix ensemble_state(const PairEnsemble& e, double omega) {
  validate(e);
  const Complex phase = std::polar(1.0, e.delta);
  Vector good = Vector::Zero(4);
  good(1) = 1.0;
  good(2) = -phase;
  Vector bad = Vector::Zero(4);
  bad(1) = 1.0;
  bad(2) = phase;
  good /= std::sqrt(2.0);
  bad /= std::sqrt(2.0);
  const Matrix mix =
      e.fidelity * good * good.adjoint() + (1.0 - e.fidelity) * bad * bad.adjoint();
  return apply_unitary(DensityMatrix(mix), free_evolution_unitary({omega, -e.bob_lag}), {1});
}

RecurrenceResult recurrence_round_circuit(const DensityMatrix& pair, double bob_lag, double omega,
                                          CircuitPath path) {
  if (pair.num_qubits() != 2) throw std::invalid_argument("recurrence needs a two-qubit pair state");
  const Matrix rho4 = tensor_product(pair, pair).matrix();
  return path == CircuitPath::projective ? projective_round(rho4, bob_lag, omega)
                                         : gate_round(rho4, bob_lag, omega);
}

std::vector<DistillationStep> iterate_distillation(const PairEnsemble& ensemble, int rounds,
                                                   RoundMode mode, double omega) {
  validate(ensemble);
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  const bool phased = ensemble.delta != 0.0;
  if (mode == RoundMode::analytic && phased && ensemble.fidelity < 1.0)
    throw std::invalid_argument(
        "analytic rounds take either a phase-error mixture or a systematic phase, not both");

  std::vector<DistillationStep> trace;
  double n = ensemble.n;
  double f = ensemble.fidelity;
  double delta = ensemble.delta;
  std::optional<DensityMatrix> state;
  if (mode == RoundMode::circuit) state = ensemble_state(ensemble, omega);

  for (int k = 1; k <= rounds; ++k) {
    RecurrenceResult r;
    if (mode == RoundMode::circuit) {
      r = recurrence_round_circuit(*state, ensemble.bob_lag, omega);
      state = r.kept_state;
    } else if (phased) {
      r = systematic_phase_round(delta);
      delta = r.delta_out;
    } else {
      r = recurrence_round_analytic(f);
      f = r.fidelity_out;
    }
    n *= r.survival;
    trace.push_back({k, n, std::move(r)});
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const std::vector<DistillationStep>& trace) {
  out << "round,n,F,delta,survival\n";
  out.precision(17);
  for (const auto& s : trace) {
    out << s.round << ',' << s.n << ',' << s.result.fidelity_out << ',' << s.result.delta_out << ','
        << s.result.survival << '\n';
  }
}

}  // namespace qsync::distill
