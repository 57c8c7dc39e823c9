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


#include "qsync/qec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsync/channels.hpp"
#include "qsync/numerics.hpp"
#include "qsync/ops.hpp"
#include "qsync/rng.hpp"

namespace qsync::qec {

namespace {

constexpr std::size_t kCodeDim = 8;

double log_term(std::size_t count, double p) {
  return count == 0 ? 0.0 : static_cast<double>(count) * std::log(std::max(p, 1e-300));
}

Matrix z_parity(int a, int b) {
  return embed_operator(pauli_matrix(Pauli::Z), {a}, 3) * embed_operator(pauli_matrix(Pauli::Z), {b}, 3);
}

// Qubit whose flip produces syndrome (s01, s12); -1 for the trivial one.
int flipped_for(int s01, int s12) {
  if (s01 < 0 && s12 > 0) return 0;
  if (s01 < 0 && s12 < 0) return 1;
  if (s01 > 0 && s12 < 0) return 2;
  return -1;
}

}  // namespace

StateVector CatState::state() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("cat state needs 1 to 4 qubits");
  const auto dim = Eigen::Index{1} << n_qubits;
  Vector v = Vector::Zero(dim);
  v(0) = 1.0 / std::sqrt(2.0);
  v(dim - 1) = std::polar(1.0 / std::sqrt(2.0), phase);
  return StateVector::normalized(v);
}

CatState cat_encode_evolve(int n_qubits, double omega, double t) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("cat state needs 1 to 4 qubits");
  // Each |1> picks up e^{i omega t} relative to |0>, so |1...1> gains n of them.
  return CatState{n_qubits, static_cast<double>(n_qubits) * omega * t};
}

CorrectionResult repetition_correct(const DensityMatrix& state, std::optional<SingleError> error) {
  if (state.num_qubits() != 3) throw std::invalid_argument("repetition code acts on three qubits");
  const Matrix& m = state.matrix();
  const double code_weight = (m(0, 0) + m(kCodeDim - 1, kCodeDim - 1)).real();

  DensityMatrix rho = state;
  if (error) {
    if (error->qubit < 0 || error->qubit > 2) throw std::invalid_argument("error qubit must be 0, 1 or 2");
    rho = apply_unitary(rho, pauli_matrix(error->pauli), {error->qubit});
  }

  const Matrix id = Matrix::Identity(kCodeDim, kCodeDim);
  const Matrix z01 = z_parity(0, 1);
  const Matrix z12 = z_parity(1, 2);
  Matrix corrected = Matrix::Zero(kCodeDim, kCodeDim);
  CorrectionResult result{state, {+1, +1}, -1, true, code_weight < 1.0 - 1e-12};
  double best = -1.0;
  int branches = 0;
  for (const int s01 : {+1, -1}) {
    for (const int s12 : {+1, -1}) {
      const Matrix p = 0.25 * (id + s01 * z01) * (id + s12 * z12);
      Matrix branch = p * rho.matrix() * p;
      const double weight = branch.trace().real();
      if (weight < 1e-14) continue;
      ++branches;
      const int q = flipped_for(s01, s12);
      if (q >= 0) {
        const Matrix x = embed_operator(pauli_matrix(Pauli::X), {q}, 3);
        branch = x * branch * x;
      }
      corrected += branch;
      if (weight > best) {
        best = weight;
        result.syndrome = {s01, s12};
        result.flipped_qubit = q;
      }
    }
  }
  result.corrected = DensityMatrix(corrected);
  result.deterministic = branches == 1;
  return result;
}

StateVector dfs_encode(const DfsLogical& logical) {
  const double norm = std::norm(logical.a) + std::norm(logical.b);
  if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("logical amplitudes are not normalized");
  Vector v = Vector::Zero(4);
  v(1) = logical.a;
  v(2) = logical.b;
  return StateVector(v);
}

DfsDecoded dfs_decode(const DensityMatrix& state) {
  if (state.num_qubits() != 2) throw std::invalid_argument("DFS decoding needs a two-qubit state");
  Matrix block(2, 2);
  block << state(1, 1), state(1, 2), state(2, 1), state(2, 2);
  const double kept = block.trace().real();
  if (!(kept > 1e-12)) throw std::invalid_argument("state has no support on the DFS code space");
  return DfsDecoded{DensityMatrix(Matrix(block / kept)), std::max(0.0, 1.0 - kept)};
}

Matrix dfs_generator() {
  const Matrix z = pauli_matrix(Pauli::Z);
  return embed_operator(z, {0}, 2) + embed_operator(z, {1}, 2);
}

std::string to_string(CollectiveNoise kind) {
  switch (kind) {
    case CollectiveNoise::none: return "none";
    case CollectiveNoise::uniform: return "uniform";
    case CollectiveNoise::gaussian: return "gaussian";
  }
  return "?";
}

CollectiveNoise parse_collective_noise(const std::string& name) {
  if (name == "none") return CollectiveNoise::none;
  if (name == "uniform") return CollectiveNoise::uniform;
  if (name == "gaussian") return CollectiveNoise::gaussian;
  throw std::invalid_argument("unknown collective noise '" + name + "' (none, uniform, gaussian)");
}

PhaseLockResult phase_lock_run(double delta, std::size_t n, const PhaseNoise& noise,
                               std::uint64_t seed, bool encoded) {
  if (n < 1) throw std::invalid_argument("need at least one carrier");
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
  if (noise.kind == CollectiveNoise::gaussian && !(noise.sigma >= 0.0))
    throw std::invalid_argument("sigma must be >= 0");

  RngStream noise_rng(seed, "phase-lock/noise");
  RngStream readout_rng(seed, "phase-lock/readout");
  const Complex phase = std::polar(1.0, delta);
  const Matrix x_plus = DensityMatrix(states::plus()).matrix();
  const Matrix y_plus = DensityMatrix(states::plus_i()).matrix();

  PhaseLockResult r;
  r.delta_true = delta;
  r.n = n;
  r.noise_model = to_string(noise.kind);
  r.seed = seed;
  r.encoded = encoded;

  for (std::size_t k = 0; k < n; ++k) {
    double theta = 0.0;
    if (noise.kind == CollectiveNoise::uniform) theta = 2.0 * std::numbers::pi * noise_rng.uniform();
    if (noise.kind == CollectiveNoise::gaussian) theta = noise_rng.normal(0.0, noise.sigma);

    DensityMatrix logical = DensityMatrix::maximally_mixed(1);
    if (encoded) {
      const StateVector carrier =
          dfs_encode({Complex(1.0 / std::sqrt(2.0)), phase / std::sqrt(2.0)});
      logical = dfs_decode(DensityMatrix(channels::collective_z_rotation(carrier, theta, {0, 1}))).logical;
    } else {
      Vector v(2);
      v << 1.0, phase;
      logical = evolve_free(DensityMatrix(StateVector::normalized(v)), {1.0, theta}, {0});
    }

    const bool along_x = k % 2 == 0;
    const double p_plus = ((along_x ? x_plus : y_plus) * logical.matrix()).trace().real();
    const bool plus = readout_rng.bernoulli(p_plus);
    if (along_x) {
      ++r.x_total;
      r.x_plus += plus ? 1 : 0;
    } else {
      ++r.y_total;
      r.y_plus += plus ? 1 : 0;
    }
  }

  const auto loglik = [&](double d) {
    const double px = 0.5 * (1.0 + std::cos(d));
    const double py = 0.5 * (1.0 + std::sin(d));
    return log_term(r.x_plus, px) + log_term(r.x_total - r.x_plus, 1.0 - px) +
           log_term(r.y_plus, py) + log_term(r.y_total - r.y_plus, 1.0 - py);
  };
  r.delta_hat = wrap_angle(maximize_periodic(loglik, 2.0 * std::numbers::pi).argmax);

  double chi2 = 0.0;
  double vis2 = 0.0;
  for (const auto& [plus, total] : {std::pair{r.x_plus, r.x_total}, std::pair{r.y_plus, r.y_total}}) {
    if (total == 0) continue;
    const double t = static_cast<double>(total);
    const double z = (static_cast<double>(plus) - 0.5 * t) / std::sqrt(0.25 * t);
    chi2 += z * z;
    vis2 += std::pow(2.0 * static_cast<double>(plus) / t - 1.0, 2);
  }
  r.flatness_chi2 = chi2;
  r.visibility = std::sqrt(vis2);
  return r;
}

}  // namespace qsync::qec
