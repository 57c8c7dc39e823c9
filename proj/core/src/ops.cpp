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

#include "qsync/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qsync {

namespace {

// Bit of qubit q in basis index i for an n-qubit register (qubit 0 = MSB).
inline std::size_t bit_of(std::size_t i, int q, int n) { return (i >> (n - 1 - q)) & 1U; }

}  // namespace

void validate_qubits(const QubitList& qubits, int num_qubits) {
  if (qubits.empty()) throw std::invalid_argument("qubit list is empty");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= num_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(qubits[i]) +
                                  " out of range for " + std::to_string(num_qubits) +
                                  " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("duplicate qubit index " + std::to_string(qubits[i]));
      }
    }
  }
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
    throw std::invalid_argument("tensor product exceeds 4 qubits");
  }
  return StateVector::normalized(Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval());
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
    throw std::invalid_argument("tensor product exceeds 4 qubits");
  }
  return DensityMatrix(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
  if (a.index() != b.index()) {
    throw std::invalid_argument("tensor product of a state vector and a density matrix");
  }
  return std::visit(
      [&b](const auto& lhs) -> QuantumState {
        using T = std::decay_t<decltype(lhs)>;
        return tensor_product(lhs, std::get<T>(b));
      },
      a);
}

Matrix embed_operator(const Matrix& op, const QubitList& qubits, int num_qubits) {
  validate_qubits(qubits, num_qubits);
  const int k = static_cast<int>(qubits.size());
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw std::invalid_argument("operator size does not match " + std::to_string(k) +
                                " target qubits");
  }
  std::size_t target_mask = 0;
  for (int q : qubits) target_mask |= std::size_t{1} << (num_qubits - 1 - q);

  const std::size_t dim = std::size_t{1} << num_qubits;
  auto sub_index = [&](std::size_t full) {
    std::size_t s = 0;
    for (int q : qubits) s = (s << 1) | bit_of(full, q, num_qubits);
    return s;
  };

  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t sr = sub_index(r);
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~target_mask) != (c & ~target_mask)) continue;
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          op(static_cast<Eigen::Index>(sr), static_cast<Eigen::Index>(sub_index(c)));
    }
  }
  return full;
}

StateVector apply_unitary(const StateVector& psi, const Matrix& u, const QubitList& qubits) {
  const Matrix full = embed_operator(u, qubits, psi.num_qubits());
  return StateVector::normalized(full * psi.amplitudes());
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, const QubitList& qubits) {
  const Matrix full = embed_operator(u, qubits, rho.num_qubits());
  return DensityMatrix(Matrix(full * rho.matrix() * full.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep) {
  const int n = rho.num_qubits();
  validate_qubits(keep, n);
  QubitList kept = keep;
  std::sort(kept.begin(), kept.end());
  QubitList traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  auto assemble = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t full = 0;
    for (int i = 0; i < nk; ++i) {
      const std::size_t b = (kept_bits >> (nk - 1 - i)) & 1U;
      full |= b << (n - 1 - kept[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < nt; ++i) {
      const std::size_t b = (traced_bits >> (nt - 1 - i)) & 1U;
      full |= b << (n - 1 - traced[static_cast<std::size_t>(i)]);
    }
    return static_cast<Eigen::Index>(full);
  };

  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t dt = std::size_t{1} << nt;
  Matrix reduced = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < dk; ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t) sum += rho.matrix()(assemble(r, t), assemble(c, t));
      reduced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  }
  return DensityMatrix(std::move(reduced));
}

Matrix free_evolution_unitary(const FreeEvolutionParams& params) {
  if (!std::isfinite(params.omega) || !std::isfinite(params.duration)) {
    throw std::invalid_argument("free evolution parameters must be finite");
  }
  const double half = 0.5 * params.omega * params.duration;
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, -half);
  u(1, 1) = std::polar(1.0, half);
  return u;
}

namespace {

Matrix product_unitary(const Matrix& single, int count) {
  Matrix u = single;
  for (int i = 1; i < count; ++i) u = Eigen::kroneckerProduct(u, single).eval();
  return u;
}

}  // namespace

StateVector evolve_free(const StateVector& psi, const FreeEvolutionParams& params,
                        const QubitList& qubits) {
  const Matrix u = product_unitary(free_evolution_unitary(params), static_cast<int>(qubits.size()));
  return apply_unitary(psi, u, qubits);
}

DensityMatrix evolve_free(const DensityMatrix& rho, const FreeEvolutionParams& params,
                          const QubitList& qubits) {
  const Matrix u = product_unitary(free_evolution_unitary(params), static_cast<int>(qubits.size()));
  return apply_unitary(rho, u, qubits);
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.dimension() != target.dimension()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const double f = target.amplitudes().dot(rho.matrix() * target.amplitudes()).real();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace qsync
