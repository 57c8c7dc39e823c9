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

#include "qsync/superop.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qsync/ops.hpp"

namespace qsync {

namespace {

constexpr double kProjectorTol = 1e-12;
constexpr double kMinProbability = 1e-12;

}  // namespace

DecoherenceSuperop::DecoherenceSuperop(std::vector<Matrix> projectors, std::size_t dim_a,
                                       std::size_t dim_b)
    : projectors_(std::move(projectors)), dim_a_(dim_a), dim_b_(dim_b) {
  if (projectors_.empty()) throw std::invalid_argument("superoperator needs a projector");
  const auto dim = static_cast<Eigen::Index>(dim_a_ * dim_b_);
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < projectors_.size(); ++a) {
    const Matrix& e = projectors_[a];
    if (e.rows() != dim || e.cols() != dim) {
      throw std::invalid_argument("projector " + std::to_string(a) + " has wrong dimension");
    }
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kProjectorTol) {
      throw std::invalid_argument("projector " + std::to_string(a) + " is not Hermitian");
    }
    if ((e * e - e).cwiseAbs().maxCoeff() > kProjectorTol) {
      throw std::invalid_argument("projector " + std::to_string(a) + " is not idempotent");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if ((e * projectors_[b]).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw std::invalid_argument("projectors " + std::to_string(b) + " and " +
                                    std::to_string(a) + " are not orthogonal");
      }
    }
    sum += e;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw std::invalid_argument("projectors do not sum to the identity");
  }
}

DensityMatrix decohere(const DensityMatrix& rho, const DecoherenceSuperop& s) {
  if (rho.dimension() != s.dimension()) {
    throw std::invalid_argument("superoperator acts on dimension " +
                                std::to_string(s.dimension()) + ", state has " +
                                std::to_string(rho.dimension()));
  }
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const Matrix& e : s.projectors()) out += e * rho.matrix() * e;
  return DensityMatrix(std::move(out));
}

MeasurementDistribution measure_projective(const DensityMatrix& rho, const DecoherenceSuperop& s) {
  DensityMatrix decohered = decohere(rho, s);
  MeasurementDistribution dist{{}, {}, std::move(decohered)};
  for (const Matrix& e : s.projectors()) {
    Matrix branch = e * rho.matrix() * e;
    const double p = std::max(0.0, branch.trace().real());
    dist.probabilities.push_back(p);
    if (p < kMinProbability) {
      dist.post_states.emplace_back(std::nullopt);
    } else {
      dist.post_states.emplace_back(DensityMatrix(Matrix(branch / p)));
    }
  }
  return dist;
}

SampledMeasurement measure_projective(const DensityMatrix& rho, const DecoherenceSuperop& s,
                                      RngStream& rng) {
  const MeasurementDistribution dist = measure_projective(rho, s);
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t chosen = dist.probabilities.size();
  for (std::size_t a = 0; a < dist.probabilities.size(); ++a) {
    if (!dist.post_states[a]) continue;
    chosen = a;  // last outcome with support absorbs rounding
    acc += dist.probabilities[a];
    if (u < acc) break;
  }
  return {chosen, dist.probabilities[chosen], *dist.post_states[chosen]};
}

DecoherenceSuperop pauli_measurement(int num_qubits, int qubit, Pauli basis) {
  if (basis == Pauli::I) throw std::invalid_argument("cannot measure the identity");
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix p = pauli_matrix(basis);
  std::vector<Matrix> projectors{
      embed_operator(0.5 * (id + p), {qubit}, num_qubits),
      embed_operator(0.5 * (id - p), {qubit}, num_qubits),
  };
  return DecoherenceSuperop(std::move(projectors), std::size_t{1} << num_qubits, 1);
}

MeasurementDistribution measure_x(const DensityMatrix& rho, int qubit, XMeasurement method) {
  const int n = rho.num_qubits();
  if (method == XMeasurement::direct) {
    return measure_projective(rho, pauli_measurement(n, qubit, Pauli::X));
  }
  const Matrix h = hadamard();
  const DensityMatrix rotated = apply_unitary(rho, h, {qubit});
  MeasurementDistribution dist = measure_projective(rotated, pauli_measurement(n, qubit, Pauli::Z));
  for (auto& post : dist.post_states) {
    if (post) post = apply_unitary(*post, h, {qubit});
  }
  dist.decohered = apply_unitary(dist.decohered, h, {qubit});
  return dist;
}

}  // namespace qsync
