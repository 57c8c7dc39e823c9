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


// Seeded property checks for the state layer.

#include <gtest/gtest.h>

#include <random>

#include "../oracle.hpp"
#include "qsync/ops.hpp"
#include "qsync/superop.hpp"

namespace {

using namespace qsync;

class QcoreProperty : public ::testing::TestWithParam<int> {
 protected:
  std::mt19937_64 rng{static_cast<std::uint64_t>(1000 + GetParam())};
};

void expect_valid(const Matrix& m) {
  EXPECT_LT(oracle::max_abs(m - m.adjoint()), 1e-10);
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> s(m);
  EXPECT_GE(s.eigenvalues().minCoeff(), -1e-10);
}

TEST_P(QcoreProperty, OperationsPreserveStateInvariants) {
  const DensityMatrix rho(Matrix(oracle::random_density(3, rng)));
  expect_valid(evolve_free(rho, {0.7, 1.9}, {0, 2}).matrix());
  expect_valid(partial_trace(rho, {1, 2}).matrix());
  expect_valid(tensor_product(rho, DensityMatrix(states::plus())).matrix());
  expect_valid(decohere(rho, pauli_measurement(3, 1, Pauli::X)).matrix());
  const StateVector psi(oracle::random_state(3, rng));
  EXPECT_NEAR(evolve_free(psi, {1.0, 0.4}, {1}).amplitudes().norm(), 1.0, 1e-10);
}

TEST_P(QcoreProperty, EvolutionComposes) {
  const StateVector psi(oracle::random_state(2, rng));
  std::uniform_real_distribution<double> u(-3, 3);
  const double t1 = u(rng), t2 = u(rng), w = 1.0 + u(rng) / 4;
  const StateVector twice = evolve_free(evolve_free(psi, {w, t1}, {0, 1}), {w, t2}, {0, 1});
  EXPECT_TRUE(equal_up_to_phase(twice, evolve_free(psi, {w, t1 + t2}, {0, 1}), 1e-12));
}

TEST_P(QcoreProperty, MeasurementDistributionIsNormalized) {
  const DensityMatrix rho(Matrix(oracle::random_density(2, rng)));
  for (const Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const auto d = measure_projective(rho, pauli_measurement(2, 0, b));
    EXPECT_NEAR(d.probabilities[0] + d.probabilities[1], 1.0, 1e-12);
    for (const auto& post : d.post_states)
      if (post) expect_valid(post->matrix());
  }
}

TEST_P(QcoreProperty, PulseMeasurementEqualsDirect) {
  const DensityMatrix rho(Matrix(oracle::random_density(2, rng)));
  for (const int q : {0, 1}) {
    const auto direct = measure_x(rho, q, XMeasurement::direct);
    const auto pulse = measure_x(rho, q, XMeasurement::pulse);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(direct.probabilities[k], pulse.probabilities[k], 1e-12);
      if (direct.post_states[k]) EXPECT_LT(direct.post_states[k]->distance(*pulse.post_states[k]), 1e-12);
    }
    EXPECT_LT(direct.decohered.distance(pulse.decohered), 1e-12);
  }
}

TEST_P(QcoreProperty, ApplyUnitaryMatchesOracle) {
  const oracle::Vec psi = oracle::random_state(3, rng);
  const oracle::Mat h = oracle::hadamard();
  const StateVector out = apply_unitary(StateVector(psi), h, {1});
  const oracle::Vec expected = oracle::kron_all({oracle::pauli('I'), h, oracle::pauli('I')}) * psi;
  EXPECT_LT((out.amplitudes() - expected).norm(), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Seeds, QcoreProperty, ::testing::Range(0, 25));

}  // namespace
