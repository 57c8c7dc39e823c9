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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "../oracle.hpp"
#include "qsync/channels.hpp"
#include "qsync/ops.hpp"
#include "qsync/protocols.hpp"

namespace {

using namespace qsync;
using namespace qsync::channels;

DensityMatrix dm(const oracle::Vec& v) { return DensityMatrix(Matrix(oracle::proj(v))); }

TEST(KrausChannel, RejectsNonTracePreserving) {
  EXPECT_THROW(KrausChannel({Matrix::Identity(2, 2) * 0.9}), std::invalid_argument);
  EXPECT_THROW(KrausChannel(std::vector<Matrix>{}), std::invalid_argument);
  EXPECT_THROW(KrausChannel({Matrix::Identity(3, 3)}), std::invalid_argument);
  EXPECT_EQ(KrausChannel({Matrix::Identity(4, 4)}).arity(), 2);
}

TEST(NoiseParams, EtaFromRateAndExposure) {
  EXPECT_NEAR((NoiseParams{1.0, std::log(2.0)}.eta()), 0.5, 1e-15);
  EXPECT_THROW((NoiseParams{-1.0, 1.0}.eta()), std::invalid_argument);
  EXPECT_THROW((NoiseParams{1.0, -1.0}.eta()), std::invalid_argument);
}

TEST(Dephasing, UnitEtaIsIdentity) {
  std::mt19937_64 rng(1);
  const DensityMatrix rho(Matrix(oracle::random_density(1, rng)));
  EXPECT_LT(apply_channel(rho, dephasing_channel(1.0), {0}).distance(rho), 1e-15);
}

TEST(Dephasing, ZeroEtaFullyDephasesPlus) {
  const auto out = apply_channel(dm((oracle::ket("0") + oracle::ket("1")) / std::sqrt(2.0)), dephasing_channel(0.0), {0});
  EXPECT_LT(oracle::max_abs(out.matrix() - oracle::Mat::Identity(2, 2) / 2.0), 1e-15);
}

TEST(Dephasing, EtaOutOfRange) {
  EXPECT_THROW(dephasing_channel(1.1), std::invalid_argument);
  EXPECT_THROW(bitflip_channel(-0.1), std::invalid_argument);
}

TEST(Bitflip, XPolarizationUntouched) {
  for (const double eta : {0.0, 0.3, 1.0}) {
    const auto b = bloch_vector(apply_channel(from_bloch({1, 0, 0}), bitflip_channel(eta), {0}));
    EXPECT_NEAR(b.x, 1.0, 1e-15);
    EXPECT_NEAR(b.y, 0.0, 1e-15);
    EXPECT_NEAR(b.z, 0.0, 1e-15);
  }
}

TEST(Bitflip, HalvesZPolarization) {
  const auto b = bloch_vector(apply_channel(from_bloch({0, 0, 1}), bitflip_channel(0.5), {0}));
  EXPECT_NEAR(b.z, 0.5, 1e-15);
  EXPECT_NEAR(b.x, 0.0, 1e-15);
}

TEST(ApplyChannel, IdentityAndArity) {
  std::mt19937_64 rng(2);
  const DensityMatrix rho(Matrix(oracle::random_density(2, rng)));
  EXPECT_LT(apply_channel(rho, identity_channel(), {1}).distance(rho), 1e-15);
  EXPECT_THROW(apply_channel(rho, dephasing_channel(0.5), {0, 1}), std::invalid_argument);
  EXPECT_THROW(apply_channel(rho, dephasing_channel(0.5), {2}), std::invalid_argument);
}

TEST(ApplyChannel, DephasingComposes) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho(Matrix(oracle::random_density(1, rng)));
    const auto two = apply_channel(apply_channel(rho, dephasing_channel(0.6), {0}), dephasing_channel(0.7), {0});
    EXPECT_LT(two.distance(apply_channel(rho, dephasing_channel(0.42), {0})), 1e-12);
  }
}

TEST(ApplyChannel, DephasedSingletReproducesDampedStatistics) {
  const double w = 1.0, eta = 0.55;
  for (const double t : {0.0, 0.9, 2.0}) {
    DensityMatrix rho = apply_channel(DensityMatrix(states::psi_minus()), dephasing_channel(eta), {1});
    rho = evolve_free(rho, {w, t}, {1});
    for (const int a : {+1, -1}) {
      const double joint_plus = oracle::joint_x(rho.matrix(), a, +1);
      const double pa = joint_plus + oracle::joint_x(rho.matrix(), a, -1);
      EXPECT_NEAR(joint_plus / pa, 0.5 * (1 - a * eta * std::cos(w * t)), 1e-12);
    }
  }
}

TEST(CollectiveRotation, ZeroAngleIsIdentity) {
  std::mt19937_64 rng(4);
  const DensityMatrix rho(Matrix(oracle::random_density(2, rng)));
  EXPECT_LT(collective_z_rotation(rho, 0.0, {0, 1}).distance(rho), 1e-15);
}

TEST(CollectiveRotation, SingleExcitationSubspaceInvariant) {
  const oracle::Vec v = (0.6 * oracle::ket("01") + oracle::cd(0, 0.8) * oracle::ket("10"));
  for (const double theta : {0.3, 1.9, 4.4}) {
    const StateVector out = collective_z_rotation(StateVector(v), theta, {0, 1});
    EXPECT_LT((out.amplitudes() - v).norm(), 1e-15);
  }
}

TEST(CollectiveRotation, PhasesOnOtherComponents) {
  const double theta = 0.7;
  const StateVector out = collective_z_rotation(StateVector(oracle::ket("00")), theta, {0, 1});
  EXPECT_NEAR(std::arg(out[0]), -theta, 1e-15);
  EXPECT_LT(collective_z_rotation(dm(oracle::ket("00")), theta, {0, 1}).distance(dm(oracle::ket("00"))), 1e-15);

  // |00> picks up e^{-i theta} and |01> nothing, so the coherence rotates by the full angle.
  const oracle::Vec v = (oracle::ket("00") + oracle::ket("01")) / std::sqrt(2.0);
  const auto rho = collective_z_rotation(dm(v), theta, {0, 1});
  const oracle::Mat u = oracle::kron(oracle::precession(1.0, theta), oracle::precession(1.0, theta));
  EXPECT_LT(oracle::max_abs(rho.matrix() - u * oracle::proj(v) * u.adjoint()), 1e-15);
  EXPECT_NEAR(std::arg(rho(0, 1)), -theta, 1e-15);
}

TEST(BlochEvolve, BitflipAtRestKeepsX) {
  const BlochDynamics dyn{0.0, NoiseKind::bitflip, 1.0};
  for (const auto method : {BlochMethod::analytic, BlochMethod::integrator}) {
    const auto b = bloch_evolve({1, 0, 0}, dyn, 3.0, method);
    EXPECT_NEAR(b.x, 1.0, 1e-12);
  }
}

TEST(BlochEvolve, DephasingDecaysTwiceTheRate) {
  const double g = 0.8;
  const BlochDynamics dyn{0.0, NoiseKind::dephasing, g};
  for (const double t : {0.5, 2.0, 5.0}) {
    EXPECT_NEAR(bloch_evolve({1, 0, 0}, dyn, t, BlochMethod::analytic).x, std::exp(-2 * g * t), 1e-14);
    EXPECT_NEAR(bloch_evolve({1, 0, 0}, dyn, t, BlochMethod::integrator).x, std::exp(-2 * g * t), 1e-8);
  }
}

TEST(BlochEvolve, PurePrecessionConservesLength) {
  const BlochDynamics dyn{1.3, NoiseKind::dephasing, 0.0};
  const auto b = bloch_evolve({0.6, 0.0, 0.8}, dyn, 2.0, BlochMethod::integrator);
  EXPECT_NEAR(b.norm(), 1.0, 1e-10);
  EXPECT_NEAR(b.x, 0.6 * std::cos(2.6), 1e-9);
  EXPECT_NEAR(b.y, 0.6 * std::sin(2.6), 1e-9);
}

TEST(BlochEvolve, MatchesDensityMatrixPrecession) {
  // The Bloch rotation sense agrees with exp(-i omega t Z / 2) on a density matrix.
  const double w = 0.9, t = 1.1;
  const auto rho = evolve_free(from_bloch({1, 0, 0}), {w, t}, {0});
  const auto b = bloch_evolve({1, 0, 0}, {w, NoiseKind::dephasing, 0.0}, t, BlochMethod::analytic);
  const auto ref = bloch_vector(rho);
  EXPECT_NEAR(b.x, ref.x, 1e-14);
  EXPECT_NEAR(b.y, ref.y, 1e-14);
}

TEST(BlochEvolve, RejectsNegativeInputs) {
  EXPECT_THROW(bloch_evolve({1, 0, 0}, {0, NoiseKind::bitflip, -1}, 1, BlochMethod::analytic), std::invalid_argument);
  EXPECT_THROW(bloch_evolve({1, 0, 0}, {0, NoiseKind::bitflip, 1}, -1, BlochMethod::analytic), std::invalid_argument);
}

TEST(BlochEvolve, DivergentStepReported) {
  EXPECT_THROW(bloch_evolve({1, 0, 0}, {0, NoiseKind::dephasing, 1.0}, 10.0, BlochMethod::integrator, 5.0),
               std::runtime_error);
}

TEST(Trajectory, CsvSchema) {
  const auto traj = bloch_trajectory({1, 0, 0}, {0, NoiseKind::dephasing, 1}, 1.0, 4, BlochMethod::analytic);
  ASSERT_EQ(traj.size(), 5U);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "t,x,y,z");
}

}  // namespace
