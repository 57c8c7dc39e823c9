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

#include <random>

#include "../oracle.hpp"
#include "qsync/causal.hpp"

namespace {

using namespace qsync;
using namespace qsync::causal;

DensityMatrix dm(const oracle::Vec& v) { return DensityMatrix(StateVector(v)); }

double replay(const Witness& w, const DecoherenceSuperop& s) {
  const Matrix id = Matrix::Identity(w.unitary.rows(), w.unitary.cols());
  if (w.direction == Direction::a_to_b) {
    return oracle::trace_distance(bob_marginal(w.input, w.unitary, s).matrix(),
                                  bob_marginal(w.input, id, s).matrix());
  }
  return oracle::trace_distance(alice_marginal(w.input, w.unitary, s).matrix(),
                                alice_marginal(w.input, id, s).matrix());
}

// Every projector of `s` equals exactly one of `expected`.
void expect_same_family(const DecoherenceSuperop& s, const std::vector<oracle::Mat>& expected) {
  ASSERT_EQ(s.size(), expected.size());
  for (const auto& e : expected) {
    int hits = 0;
    for (const auto& p : s.projectors()) hits += oracle::max_abs(p - e) < 1e-12;
    EXPECT_EQ(hits, 1);
  }
}

std::vector<oracle::Mat> bell_projectors() {
  return {oracle::proj(oracle::psi_minus()), oracle::proj(oracle::psi_plus()),
          oracle::proj(oracle::phi_minus()), oracle::proj(oracle::phi_plus())};
}

TEST(ApplySuperop, Examples) {
  const auto bell = bell_superop();
  const oracle::Mat singlet = oracle::proj(oracle::psi_minus());
  EXPECT_LT(oracle::max_abs(apply_superop(dm(oracle::psi_minus()), bell).matrix() - singlet), 1e-15);
  const auto sorkin = sorkin_superop();
  EXPECT_LT(oracle::max_abs(apply_superop(dm(oracle::ket("00")), sorkin).matrix() - oracle::proj(oracle::ket("00"))), 1e-15);
  const oracle::Mat mix = 0.5 * (singlet + oracle::proj(oracle::psi_plus()));
  EXPECT_LT(oracle::max_abs(apply_superop(dm(oracle::ket("10")), sorkin).matrix() - mix), 1e-15);
}

TEST(ApplySuperop, RejectsDimensionMismatch) {
  EXPECT_THROW(apply_superop(DensityMatrix::maximally_mixed(3), sorkin_superop()), std::invalid_argument);
}

TEST(MakeSuperop, Families) {
  const oracle::Mat singlet = oracle::proj(oracle::psi_minus());
  expect_same_family(make_superop({SuperopKind::sorkin, {}, {}, {}, 0}),
                     {singlet, oracle::Mat::Identity(4, 4) - singlet});
  expect_same_family(make_superop({SuperopKind::bell_complete, {}, {}, {}, 0}), bell_projectors());
  expect_same_family(stabilizer_superop({"XX", "ZZ"}), bell_projectors());
  const oracle::Mat zz = oracle::kron(oracle::pauli('Z'), oracle::pauli('Z'));
  const oracle::Mat id = oracle::Mat::Identity(4, 4);
  expect_same_family(product_observable_superop(oracle::pauli('Z'), oracle::pauli('Z')),
                     {0.5 * (id + zz), 0.5 * (id - zz)});
}

TEST(MakeSuperop, RejectsNonCommutingGenerators) {
  EXPECT_THROW(stabilizer_superop({"XI", "ZI"}), std::invalid_argument);
  EXPECT_THROW(stabilizer_superop({"XX", "ZZZ"}), std::invalid_argument);
}

TEST(PauliString, MatchesKron) {
  EXPECT_LT(oracle::max_abs(pauli_string("XZ") - oracle::kron(oracle::pauli('X'), oracle::pauli('Z'))), 1e-15);
  EXPECT_THROW(pauli_string("XQ"), std::invalid_argument);
  EXPECT_THROW(pauli_string(""), std::invalid_argument);
}

TEST(BobMarginal, SorkinExamples) {
  const auto s = sorkin_superop();
  const DensityMatrix zero = dm(oracle::ket("00"));
  EXPECT_LT(oracle::max_abs(bob_marginal(zero, Matrix::Identity(2, 2), s).matrix() - oracle::proj(oracle::ket("0"))), 1e-15);
  EXPECT_LT(oracle::max_abs(bob_marginal(zero, oracle::pauli('X'), s).matrix() - oracle::Mat::Identity(2, 2) / 2.0), 1e-15);
}

TEST(BobMarginal, BellMeasurementLeavesBobMixed) {
  std::mt19937_64 rng(5);
  const Matrix u = oracle::precession(1.0, 0.8) * oracle::hadamard();
  EXPECT_LT(oracle::max_abs(bob_marginal(dm(oracle::ket("00")), u, bell_superop()).matrix() - oracle::Mat::Identity(2, 2) / 2.0), 1e-15);
}

TEST(BobMarginal, MatchesRawFormula) {
  std::mt19937_64 rng(6);
  const auto s = sorkin_superop();
  const oracle::Mat rho = oracle::random_density(2, rng);
  RngStream stream(1, "test", 0);
  const Matrix u = random_unitary(2, stream);
  const oracle::Mat ua = oracle::kron(u, oracle::Mat::Identity(2, 2));
  oracle::Mat out = oracle::Mat::Zero(4, 4);
  for (const auto& e : s.projectors()) out += e * ua * rho * ua.adjoint() * e;
  EXPECT_LT(oracle::max_abs(bob_marginal(DensityMatrix(rho), u, s).matrix() - oracle::partial_trace(out, 2, {1})), 1e-14);
  const oracle::Mat ub = oracle::kron(oracle::Mat::Identity(2, 2), u);
  out.setZero();
  for (const auto& e : s.projectors()) out += e * ub * rho * ub.adjoint() * e;
  EXPECT_LT(oracle::max_abs(alice_marginal(DensityMatrix(rho), u, s).matrix() - oracle::partial_trace(out, 2, {0})), 1e-14);
}

TEST(BobMarginal, RejectsNonUnitary) {
  EXPECT_THROW(bob_marginal(dm(oracle::ket("00")), 2.0 * oracle::pauli('X'), sorkin_superop()), std::invalid_argument);
}

TEST(CausalityCheck, SorkinSignals) {
  const auto s = sorkin_superop();
  const auto r = causality_check(s);
  EXPECT_FALSE(r.a_to_b_causal);
  EXPECT_NEAR(r.max_deviation, 0.5, 1e-12);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->direction, Direction::a_to_b);
  EXPECT_EQ(r.witness->input_label, "00");
  EXPECT_EQ(r.witness->unitary_label, "X");
  EXPECT_NEAR(r.witness->deviation, 0.5, 1e-12);
  EXPECT_NEAR(replay(*r.witness, s), r.witness->deviation, 1e-12);
}

TEST(CausalityCheck, CausalCatalog) {
  for (const auto& s : {bell_superop(), product_observable_superop(oracle::pauli('Z'), oracle::pauli('Z')),
                        stabilizer_superop({"XX", "ZZ"}), stabilizer_superop({"XXXX", "ZZZZ"})}) {
    const auto r = causality_check(s);
    EXPECT_TRUE(r.a_to_b_causal);
    EXPECT_TRUE(r.b_to_a_causal);
    EXPECT_LT(r.max_deviation, 1e-9);
    EXPECT_FALSE(r.witness.has_value());
  }
}

TEST(CausalityCheck, DeterministicForSeed) {
  const auto a = causality_check(sorkin_superop(), {1e-9, 9, 8});
  const auto b = causality_check(sorkin_superop(), {1e-9, 9, 8});
  EXPECT_EQ(a.max_deviation, b.max_deviation);
  EXPECT_EQ(a.witness->unitary_label, b.witness->unitary_label);
}

TEST(PauliTwirl, Examples) {
  const oracle::Mat bell_diag = 0.1 * oracle::proj(oracle::psi_minus()) + 0.2 * oracle::proj(oracle::psi_plus()) +
                                0.3 * oracle::proj(oracle::phi_minus()) + 0.4 * oracle::proj(oracle::phi_plus());
  EXPECT_LT(oracle::max_abs(pauli_twirl(DensityMatrix(bell_diag)).matrix() - bell_diag), 1e-15);
  const oracle::Mat expected = 0.5 * (oracle::proj(oracle::psi_plus()) + oracle::proj(oracle::psi_minus()));
  EXPECT_LT(oracle::max_abs(pauli_twirl(dm(oracle::ket("01"))).matrix() - expected), 1e-15);
}

TEST(PauliTwirl, EqualsBellDephasing) {
  std::mt19937_64 rng(100);
  const auto bell = bell_superop();
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho(oracle::random_density(2, rng));
    EXPECT_LT(oracle::max_abs(pauli_twirl(rho).matrix() - apply_superop(rho, bell).matrix()), 1e-12);
  }
  EXPECT_THROW(pauli_twirl(DensityMatrix::maximally_mixed(1)), std::invalid_argument);
}

TEST(RandomUnitary, IsUnitary) {
  RngStream rng(3, "test", 0);
  for (const Eigen::Index d : {2, 4, 8}) {
    const Matrix u = random_unitary(d, rng);
    EXPECT_LT(oracle::max_abs(u.adjoint() * u - Matrix::Identity(d, d)), 1e-12);
  }
}

}  // namespace
