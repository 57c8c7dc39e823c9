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
#include "qsync/estimation.hpp"
#include "qsync/protocols.hpp"

namespace {

using namespace qsync;
using namespace qsync::protocols;

class ProtocolProperty : public ::testing::TestWithParam<int> {
 protected:
  std::mt19937_64 rng{static_cast<std::uint64_t>(3000 + GetParam())};
  std::uniform_real_distribution<double> unit{0.0, 1.0};
};

TEST_P(ProtocolProperty, BobMarginalIsUniform) {
  const double t = 10 * unit(rng) - 5, w = 0.1 + 2 * unit(rng), eta = unit(rng), f = unit(rng);
  const double pp = qcs_outcome_prob(+1, t, w, eta, f), pm = qcs_outcome_prob(-1, t, w, eta, f);
  EXPECT_GE(pp, 0.0);
  EXPECT_LE(pp, 1.0);
  EXPECT_NEAR(0.5 * (pp + pm), 0.5, 1e-15);
}

TEST_P(ProtocolProperty, FlawedPairEqualsShiftedPerfectPair) {
  const double w = 0.5 + unit(rng), d = 2 * unit(rng), t = 4 * unit(rng);
  const auto exact = x_measurement_joint(DensityMatrix(make_flawed_pair(d, w)), t, w);
  const auto shifted = qcs_joint(t - d, w, 1.0, 1.0);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(exact.p[k], shifted.p[k], 1e-12);
}

TEST_P(ProtocolProperty, EstimatorIsShiftEquivariant) {
  const double w = 1.0, t = 0.5 + unit(rng), s = 0.3 + 0.5 * unit(rng);
  const std::size_t n = 40000;
  const auto seed = static_cast<std::uint64_t>(GetParam());
  const auto a = estimate_offset(run_qcs(n, {t, 0.0, 0.0}, w, 1.0, 1.0, seed), w, QcsModel{});
  const auto b = estimate_offset(run_qcs(n, {t + s, 0.0, 0.0}, w, 1.0, 1.0, seed + 100), w, QcsModel{});
  const double spread = std::hypot(a.std_error, b.std_error);
  EXPECT_NEAR(b.t_hat - a.t_hat, s, 5 * spread);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ProtocolProperty, ::testing::Range(0, 10));

}  // namespace
