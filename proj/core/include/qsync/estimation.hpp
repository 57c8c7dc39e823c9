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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <variant>

#include "qsync/protocols.hpp"

namespace qsync::protocols {

// Every supported protocol yields P(a, b | t) = 1/4 (1 - a b c cos(omega t))
// for a model-specific contrast c; the estimator works on that family.

struct QcsModel {
  double eta = 1.0;
  double fidelity = 1.0;
};
/// Product-state pairs of unknown age: c = 1/2.
struct ProductModel {};
/// SCT, where Alice's record is the prepared state rather than an anticorrelated outcome: c = -eta.
struct SctModel {
  double eta = 1.0;
};

using OffsetModel = std::variant<QcsModel, ProductModel, SctModel>;

double model_contrast(const OffsetModel& model);
JointDistribution model_joint(const OffsetModel& model, double t, double omega);

/// Fisher information about t carried by one (alice, bob) record, in 1 / time^2.
double fisher_information(const OffsetModel& model, double t, double omega);

struct FisherPeak {
  double t;
  double information;
};

/// Maximum of fisher_information over one period, by grid scan plus refinement.
FisherPeak most_sensitive_offset(const OffsetModel& model, double omega);

struct OffsetEstimate {
  /// Mode in [0, pi/omega]. cos(omega t) statistics cannot tell t from
  /// period - t, so the mirror mode is always reported alongside.
  double t_hat = 0.0;
  double mirror_t_hat = 0.0;
  double std_error = 0.0;  // from observed Fisher information
  std::size_t n_used = 0;
  double log_likelihood = 0.0;
};

/// Thrown when the samples cannot pin down the offset (flat likelihood).
class DegenerateLikelihood : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum-likelihood offset: 1024-point grid over [0, 2 pi / omega), then
/// golden-section refinement to 1e-10 of the period.
OffsetEstimate estimate_offset(std::span<const SampleRecord> samples, double omega,
                               const OffsetModel& model);

}  // namespace qsync::protocols
