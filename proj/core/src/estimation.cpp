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

#include "qsync/estimation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qsync/numerics.hpp"

namespace qsync::protocols {

namespace {

constexpr int kGridPoints = 1024;
constexpr double kRefineTol = 1e-10;

}  // namespace

double model_contrast(const OffsetModel& model) {
  struct Visitor {
    double operator()(const QcsModel& m) const {
      if (!(m.eta >= 0.0 && m.eta <= 1.0) || !(m.fidelity >= 0.0 && m.fidelity <= 1.0)) {
        throw std::invalid_argument("QCS model needs eta and fidelity in [0, 1]");
      }
      return m.eta * (2.0 * m.fidelity - 1.0);
    }
    double operator()(const ProductModel&) const { return 0.5; }
    double operator()(const SctModel& m) const {
      if (!(m.eta >= 0.0 && m.eta <= 1.0)) throw std::invalid_argument("SCT model needs eta in [0, 1]");
      return -m.eta;
    }
  };
  return std::visit(Visitor{}, model);
}

JointDistribution model_joint(const OffsetModel& model, double t, double omega) {
  const double c = model_contrast(model);
  const double cs = std::cos(omega * t);
  JointDistribution j;
  for (int a : {+1, -1}) {
    for (int b : {+1, -1}) j.p[JointDistribution::cell(a, b)] = 0.25 * (1.0 - a * b * c * cs);
  }
  return j;
}

double fisher_information(const OffsetModel& model, double t, double omega) {
  const double c = model_contrast(model);
  const double theta = omega * t;
  double info = 0.0;
  for (int a : {+1, -1}) {
    for (int b : {+1, -1}) {
      const double p = 0.25 * (1.0 - a * b * c * std::cos(theta));
      const double dp = 0.25 * a * b * c * omega * std::sin(theta);
      if (p > 1e-300) info += dp * dp / p;
    }
  }
  return info;
}

FisherPeak most_sensitive_offset(const OffsetModel& model, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const double period = 2.0 * std::numbers::pi / omega;
  const auto best = maximize_periodic(
      [&](double t) { return fisher_information(model, t, omega); }, period, 4096, 1e-12);
  return {best.argmax, best.value};
}

OffsetEstimate estimate_offset(std::span<const SampleRecord> samples, double omega,
                               const OffsetModel& model) {
  if (samples.size() < 2) throw std::invalid_argument("offset estimation needs at least 2 samples");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be positive and finite");
  }
  const double c = model_contrast(model);
  if (c == 0.0) {
    throw DegenerateLikelihood("model has zero contrast: outcomes carry no offset information");
  }

  std::array<double, 4> counts{};
  for (const auto& s : samples) {
    if ((s.alice != 1 && s.alice != -1) || (s.bob != 1 && s.bob != -1)) {
      throw std::invalid_argument("sample outcomes must be +1 or -1");
    }
    counts[JointDistribution::cell(s.alice, s.bob)] += 1.0;
  }

  const auto log_likelihood = [&](double t) {
    const JointDistribution j = model_joint(model, t, omega);
    double ll = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (counts[k] == 0.0) continue;
      if (j.p[k] <= 0.0) return -std::numeric_limits<double>::infinity();
      ll += counts[k] * std::log(j.p[k]);
    }
    return ll;
  };

  const double period = 2.0 * std::numbers::pi / omega;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGridPoints; ++i) {
    const double v = log_likelihood(period * i / kGridPoints);
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(hi) || hi - lo <= 1e-9 * std::max(1.0, std::abs(hi))) {
    throw DegenerateLikelihood("likelihood is flat over the period; offset not identifiable");
  }

  const PeriodicMaximum best = maximize_periodic(log_likelihood, period, kGridPoints, kRefineTol);
  double t_hat = best.argmax;
  if (t_hat > 0.5 * period) t_hat = period - t_hat;

  OffsetEstimate est;
  est.t_hat = t_hat;
  est.mirror_t_hat = wrap_periodic(period - t_hat, period);
  est.n_used = samples.size();
  est.log_likelihood = best.value;

  const double h = 1e-4 / omega;
  const double curvature = second_derivative(log_likelihood, t_hat, h);
  est.std_error = (curvature < 0.0 && std::isfinite(curvature))
                      ? 1.0 / std::sqrt(-curvature)
                      : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace qsync::protocols
