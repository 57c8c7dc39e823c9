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

#include "qsync/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsync {

double wrap_periodic(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = wrap_periodic(x, two_pi);
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

PeriodicMaximum maximize_periodic(const std::function<double(double)>& f, double period,
                                  int grid_points, double relative_tol) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("period must be positive and finite");
  }
  if (grid_points < 3) throw std::invalid_argument("grid needs at least 3 points");

  const double step = period / grid_points;
  double best_x = 0.0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double x = i * step;
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  if (!std::isfinite(best_v)) {
    return {best_x, best_v};
  }

  // Golden-section on [best - step, best + step]; f is evaluated off the
  // [0, period) range freely since it is periodic.
  constexpr double inv_phi = 0.6180339887498949;
  double lo = best_x - step;
  double hi = best_x + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > relative_tol * period) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = f(mid);
  if (fmid >= best_v) return {wrap_periodic(mid, period), fmid};
  return {best_x, best_v};
}

double second_derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace qsync
