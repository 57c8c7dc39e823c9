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

#include <functional>

namespace qsync {

struct PeriodicMaximum {
  double argmax;  // in [0, period)
  double value;
};

/// Maximizes a periodic function: dense grid scan, then golden-section search
/// in the bracket around the best grid point until the bracket is narrower
/// than `relative_tol * period`.
PeriodicMaximum maximize_periodic(const std::function<double(double)>& f, double period,
                                  int grid_points = 1024, double relative_tol = 1e-10);

/// Central second difference.
double second_derivative(const std::function<double(double)>& f, double x, double h);

/// Wraps x into [0, period).
double wrap_periodic(double x, double period);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace qsync
