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

#include <iosfwd>
#include <utility>
#include <vector>

#include "qsync/state.hpp"

namespace qsync::channels {

/// Completely positive trace-preserving map given by Kraus operators on k qubits.
class KrausChannel {
 public:
  /// Throws std::invalid_argument if the list is empty, operators are not all
  /// 2^k x 2^k, or sum K^dagger K deviates from I by more than 1e-12.
  explicit KrausChannel(std::vector<Matrix> operators);

  int arity() const { return arity_; }
  const std::vector<Matrix>& operators() const { return operators_; }

 private:
  std::vector<Matrix> operators_;
  int arity_ = 0;
};

/// Phase-noise exposure. The transverse damping factor is eta = exp(-gamma T).
struct NoiseParams {
  double gamma = 0.0;     // damping rate, 1 / time
  double exposure = 0.0;  // time T

  /// Throws std::invalid_argument on negative or non-finite fields.
  double eta() const;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

BlochVector bloch_vector(const DensityMatrix& single_qubit);
DensityMatrix from_bloch(const BlochVector& b);

KrausChannel identity_channel();
/// {sqrt((1+eta)/2) I, sqrt((1-eta)/2) Z}: scales x and y by eta.
KrausChannel dephasing_channel(double eta);
/// {sqrt((1+eta)/2) I, sqrt((1-eta)/2) X}: scales y and z by eta.
KrausChannel bitflip_channel(double eta);

/// rho -> sum_K K rho K^dagger with K lifted onto `qubits`.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const QubitList& qubits);

/// exp(-i theta Z/2) on both qubits of the pair: identical phase error on
/// qubits that travel together.
DensityMatrix collective_z_rotation(const DensityMatrix& rho, double theta,
                                    std::pair<int, int> qubits);
StateVector collective_z_rotation(const StateVector& psi, double theta,
                                  std::pair<int, int> qubits);

enum class NoiseKind { bitflip, dephasing };
enum class BlochMethod { analytic, integrator };

/// Precession at omega about z plus Lindblad damping with jump operator
/// sqrt(gamma) X (bitflip) or sqrt(gamma) Z (dephasing). Damped components
/// decay as exp(-2 gamma t).
struct BlochDynamics {
  double omega = 0.0;
  NoiseKind kind = NoiseKind::dephasing;
  double gamma = 0.0;
};

/// RK4 step used when none is given: 1e-3 / max(gamma, |omega|), or 1e-3 if both vanish.
double default_rk4_step(const BlochDynamics& dyn);

/// Throws std::invalid_argument for negative gamma or t, and std::runtime_error
/// if the integrator output stops being finite or leaves the Bloch ball.
BlochVector bloch_evolve(const BlochVector& b, const BlochDynamics& dyn, double t,
                         BlochMethod method, double step = 0.0);

struct BlochSample {
  double t;
  BlochVector b;
};

/// `samples` + 1 equally spaced points on [0, t_end]. The integrator path
/// advances one continuous RK4 run through all sample times.
std::vector<BlochSample> bloch_trajectory(const BlochVector& b0, const BlochDynamics& dyn,
                                          double t_end, int samples, BlochMethod method,
                                          double step = 0.0);

/// Header "t,x,y,z".
void write_trajectory_csv(std::ostream& os, const std::vector<BlochSample>& trajectory);

}  // namespace qsync::channels
