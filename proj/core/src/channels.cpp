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

#include "qsync/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qsync/ops.hpp"

namespace qsync::channels {

namespace {

constexpr double kTraceTol = 1e-12;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

KrausChannel pauli_noise(double eta, Pauli p) {
  check_eta(eta);
  const Matrix id = Matrix::Identity(2, 2);
  return KrausChannel({std::sqrt(0.5 * (1.0 + eta)) * id,
                       std::sqrt(0.5 * (1.0 - eta)) * pauli_matrix(p)});
}

using Vec3 = std::array<double, 3>;

Vec3 derivative(const Vec3& v, const BlochDynamics& dyn) {
  const double w = dyn.omega;
  const double g2 = 2.0 * dyn.gamma;
  // Precession: dx/dt = -w y, dy/dt = w x.
  Vec3 d{-w * v[1], w * v[0], 0.0};
  if (dyn.kind == NoiseKind::dephasing) {
    d[0] -= g2 * v[0];
    d[1] -= g2 * v[1];
  } else {
    d[1] -= g2 * v[1];
    d[2] -= g2 * v[2];
  }
  return d;
}

Vec3 rk4_step(const Vec3& v, const BlochDynamics& dyn, double h) {
  auto axpy = [](const Vec3& a, double s, const Vec3& b) {
    return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  const Vec3 k1 = derivative(v, dyn);
  const Vec3 k2 = derivative(axpy(v, 0.5 * h, k1), dyn);
  const Vec3 k3 = derivative(axpy(v, 0.5 * h, k2), dyn);
  const Vec3 k4 = derivative(axpy(v, h, k3), dyn);
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

// exp(A t) v for the real 2x2 block A = [[a, b], [c, d]].
std::array<double, 2> expm2_apply(double a, double b, double c, double d, double t,
                                  double v0, double v1) {
  const double half_tr = 0.5 * (a + d);
  const double det = a * d - b * c;
  const double disc = half_tr * half_tr - det;
  // exp(At) = e^{half_tr t} [ f0 I + f1 (A - half_tr I) ]
  double f0;
  double f1;
  if (disc > 0) {
    const double s = std::sqrt(disc);
    f0 = std::cosh(s * t);
    f1 = std::sinh(s * t) / s;
  } else if (disc < 0) {
    const double s = std::sqrt(-disc);
    f0 = std::cos(s * t);
    f1 = std::sin(s * t) / s;
  } else {
    f0 = 1.0;
    f1 = t;
  }
  const double scale = std::exp(half_tr * t);
  const double m00 = f0 + f1 * (a - half_tr);
  const double m01 = f1 * b;
  const double m10 = f1 * c;
  const double m11 = f0 + f1 * (d - half_tr);
  return {scale * (m00 * v0 + m01 * v1), scale * (m10 * v0 + m11 * v1)};
}

BlochVector analytic(const BlochVector& b, const BlochDynamics& dyn, double t) {
  const double w = dyn.omega;
  const double g2 = 2.0 * dyn.gamma;
  if (dyn.kind == NoiseKind::dephasing) {
    const double damp = std::exp(-g2 * t);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    return {damp * (c * b.x - s * b.y), damp * (s * b.x + c * b.y), b.z};
  }
  // Bitflip: (x, y) couple through precession with y damped; z decays alone.
  const auto xy = expm2_apply(0.0, -w, w, -g2, t, b.x, b.y);
  return {xy[0], xy[1], std::exp(-g2 * t) * b.z};
}

void validate(const BlochDynamics& dyn, double t) {
  if (!(dyn.gamma >= 0.0) || !std::isfinite(dyn.gamma)) {
    throw std::invalid_argument("gamma must be finite and non-negative");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite and non-negative");
  }
  if (!std::isfinite(dyn.omega)) throw std::invalid_argument("omega must be finite");
}

void check_integrator_state(const Vec3& v, double initial_norm) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!std::isfinite(n) || n > initial_norm + 1e-9) {
    throw std::runtime_error("RK4 integration diverged; reduce the step size");
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw std::invalid_argument("Kraus channel needs an operator");
  const Eigen::Index dim = operators_.front().rows();
  arity_ = qubits_for_dimension(dim);
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Matrix& k : operators_) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("Kraus operators must share one square dimension");
    }
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kTraceTol) {
    throw std::invalid_argument("Kraus operators are not trace preserving");
  }
}

double NoiseParams::eta() const {
  if (!(gamma >= 0.0) || !(exposure >= 0.0) || !std::isfinite(gamma) ||
      !std::isfinite(exposure)) {
    throw std::invalid_argument("noise rate and exposure must be finite and non-negative");
  }
  return std::exp(-gamma * exposure);
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.num_qubits() != 1) throw std::invalid_argument("Bloch vector needs a single qubit");
  const Matrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix from_bloch(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-10) throw std::invalid_argument("Bloch vector outside the unit ball");
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + b.x * pauli_matrix(Pauli::X) +
                    b.y * pauli_matrix(Pauli::Y) + b.z * pauli_matrix(Pauli::Z));
  return DensityMatrix(std::move(m));
}

KrausChannel identity_channel() { return KrausChannel({Matrix::Identity(2, 2)}); }
KrausChannel dephasing_channel(double eta) { return pauli_noise(eta, Pauli::Z); }
KrausChannel bitflip_channel(double eta) { return pauli_noise(eta, Pauli::X); }

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const QubitList& qubits) {
  if (static_cast<int>(qubits.size()) != ch.arity()) {
    throw std::invalid_argument("channel arity " + std::to_string(ch.arity()) + " but " +
                                std::to_string(qubits.size()) + " qubits given");
  }
  const Matrix& r = rho.matrix();
  Matrix out = Matrix::Zero(r.rows(), r.cols());
  for (const Matrix& k : ch.operators()) {
    const Matrix full = embed_operator(k, qubits, rho.num_qubits());
    out += full * r * full.adjoint();
  }
  return DensityMatrix(std::move(out));
}

namespace {

Matrix collective_rotation(double theta) {
  const Matrix rz = free_evolution_unitary({1.0, theta});  // exp(-i theta Z / 2)
  Matrix u = Matrix::Zero(4, 4);
  for (int r = 0; r < 4; ++r) u(r, r) = rz(r >> 1, r >> 1) * rz(r & 1, r & 1);
  return u;
}

}  // namespace

DensityMatrix collective_z_rotation(const DensityMatrix& rho, double theta,
                                    std::pair<int, int> qubits) {
  return apply_unitary(rho, collective_rotation(theta), {qubits.first, qubits.second});
}

StateVector collective_z_rotation(const StateVector& psi, double theta,
                                  std::pair<int, int> qubits) {
  return apply_unitary(psi, collective_rotation(theta), {qubits.first, qubits.second});
}

double default_rk4_step(const BlochDynamics& dyn) {
  const double rate = std::max(dyn.gamma, std::abs(dyn.omega));
  return rate > 0.0 ? 1e-3 / rate : 1e-3;
}

BlochVector bloch_evolve(const BlochVector& b, const BlochDynamics& dyn, double t,
                         BlochMethod method, double step) {
  validate(dyn, t);
  if (method == BlochMethod::analytic) return analytic(b, dyn, t);
  const auto traj = bloch_trajectory(b, dyn, t, 1, method, step);
  return traj.back().b;
}

std::vector<BlochSample> bloch_trajectory(const BlochVector& b0, const BlochDynamics& dyn,
                                          double t_end, int samples, BlochMethod method,
                                          double step) {
  validate(dyn, t_end);
  if (samples < 1) throw std::invalid_argument("trajectory needs at least one interval");
  if (step < 0.0 || !std::isfinite(step)) throw std::invalid_argument("invalid RK4 step");
  const double h_target = step > 0.0 ? step : default_rk4_step(dyn);
  const double interval = t_end / samples;

  std::vector<BlochSample> out;
  out.reserve(static_cast<std::size_t>(samples) + 1);
  out.push_back({0.0, b0});
  if (method == BlochMethod::analytic) {
    for (int i = 1; i <= samples; ++i) out.push_back({i * interval, analytic(b0, dyn, i * interval)});
    return out;
  }

  const double initial_norm = b0.norm();
  const long steps_per_interval =
      interval > 0.0 ? std::max(1L, static_cast<long>(std::ceil(interval / h_target - 1e-9))) : 0L;
  const double h = steps_per_interval > 0 ? interval / static_cast<double>(steps_per_interval) : 0.0;
  Vec3 v{b0.x, b0.y, b0.z};
  for (int i = 1; i <= samples; ++i) {
    for (long s = 0; s < steps_per_interval; ++s) v = rk4_step(v, dyn, h);
    check_integrator_state(v, initial_norm);
    out.push_back({i * interval, {v[0], v[1], v[2]}});
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<BlochSample>& trajectory) {
  os << "t,x,y,z\n";
  os << std::setprecision(17);
  for (const auto& s : trajectory) {
    os << s.t << ',' << s.b.x << ',' << s.b.y << ',' << s.b.z << '\n';
  }
}

}  // namespace qsync::channels
