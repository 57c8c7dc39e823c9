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

#include "qsync/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPositivityTol = 1e-10;

}  // namespace

int qubits_for_dimension(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument("dimension " + std::to_string(dim) +
                              " is not 2^n for 1 <= n <= 4");
}

StateVector::StateVector(Vector amplitudes)
    : num_qubits_(qubits_for_dimension(amplitudes.size())),
      amplitudes_(std::move(amplitudes)) {
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("state vector is not normalized (|psi|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return StateVector(amplitudes / norm);
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("basis state needs 1..4 qubits");
  }
  const auto dim = Eigen::Index{1} << num_qubits;
  if (static_cast<Eigen::Index>(index) >= dim) {
    throw std::invalid_argument("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dimension() != b.dimension()) return false;
  const Complex overlap = a.amplitudes().dot(b.amplitudes());
  if (std::abs(overlap) < 1e-300) return false;
  const Complex phase = overlap / std::abs(overlap);
  return (a.amplitudes() * phase - b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(Matrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  num_qubits_ = qubits_for_dimension(m.rows());
  if (!m.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPositivityTol) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : DensityMatrix(Matrix(psi.amplitudes() * psi.amplitudes().adjoint())) {}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto dim = Eigen::Index{1} << num_qubits;
  return DensityMatrix(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::distance(const DensityMatrix& other) const {
  if (dimension() != other.dimension()) {
    throw std::invalid_argument("density matrices have different dimensions");
  }
  return (matrix_ - other.matrix_).cwiseAbs().maxCoeff();
}

Matrix pauli_matrix(Pauli p) {
  Matrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

char pauli_label(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace states {

namespace {

StateVector from(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return StateVector::normalized(std::move(v));
}

}  // namespace

StateVector zero() { return from({1, 0}); }
StateVector one() { return from({0, 1}); }
StateVector plus() { return from({1, 1}); }
StateVector minus() { return from({1, -1}); }
StateVector plus_i() { return from({1, Complex(0, 1)}); }
StateVector psi_minus() { return from({0, 1, -1, 0}); }
StateVector psi_plus() { return from({0, 1, 1, 0}); }
StateVector phi_minus() { return from({1, 0, 0, -1}); }
StateVector phi_plus() { return from({1, 0, 0, 1}); }

}  // namespace states

}  // namespace qsync
