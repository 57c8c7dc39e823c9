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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qsync {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using QubitList = std::vector<int>;

inline constexpr int kMaxQubits = 4;

// Qubit 0 is the most significant bit of a basis-state index, so |q0 q1 ...>
// reads left to right. All states are stored unit-norm.

/// Pure state of 1 to 4 qubits.
class StateVector {
 public:
  /// Throws std::invalid_argument unless the length is 2^n (1 <= n <= 4) and
  /// the squared amplitudes sum to one within 1e-12.
  explicit StateVector(Vector amplitudes);

  /// Normalizes first; rejects the zero vector.
  static StateVector normalized(Vector amplitudes);
  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

 private:
  int num_qubits_ = 0;
  Vector amplitudes_;
};

/// True when a = e^{i phi} b for some phi.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-12);

/// Mixed state of 1 to 4 qubits. Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument on a non-square, non-power-of-two, non-Hermitian
  /// (1e-12), non-unit-trace (1e-12) or non-positive (eigenvalue < -1e-10) input.
  /// The stored matrix is symmetrized to be exactly Hermitian.
  explicit DensityMatrix(Matrix m);
  explicit DensityMatrix(const StateVector& psi);

  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double purity() const;
  /// Max elementwise distance.
  double distance(const DensityMatrix& other) const;

 private:
  int num_qubits_ = 0;
  Matrix matrix_;
};

/// Number of qubits for a 2^n dimension; throws if not a power of two in range.
int qubits_for_dimension(Eigen::Index dim);

enum class Pauli { I, X, Y, Z };

Matrix pauli_matrix(Pauli p);
char pauli_label(Pauli p);
Matrix hadamard();

/// 0.5 * sum |eigenvalues(a - b)|.
double trace_distance(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& u, double tol = 1e-10);

namespace states {

// |psi+-> = (|01> +- |10>)/sqrt2, |phi+-> = (|00> +- |11>)/sqrt2.
StateVector zero();
StateVector one();
StateVector plus();
StateVector minus();
StateVector plus_i();
StateVector psi_minus();
StateVector psi_plus();
StateVector phi_minus();
StateVector phi_plus();

}  // namespace states

}  // namespace qsync
