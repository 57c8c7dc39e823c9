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


#include "qsync/causal.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qsync/ops.hpp"

namespace qsync::causal {

namespace {

Matrix projector(const StateVector& v) { return v.amplitudes() * v.amplitudes().adjoint(); }

std::size_t power_of_two(int k) { return std::size_t{1} << k; }

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

// Reduced state of one side of a bipartite operator with the given split.
Matrix trace_out_a(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return out;
}

Matrix trace_out_b(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
  return out;
}

void require_unitary(const Matrix& u, std::size_t dim, const char* who) {
  if (static_cast<std::size_t>(u.rows()) != dim || u.rows() != u.cols())
    throw std::invalid_argument(std::string(who) + " unitary has the wrong dimension");
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument(std::string(who) + " operator is not unitary");
}

Matrix sum_conjugations(const Matrix& m, const DecoherenceSuperop& s) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (const Matrix& e : s.projectors()) out += e * m * e;
  return out;
}

Matrix bob_marginal_raw(const Matrix& rho, const Matrix& u, const DecoherenceSuperop& s) {
  const auto da = static_cast<Eigen::Index>(s.dim_a());
  const auto db = static_cast<Eigen::Index>(s.dim_b());
  const Matrix full = kron(u, Matrix::Identity(db, db));
  return trace_out_a(sum_conjugations(full * rho * full.adjoint(), s), da, db);
}

Matrix alice_marginal_raw(const Matrix& rho, const Matrix& u, const DecoherenceSuperop& s) {
  const auto da = static_cast<Eigen::Index>(s.dim_a());
  const auto db = static_cast<Eigen::Index>(s.dim_b());
  const Matrix full = kron(Matrix::Identity(da, da), u);
  return trace_out_b(sum_conjugations(full * rho * full.adjoint(), s), da, db);
}

struct Labeled {
  Matrix m;
  std::string label;
};

// |0>, |1>, |+>, |+i> on every qubit; the first qubit varies slowest.
std::vector<Labeled> probe_states(int qubits) {
  const std::vector<Labeled> single = {{projector(states::zero()), "0"},
                                       {projector(states::one()), "1"},
                                       {projector(states::plus()), "+"},
                                       {projector(states::plus_i()), "i"}};
  std::vector<Labeled> out = {{Matrix::Identity(1, 1), ""}};
  for (int q = 0; q < qubits; ++q) {
    std::vector<Labeled> next;
    for (const auto& prefix : out)
      for (const auto& s : single) next.push_back({kron(prefix.m, s.m), prefix.label + s.label});
    out = std::move(next);
  }
  return out;
}

std::vector<Labeled> probe_unitaries(int qubits, const CausalityOptions& options,
                                     Direction direction) {
  std::vector<Labeled> out;
  std::vector<std::string> labels = {""};
  for (int q = 0; q < qubits; ++q) {
    std::vector<std::string> next;
    for (const auto& l : labels)
      for (const char c : {'I', 'X', 'Y', 'Z'}) next.push_back(l + c);
    labels = std::move(next);
  }
  for (const auto& l : labels) out.push_back({pauli_string(l), l});

  Matrix h = hadamard();
  for (int q = 1; q < qubits; ++q) h = kron(h, hadamard());
  out.push_back({h, std::string(static_cast<std::size_t>(qubits), 'H')});

  RngStream rng(options.seed,
                direction == Direction::a_to_b ? "causal/unitary/a" : "causal/unitary/b");
  const auto dim = static_cast<Eigen::Index>(power_of_two(qubits));
  for (int k = 0; k < options.random_unitaries; ++k)
    out.push_back({random_unitary(dim, rng), "haar" + std::to_string(k)});
  return out;
}

DecoherenceSuperop eigenspace_superop(const Matrix& observable, std::size_t da, std::size_t db) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(observable);
  const auto& values = solver.eigenvalues();
  const Matrix& vectors = solver.eigenvectors();
  std::vector<Matrix> projectors;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k < values.size() && std::abs(values(k) - values(start)) < 1e-9) continue;
    const Matrix block = vectors.middleCols(start, k - start);
    projectors.push_back(block * block.adjoint());
    start = k;
  }
  return DecoherenceSuperop(std::move(projectors), da, db);
}

int qubits_of(std::size_t dim) { return qubits_for_dimension(static_cast<Eigen::Index>(dim)); }

}  // namespace

DensityMatrix apply_superop(const DensityMatrix& rho, const DecoherenceSuperop& s) {
  if (rho.dimension() != s.dimension())
    throw std::invalid_argument("state dimension " + std::to_string(rho.dimension()) +
                                " does not match superoperator dimension " +
                                std::to_string(s.dimension()));
  return decohere(rho, s);
}

Matrix pauli_string(const std::string& label) {
  if (label.empty() || label.size() > static_cast<std::size_t>(kMaxQubits))
    throw std::invalid_argument("Pauli string must have 1 to 4 letters");
  Matrix out = Matrix::Identity(1, 1);
  for (const char c : label) {
    Pauli p;
    switch (c) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
    }
    out = kron(out, pauli_matrix(p));
  }
  return out;
}

DecoherenceSuperop sorkin_superop() {
  const Matrix e1 = projector(states::psi_minus());
  return DecoherenceSuperop({e1, Matrix::Identity(4, 4) - e1}, 2, 2);
}

DecoherenceSuperop bell_superop() {
  return DecoherenceSuperop({projector(states::psi_minus()), projector(states::psi_plus()),
                             projector(states::phi_minus()), projector(states::phi_plus())},
                            2, 2);
}

DecoherenceSuperop product_observable_superop(const Matrix& a, const Matrix& b) {
  for (const Matrix* m : {&a, &b}) {
    if (m->rows() != m->cols() || m->rows() < 2) throw std::invalid_argument("observable must be square");
    if (!m->isApprox(m->adjoint(), 1e-12)) throw std::invalid_argument("observable must be Hermitian");
  }
  return eigenspace_superop(kron(a, b), static_cast<std::size_t>(a.rows()),
                            static_cast<std::size_t>(b.rows()));
}

DecoherenceSuperop stabilizer_superop(const std::vector<std::string>& generators, int alice_qubits) {
  if (generators.empty()) throw std::invalid_argument("need at least one generator");
  const auto n = static_cast<int>(generators.front().size());
  std::vector<Matrix> g;
  for (const auto& label : generators) {
    if (static_cast<int>(label.size()) != n)
      throw std::invalid_argument("generators must all act on the same qubits");
    g.push_back(pauli_string(label));
  }
  if (n < 2) throw std::invalid_argument("stabilizer superoperator needs at least two qubits");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if ((g[i] * g[j] - g[j] * g[i]).norm() > 1e-12)
        throw std::invalid_argument("generators " + generators[i] + " and " + generators[j] +
                                    " do not commute");
  if (alice_qubits == 0) alice_qubits = n / 2;
  if (alice_qubits < 1 || alice_qubits >= n)
    throw std::invalid_argument("alice_qubits must leave both sides non-empty");

  const auto dim = static_cast<Eigen::Index>(power_of_two(n));
  const Matrix id = Matrix::Identity(dim, dim);
  std::vector<Matrix> projectors;
  for (std::size_t pattern = 0; pattern < power_of_two(static_cast<int>(g.size())); ++pattern) {
    Matrix p = id;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double sign = (pattern >> k) & 1U ? -1.0 : 1.0;
      p = p * (0.5 * (id + sign * g[k]));
    }
    if (p.trace().real() > 0.5) projectors.push_back(p);
  }
  return DecoherenceSuperop(std::move(projectors), power_of_two(alice_qubits),
                            power_of_two(n - alice_qubits));
}

DecoherenceSuperop make_superop(const SuperopSpec& spec) {
  switch (spec.kind) {
    case SuperopKind::sorkin: return sorkin_superop();
    case SuperopKind::bell_complete: return bell_superop();
    case SuperopKind::product_observable:
      return product_observable_superop(spec.alice_observable, spec.bob_observable);
    case SuperopKind::stabilizer_products:
      return stabilizer_superop(spec.generators, spec.alice_qubits);
  }
  throw std::invalid_argument("unknown superoperator kind");
}

DensityMatrix bob_marginal(const DensityMatrix& rho, const Matrix& alice_unitary,
                           const DecoherenceSuperop& s) {
  if (rho.dimension() != s.dimension()) throw std::invalid_argument("state/superoperator dimension mismatch");
  require_unitary(alice_unitary, s.dim_a(), "Alice's");
  return DensityMatrix(bob_marginal_raw(rho.matrix(), alice_unitary, s));
}

DensityMatrix alice_marginal(const DensityMatrix& rho, const Matrix& bob_unitary,
                             const DecoherenceSuperop& s) {
  if (rho.dimension() != s.dimension()) throw std::invalid_argument("state/superoperator dimension mismatch");
  require_unitary(bob_unitary, s.dim_b(), "Bob's");
  return DensityMatrix(alice_marginal_raw(rho.matrix(), bob_unitary, s));
}

std::string to_string(Direction d) { return d == Direction::a_to_b ? "a_to_b" : "b_to_a"; }

CausalityReport causality_check(const DecoherenceSuperop& s, const CausalityOptions& options) {
  const int qa = qubits_of(s.dim_a());
  const int qb = qubits_of(s.dim_b());
  const auto inputs = probe_states(qa + qb);

  CausalityReport report;
  for (const Direction dir : {Direction::a_to_b, Direction::b_to_a}) {
    const bool from_a = dir == Direction::a_to_b;
    const auto unitaries = probe_unitaries(from_a ? qa : qb, options, dir);
    double worst = 0.0;
    for (const auto& in : inputs) {
      const Matrix& id = unitaries.front().m;
      const Matrix reference =
          from_a ? bob_marginal_raw(in.m, id, s) : alice_marginal_raw(in.m, id, s);
      for (const auto& u : unitaries) {
        const Matrix marginal =
            from_a ? bob_marginal_raw(in.m, u.m, s) : alice_marginal_raw(in.m, u.m, s);
        const double d = trace_distance(marginal, reference);
        if (d > worst) worst = d;
        if (d > report.max_deviation) {
          report.max_deviation = d;
          if (d > options.tolerance)
            report.witness = Witness{DensityMatrix(in.m), in.label, u.m, u.label, dir, d};
        }
      }
    }
    if (from_a) {
      report.a_to_b_deviation = worst;
      report.a_to_b_causal = worst <= options.tolerance;
    } else {
      report.b_to_a_deviation = worst;
      report.b_to_a_causal = worst <= options.tolerance;
    }
  }
  return report;
}

Matrix random_unitary(Eigen::Index dim, RngStream& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
  }
  return q;
}

DensityMatrix pauli_twirl(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw std::invalid_argument("pauli_twirl needs a two-qubit state");
  Matrix out = Matrix::Zero(4, 4);
  for (const Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    const Matrix ss = kron(pauli_matrix(p), pauli_matrix(p));
    out += ss * rho.matrix() * ss;
  }
  return DensityMatrix(Matrix(out / 4.0));
}

}  // namespace qsync::causal
