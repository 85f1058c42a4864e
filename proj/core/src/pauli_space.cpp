// Copyright 2026 The reachset Authors
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

#include "reachset/pauli_space.hpp"

#include <array>
#include <cmath>
#include <string>

#include "reachset/errors.hpp"

namespace reachset {
namespace {

constexpr std::array<char, 4> kLetters = {'I', 'X', 'Y', 'Z'};
constexpr double kInputTol = 1e-10;

struct SingleQubit {
  std::array<int, 2> cols;
  std::array<Complex, 2> phases;
};

// Row a of each Pauli has one nonzero at column cols[a] with value phases[a].
const std::array<SingleQubit, 4>& single_qubit_table() {
  static const std::array<SingleQubit, 4> table = {{
      {{0, 1}, {Complex(1, 0), Complex(1, 0)}},    // I
      {{1, 0}, {Complex(1, 0), Complex(1, 0)}},    // X
      {{1, 0}, {Complex(0, -1), Complex(0, 1)}},   // Y
      {{0, 1}, {Complex(1, 0), Complex(-1, 0)}},   // Z
  }};
  return table;
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

PauliBasis PauliBasis::build(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw SizeError("qubit count " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxQubits) + "]");
  }
  PauliBasis basis;
  basis.n_ = n;
  basis.dim_ = 1 << n;
  const int count = 1 << (2 * n);
  basis.labels_.reserve(count);
  basis.cols_.assign(count, std::vector<int>(basis.dim_));
  basis.phases_.assign(count, std::vector<Complex>(basis.dim_));

  const auto& table = single_qubit_table();
  for (int k = 0; k < count; ++k) {
    // Base-4 digits of k, first qubit most significant.
    std::vector<int> digits(n);
    for (int q = n - 1, rem = k; q >= 0; --q, rem /= 4) digits[q] = rem % 4;

    std::string label;
    for (int d : digits) label.push_back(kLetters[d]);
    basis.labels_.push_back(std::move(label));

    for (int row = 0; row < basis.dim_; ++row) {
      int col = 0;
      Complex phase(1, 0);
      for (int q = 0; q < n; ++q) {
        const int bit = (row >> (n - 1 - q)) & 1;
        const auto& op = table[digits[q]];
        col = (col << 1) | op.cols[bit];
        phase *= op.phases[bit];
      }
      basis.cols_[k][row] = col;
      basis.phases_[k][row] = phase;
    }
  }
  return basis;
}

int PauliBasis::index_of(std::string_view label) const {
  if (static_cast<int>(label.size()) != n_) {
    throw ValidationError("label '" + std::string(label) + "' has wrong length for n=" +
                          std::to_string(n_));
  }
  int k = 0;
  for (char c : label) {
    int d = -1;
    for (int i = 0; i < 4; ++i) {
      if (kLetters[i] == c) d = i;
    }
    if (d < 0) throw ValidationError("invalid Pauli label '" + std::string(label) + "'");
    k = 4 * k + d;
  }
  return k;
}

int PauliBasis::coherence_index(std::string_view label) const {
  const int k = index_of(label);
  if (k == 0) throw ValidationError("identity has no coherence coordinate");
  return k - 1;
}

CMat PauliBasis::matrix(int k) const {
  CMat m = CMat::Zero(dim_, dim_);
  for (int row = 0; row < dim_; ++row) m(row, cols_[k][row]) = phases_[k][row];
  return m;
}

Complex PauliBasis::trace_with(int k, const CMat& x) const {
  Complex acc(0, 0);
  for (int row = 0; row < dim_; ++row) acc += phases_[k][row] * x(cols_[k][row], row);
  return acc;
}

CoherenceVector CoherenceVector::zero(int n) {
  return {n, Vec::Zero((1 << (2 * n)) - 1)};
}

CoherenceVector UnitaryRep::apply(const CoherenceVector& v) const {
  if (v.n != n || v.r.size() != m.cols()) {
    throw ValidationError("unitary rep and coherence vector sizes differ");
  }
  return {n, m * v.r};
}

UnitaryRep UnitaryRep::identity(int n) {
  const int d = (1 << (2 * n)) - 1;
  return {n, Mat::Identity(d, d)};
}

CoherenceVector encode(const PauliBasis& basis, const CMat& rho) {
  const int d = basis.dim();
  if (rho.rows() != d || rho.cols() != d) {
    throw ValidationError("density matrix must be " + std::to_string(d) + "x" +
                          std::to_string(d));
  }
  if (max_abs(rho - rho.adjoint()) > kInputTol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1, 0)) > kInputTol) {
    throw ValidationError("density matrix trace differs from 1");
  }
  CoherenceVector v{basis.qubits(), Vec(basis.coherence_dim())};
  for (int k = 1; k < basis.size(); ++k) {
    v.r(k - 1) = basis.trace_with(k, rho).real() / d;
  }
  return v;
}

CMat decode(const PauliBasis& basis, const CoherenceVector& v) {
  if (v.n != basis.qubits() || v.r.size() != basis.coherence_dim()) {
    throw ValidationError("coherence vector length " + std::to_string(v.r.size()) +
                          " does not match n=" + std::to_string(basis.qubits()));
  }
  const int d = basis.dim();
  CMat rho = CMat::Identity(d, d) / static_cast<double>(d);
  for (int k = 1; k < basis.size(); ++k) {
    if (v.r(k - 1) != 0.0) rho += v.r(k - 1) * basis.matrix(k);
  }
  return rho;
}

UnitaryRep unitary_rep(const PauliBasis& basis, const CMat& u) {
  const int d = basis.dim();
  if (u.rows() != d || u.cols() != d) {
    throw ValidationError("unitary must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (max_abs(u.adjoint() * u - CMat::Identity(d, d)) > kInputTol) {
    throw ValidationError("matrix is not unitary");
  }
  const int m = basis.coherence_dim();
  UnitaryRep rep{basis.qubits(), Mat(m, m)};
  const CMat u_adj = u.adjoint();
  for (int j = 1; j < basis.size(); ++j) {
    const CMat conj = u * basis.matrix(j) * u_adj;
    for (int k = 1; k < basis.size(); ++k) {
      rep.m(k - 1, j - 1) = basis.trace_with(k, conj).real() / d;
    }
  }
  return rep;
}

CoherenceVector coherence_from_terms(
    const PauliBasis& basis, const std::vector<std::pair<std::string, double>>& terms) {
  auto v = CoherenceVector::zero(basis.qubits());
  for (const auto& [label, value] : terms) v.r(basis.coherence_index(label)) += value;
  return v;
}

}  // namespace reachset
