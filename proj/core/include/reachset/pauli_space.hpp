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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "reachset/types.hpp"

namespace reachset {

inline constexpr int kMaxQubits = 4;

/// Generalized Pauli basis {I,X,Y,Z}^{⊗n}, ordered lexicographically with I
/// first, so index 0 is the identity. Normalization: Tr(B_k B_j) / 2^n = δ_kj.
///
/// Each basis operator has exactly one nonzero entry per row, stored as a
/// column index plus a phase in {±1, ±i}; traces against it cost O(2^n).
class PauliBasis {
 public:
  /// Throws SizeError unless 1 <= n <= kMaxQubits.
  static PauliBasis build(int n);

  [[nodiscard]] int qubits() const { return n_; }
  /// Hilbert-space dimension 2^n.
  [[nodiscard]] int dim() const { return dim_; }
  /// Number of basis operators 4^n (identity included).
  [[nodiscard]] int size() const { return static_cast<int>(labels_.size()); }
  /// Length of a coherence vector, 4^n - 1.
  [[nodiscard]] int coherence_dim() const { return size() - 1; }

  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(int k) const { return labels_.at(k); }

  /// Basis index of a label such as "ZI"; throws ValidationError if unknown.
  [[nodiscard]] int index_of(std::string_view label) const;
  /// Index into a coherence vector (basis index minus one).
  [[nodiscard]] int coherence_index(std::string_view label) const;

  /// Dense 2^n x 2^n matrix of B_k.
  [[nodiscard]] CMat matrix(int k) const;

  /// Tr(B_k X) exploiting the one-entry-per-row structure.
  [[nodiscard]] Complex trace_with(int k, const CMat& x) const;

 private:
  PauliBasis() = default;

  int n_ = 0;
  int dim_ = 0;
  std::vector<std::string> labels_;
  // cols_[k][a] is the column of the single nonzero in row a of B_k.
  std::vector<std::vector<int>> cols_;
  std::vector<std::vector<Complex>> phases_;
};

/// Traceless part of a density matrix, normalized as
/// r_k = Tr(ρ B_k) / 2^n, so ρ = I/2^n + Σ_k r_k B_k.
struct CoherenceVector {
  int n = 0;
  Vec r;

  static CoherenceVector zero(int n);
};

/// Orthogonal (4^n-1)^2 matrix of the adjoint action ρ -> UρU† on coherence
/// vectors, entries Tr(B_k U B_j U†) / 2^n.
struct UnitaryRep {
  int n = 0;
  Mat m;

  [[nodiscard]] CoherenceVector apply(const CoherenceVector& v) const;
  static UnitaryRep identity(int n);
};

/// ρ must be Hermitian with unit trace (tolerance 1e-10), else ValidationError.
CoherenceVector encode(const PauliBasis& basis, const CMat& rho);

/// Inverse of encode. Throws ValidationError on a length mismatch.
CMat decode(const PauliBasis& basis, const CoherenceVector& v);

/// U must be unitary (U†U = I within 1e-10), else ValidationError.
UnitaryRep unitary_rep(const PauliBasis& basis, const CMat& u);

/// Convenience for writing states like "II/4 + ε ZI": sets the coefficient
/// of one label in a zero vector.
CoherenceVector coherence_from_terms(
    const PauliBasis& basis,
    const std::vector<std::pair<std::string, double>>& terms);

}  // namespace reachset
