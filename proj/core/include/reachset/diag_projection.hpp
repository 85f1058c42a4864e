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

#include <span>
#include <vector>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset {

/// Coordinates of a diagonal state on the {I,Z}^{⊗n} operators minus the
/// identity. Ordering: Z-support subsets by size, then lexicographically by
/// qubit index, e.g. (ZI, IZ, ZZ) for two qubits and
/// (ZII, IZI, IIZ, ZZI, ZIZ, IZZ, ZZZ) for three.
struct DiagonalVector {
  int n = 0;
  Vec x;
};

/// Coherence-vector indices of the diagonal coordinates, in DiagonalVector
/// order. Length 2^n − 1.
std::vector<int> diag_slots(int n);

/// Labels matching diag_slots(n).
std::vector<std::string> diag_labels(int n);

/// Place x on the diagonal slots of an otherwise zero coherence vector.
CoherenceVector embed(const DiagonalVector& x);
/// Keep only the diagonal slots.
DiagonalVector restrict_to_diagonal(const CoherenceVector& r);

/// Restriction of a full-space matrix to the diagonal slots (rows and cols).
Mat restrict_matrix(const Mat& m, std::span<const int> slots);
Vec restrict_vector(const Vec& v, std::span<const int> slots);

/// Projected dynamics of one fixed control U:
///   ẋ = −[UᵀRU]_d x + [UᵀR r_eq]_d = −a x + b.
struct ProjectedControl {
  Mat a;
  Vec b;

  [[nodiscard]] Vec field(const Vec& x) const { return -a * x + b; }
};

ProjectedControl project_control(const AffineGenerator& gen,
                                 const UnitaryRep& control);

DiagonalVector projected_field(const AffineGenerator& gen,
                               const UnitaryRep& control,
                               const DiagonalVector& x);

/// One direction per control, same order, duplicates kept.
std::vector<DiagonalVector> direction_set(const AffineGenerator& gen,
                                          std::span<const UnitaryRep> controls,
                                          const DiagonalVector& x);

}  // namespace reachset
