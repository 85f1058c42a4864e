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

#include <vector>

#include "reachset/pauli_space.hpp"

namespace reachset {

/// Spectra reachable from ρ by unitaries lie in the convex hull of all
/// permutations of ρ's eigenvalue deviations.
struct SpectrumPolytope {
  CoherenceVector source_state;
  /// Distinct permutations of the deviation spectrum (length 2^n each).
  std::vector<Vec> vertices;
  /// Deviation spectrum sorted descending.
  Vec spectrum;
};

/// max_U Tr(UρU† σ) / Tr(σ²) over deviation parts: the inner product of
/// both spectra sorted descending, divided by Tr(σ_dev²).
/// Throws ValidationError for σ = 0.
double kappa_unitary_max(const PauliBasis& basis, const CoherenceVector& rho,
                         const CoherenceVector& sigma);

/// Tr(UρU† σ) / Tr(σ²) for one unitary.
double kappa_unitary(const PauliBasis& basis, const CoherenceVector& rho,
                     const CoherenceVector& sigma, const CMat& u);

/// Least-squares κ with output ≈ κ σ. Throws ResidualTooLarge if
/// |output − κσ| > tol |output|, ValidationError for σ = 0.
double kappa_channel(const CoherenceVector& output, const CoherenceVector& sigma,
                     double tol);

SpectrumPolytope polytope_vertices(const PauliBasis& basis,
                                   const CoherenceVector& rho);

/// Largest t with t·d inside the polytope, for a diagonal deviation
/// direction d (length 2^n, zero sum). Uses majorization: t·d lies in the
/// permutohedron iff its sorted partial sums are dominated by the spectrum's.
double polytope_radius(const SpectrumPolytope& polytope, const Vec& direction);

/// Diagonal entries of I/2^n + Σ x_k Z-string_k minus 1/2^n, i.e. the
/// deviation spectrum of a diagonal coherence vector.
Vec diagonal_deviation(const PauliBasis& basis, const CoherenceVector& r);

}  // namespace reachset
