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
#include "reachset/cone.hpp"
#include "reachset/diag_projection.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset {

inline constexpr int kMaxPermutationQubits = 3;

/// The 2^n! permutations of the diagonal of ρ, as controls.
/// perms[k][i] is the image of basis state i.
struct PermutationControlSet {
  int n = 0;
  std::vector<std::vector<int>> perms;
  /// Action on DiagonalVector coordinates, (2^n−1)².
  std::vector<Mat> reps_diag;
  /// Action on coherence vectors, (4^n−1)². Empty unless requested.
  std::vector<UnitaryRep> reps_full;

  [[nodiscard]] std::size_t size() const { return perms.size(); }
  /// Index of the permutation whose diagonal rep equals `m`, or -1.
  [[nodiscard]] int find_diag(const Mat& m, double tol = 1e-12) const;
};

/// Permutation matrix P with P|i⟩ = |perm[i]⟩.
CMat permutation_matrix(std::span<const int> perm);

/// Throws SizeError for n outside [1, kMaxPermutationQubits]. Full reps cost
/// O(2^n! · 16^n); pass with_full_reps = false for n = 3.
PermutationControlSet build_permutation_set(const PauliBasis& basis,
                                            bool with_full_reps = true);

/// Projected dynamics of a whole control set, precomputed once per generator.
class ControlField {
 public:
  ControlField(const AffineGenerator& gen, const PermutationControlSet& set);

  [[nodiscard]] int dim() const { return static_cast<int>(controls_.front().b.size()); }
  [[nodiscard]] std::size_t size() const { return controls_.size(); }
  [[nodiscard]] const ProjectedControl& control(std::size_t k) const { return controls_[k]; }

  [[nodiscard]] std::vector<Vec> directions(const Vec& x) const;
  /// directions(x) without the fields that vanish to rounding, i.e. those of
  /// controls whose steady state is x. Both STLC tests use this set.
  [[nodiscard]] std::vector<Vec> active_directions(const Vec& x) const;

  /// Triple-product test when dim() == 3, LP test otherwise.
  [[nodiscard]] ConeVerdict stlc(const Vec& x) const;
  [[nodiscard]] ConeVerdict stlc_lp(const Vec& x) const;

 private:
  std::vector<ProjectedControl> controls_;
};

/// x_σ = (Σ μ_k A_k)⁻¹ (Σ μ_k b_k) over σ, with A_k = [Q_kᵀRQ_k]_d and
/// b_k = [Q_kᵀR r_eq]_d. Requires |σ| = 2^n − 1 and μ on the simplex.
/// Throws SingularCombination when the weighted matrix is singular.
DiagonalVector hypersurface_point(const ControlField& field,
                                  std::span<const int> sigma,
                                  std::span<const double> mu);

/// Deterministic simplex lattice with `subdivisions` steps per edge.
std::vector<std::vector<double>> simplex_lattice(int vertices, int subdivisions);

/// All lattice points of one hypersurface; singular points are skipped.
std::vector<DiagonalVector> hypersurface_mesh(const ControlField& field,
                                              std::span<const int> sigma,
                                              int subdivisions = 10);

struct RayOptions {
  /// Outward march step, in the units of x.
  double step = 0.05;
  /// Bisection tolerance on the radius.
  double tol = 1e-3;
  /// March abandons (NumericalError) past this radius.
  double max_radius = 1e3;
  int workers = 1;
};

/// Distance from `origin` to the first STLC exit along each unit direction:
/// march in fixed steps, then bisect the first STLC → non-STLC transition.
/// Throws OriginNotControllable if `origin` is not STLC.
std::vector<double> stlc_boundary_rays(const ControlField& field,
                                       const Vec& origin,
                                       std::span<const Vec> ray_dirs,
                                       const RayOptions& opts = {});

/// Deterministic quasi-uniform unit vectors in R³.
std::vector<Vec> fibonacci_sphere(int count);

}  // namespace reachset
