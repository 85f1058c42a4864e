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

namespace reachset {

/// Smallest origin-centred sphere rᵀr = radius_sq enclosing the ellipsoid
/// ṗ(r) = 0. No controlled trajectory started inside it can leave it.
struct PurityBound {
  int n = 0;
  double radius_sq = 0.0;
  CoherenceVector argmax;
  /// μ in ∇(rᵀr) = μ ∇(rᵀR(r − r_eq)) at the argmax.
  double lagrange_mult = 0.0;
  /// |argmaxᵀ R (argmax − r_eq)|.
  double solver_residual = 0.0;
};

/// Maximizes rᵀr subject to rᵀR(r − r_eq) = 0.
///
/// With R = LLᵀ and z = Lᵀr the constraint is the sphere |z − c| = |c|,
/// c = Lᵀr_eq / 2, so r = a + M y over unit vectors y with a = L⁻ᵀc and
/// M = |c| L⁻ᵀ. The global maximizer of |a + My|² on the unit sphere solves
/// (λI − MᵀM) y = Mᵀa for the largest admissible multiplier λ, found from the
/// secular equation Σ g_i² / (λ − w_i)² = 1 on (w_max, w_max + |g|].
///
/// Throws ContractivityViolation if R is not SPD. r_eq = 0 gives radius 0.
PurityBound max_purity_on_ellipsoid(const AffineGenerator& gen);

/// An origin-centred sphere meets any subspace through the origin in a
/// sphere of the same radius; returns bound.radius_sq.
double sphere_cross_section(const PurityBound& bound,
                            std::span<const int> subspace);

/// ±sqrt(radius_sq) on one coordinate axis.
struct AxisIntersection {
  int slot = 0;
  double plus = 0.0;
  double minus = 0.0;
};

/// Sphere/axis intersections on the diagonal axes.
std::vector<AxisIntersection> axis_intersections(const PurityBound& bound);

/// Nonzero intersection of the ellipsoid ṗ = 0 with coordinate axis `slot`:
/// t = (R r_eq)_slot / R_slot,slot.
double ellipsoid_axis_intersection(const AffineGenerator& gen, int slot);

}  // namespace reachset
