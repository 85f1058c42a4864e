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

#include <optional>
#include <span>

#include "reachset/types.hpp"

namespace reachset {

/// Whether the conical hull of a set of directions is the whole space.
/// When it is not, `witness` is a unit normal with witness·v_k <= 0 for every
/// input direction.
struct ConeVerdict {
  bool is_full = false;
  std::optional<Vec> witness;
};

/// Triple-product test in R³: for every linearly independent pair (i, j),
/// the signs of (v_i × v_j)·v_k over k ≠ i, j must not all agree.
/// Pairs with |v_i × v_j| <= 1e-12 |v_i||v_j| span no plane and are skipped.
/// A sign test counts c_k as nonnegative when c_k >= −1e-12 |v_i × v_j||v_k|,
/// so states where the cone is only closed (boundary) come out not full.
ConeVerdict stlc_test_3d(std::span<const Eigen::Vector3d> directions);

/// Any dimension: the cone is full iff each ±e_i is a conical combination of
/// the directions. Each check is a phase-one simplex; an infeasible check
/// yields its Farkas certificate as the witness.
ConeVerdict stlc_test_lp(std::span<const Vec> directions);

/// Σ λ_k v_k = target with λ >= 0 (columns of `directions` are the v_k).
struct ConicFeasibility {
  bool feasible = false;
  Vec weights;
  /// When infeasible: y with yᵀv_k <= 0 for all k and yᵀtarget > 0.
  Vec certificate;
};

ConicFeasibility conic_feasibility(const Mat& directions, const Vec& target);

}  // namespace reachset
