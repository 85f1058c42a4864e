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

// Independent reference computations used to check the library. Nothing in
// here calls the routine it is meant to validate.

#pragma once

#include <random>
#include <vector>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/types.hpp"

namespace reachset::oracle {

/// Classical RK4 on ṙ = H r − R (r − r_eq) with a fixed step count.
Vec rk4(const Mat& h, const Mat& r, const Vec& r_eq, const Vec& r0, double t, int steps);

/// Dense 2^n x 2^n Pauli string built from Kronecker products.
CMat pauli_string(const std::string& label);

/// Tr(−B_k 𝓛(B_j)) / 2^n and Tr(B_k 𝓛(I)) / 4^n for a Liouvillian given as a
/// dense d² x d² column-stacking superoperator matrix.
struct BlochFromSuperop {
  Mat r;
  Vec v;
};
BlochFromSuperop bloch_from_superoperator(int n, const CMat& liouvillian);

/// Column-stacking superoperator of ρ ↦ LρL† − ½{L†L, ρ}.
CMat dissipator_superoperator(const CMat& jump);

/// max over unit u of (uᵀ R r_eq / uᵀ R u)², the squared radius of the
/// ellipsoid rᵀR(r − r_eq) = 0 along u, by projected gradient ascent with
/// `starts` random restarts. Returns the maximal value.
double purity_bound_multistart(const Mat& r, const Vec& r_eq, int starts, unsigned seed);

/// Haar-random unitary via QR of a complex Ginibre matrix.
CMat haar_unitary(int d, std::mt19937& rng);

/// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
Mat random_spd(int dim, double lo, double hi, std::mt19937& rng);

/// Random real antisymmetric matrix with entries of the given scale.
Mat random_antisymmetric(int dim, double scale, std::mt19937& rng);

/// Random physical density matrix (mixture of Haar-random pure states).
CMat random_density(int d, std::mt19937& rng);

/// Is `target` a nonnegative combination of `weights`-weighted directions?
/// Checks a claimed certificate |Σ w_k v_k − target| ≤ tol with w ≥ 0.
bool check_combination(const std::vector<Vec>& directions, const Vec& weights,
                       const Vec& target, double tol);

/// Sorted-permutation majorization: is `x` in the permutohedron of `spectrum`?
bool majorized(Vec x, Vec spectrum, double tol);

}  // namespace reachset::oracle
