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

#include <array>
#include <string>
#include <vector>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset::chloroform {

/// Phenomenological relaxation model of the ¹³C–¹H pair under the secular
/// approximation, in the double rotating frame and ε-units (ε = 1).
///
/// The rate blocks are tabulated as d/dt v = [M] v with positive rates; taken
/// literally that is anti-stable. The listed rates are magnitudes: the
/// symmetric part of each block enters as ṙ = −R (r − r_eq), and the ±πJ
/// entries are the coherent part H generated by H_S = (πJ/2) ZZ.
struct RateSet {
  /// r1..r14 in 1/s (rates[0] is r1).
  std::array<double, 14> rates{};
  double j_hz = 0.0;
  double eps_c = 1.0;
  double eps_h = 4.0;

  [[nodiscard]] double r(int k) const { return rates.at(static_cast<std::size_t>(k - 1)); }
  double& r(int k) { return rates.at(static_cast<std::size_t>(k - 1)); }

  /// Fitted values at room temperature, J = 214.5 Hz.
  static RateSet defaults();
};

enum class Block { population, carbon_coherence, proton_coherence, zero_double };

struct SecularBlock {
  Block block;
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> slots;
  /// Rate indices (1-based) that parameterize this block.
  std::vector<int> rate_ids;
};

/// The four coherence-order blocks; slots partition all 15 coordinates.
std::vector<SecularBlock> secular_blocks();
const SecularBlock& secular_block(Block b);
Block block_from_name(const std::string& name);

/// Symmetric relaxation matrix (15 x 15) of a rate set.
Mat relaxation_matrix(const RateSet& rates);

/// Coherent part from the ±πJ block entries.
Mat coupling_matrix(const RateSet& rates);

/// Assembles (H, R, r_eq). r_eq comes from the population-block drive
/// column; it must equal (ε_C, ε_H, 0) on (ZI, IZ, ZZ). The coupling part
/// must match lindblad_to_bloch of (πJ/2) ZZ within 1e-9 (ModelError).
/// Throws ContractivityViolation if R is not SPD.
AffineGenerator assemble_generator(const RateSet& rates);

/// Population-block drive column as tabulated (including the 1/4 entry),
/// entries −4(r_k,ZI ε_C + r_k,IZ ε_H) for k = ZI, IZ, ZZ.
Vec population_drive_column(const RateSet& rates);

/// Sampled expectation values r_k(t) on a subset of labels.
struct TrajectorySample {
  std::vector<double> times;
  std::vector<std::string> labels;
  /// values[t][j] is label j at times[t].
  std::vector<std::vector<double>> values;
  /// Full initial coherence vector; when empty, the first row (with all other
  /// coordinates zero) is taken as the initial state.
  Vec initial;
};

/// Exact trajectory of `gen` sampled at `times` on `labels`.
TrajectorySample simulate_trajectory(const AffineGenerator& gen,
                                     const Vec& initial,
                                     const std::vector<double>& times,
                                     const std::vector<std::string>& labels);

struct FitOptions {
  int restarts = 6;
  /// Nelder–Mead stops when the simplex objective spread falls below this.
  double objective_tol = 1e-10;
  int max_evaluations = 200000;
  unsigned seed = 7;
};

struct FitResult {
  RateSet rates;
  double rms_residual = 0.0;
  double objective = 0.0;
  int evaluations = 0;
};

/// Least-squares fit of one block's rates to observed trajectories, all other
/// rates held at `init_guess`. Derivative-free Nelder–Mead with restarts.
/// Throws RankDeficient when the data cannot determine the free rates.
FitResult fit_rates(const std::vector<TrajectorySample>& trajectories,
                    Block block, const RateSet& init_guess,
                    const FitOptions& opts = {});

}  // namespace reachset::chloroform
