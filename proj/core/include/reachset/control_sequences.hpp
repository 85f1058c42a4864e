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
#include <string>
#include <variant>
#include <vector>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/diag_projection.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset {

/// Instantaneous unitary.
struct GateStep {
  UnitaryRep rep;
  std::string name;
};

/// Free relaxation for tau seconds.
struct RelaxStep {
  double tau = 0.0;
};

using SequenceStep = std::variant<GateStep, RelaxStep>;

/// Steps in time order, repeated `repeat` times.
struct PeriodicSequence {
  std::vector<SequenceStep> steps;
  int repeat = 1;

  /// Throws ValidationError for empty sequences, negative τ, mismatched gate
  /// sizes or repeat < 1.
  void validate(int n) const;
  [[nodiscard]] double period() const;
};

/// Composition, in order, of the exact relaxation propagators and gate maps.
AffineMap one_period_map(const AffineGenerator& gen, const PeriodicSequence& seq);

struct FixedPointReport {
  CoherenceVector x_star;
  double spectral_radius = 0.0;
  /// κ of x_star against the target direction.
  double eta_eff = 0.0;
  /// Angle between x_star and the target direction, radians.
  double theta = 0.0;
  /// |map^500(r_eq) − x_star|.
  double iteration_residual = 0.0;
};

struct FixedPointOptions {
  /// Allowed |x* − κσ| / |x*| when reading off η_eff.
  double proportionality_tol = 0.1;
  int cross_check_iterations = 500;
};

/// x* = (I − M)⁻¹ c. Throws NoUniqueFixedPoint when I − M is singular.
FixedPointReport fixed_point(const AffineGenerator& gen, const PeriodicSequence& seq,
                             const CoherenceVector& target,
                             const FixedPointOptions& opts = {});

double spectral_radius(const Mat& m);

/// Angle between two coherence vectors (radians).
double angle_between(const Vec& a, const Vec& b);

enum class Spin { carbon, proton };

/// Steady state with every coordinate that involves the saturated spin
/// clamped to zero; the rest solve the free-evolution steady state.
/// For a two-qubit model this is (0, x₂, 0) when the first spin is saturated.
DiagonalVector noe_steady_state(const AffineGenerator& gen, Spin saturated);

/// Relaxation under saturation from the clamped equilibrium, sampled at
/// `times`, projected on the diagonal.
std::vector<DiagonalVector> noe_trajectory(const AffineGenerator& gen, Spin saturated,
                                           const std::vector<double>& times);

struct SequenceRecord {
  int period = 0;
  double time = 0.0;
  CoherenceVector state;
  double eta = 0.0;
  double theta = 0.0;
};

/// Iterates the period map from x0 for seq.repeat periods, recording x0 and
/// every `record_every`-th period end. η is the plain projection coefficient
/// on `target`; θ the angle to it.
std::vector<SequenceRecord> simulate_sequence(const AffineGenerator& gen,
                                              const PeriodicSequence& seq,
                                              const CoherenceVector& x0,
                                              const CoherenceVector& target,
                                              int record_every = 1);

namespace gates {

/// exp(−i θ/2 σ_axis) on one qubit (0 = first label position), axis ∈ {x,y,z}.
CMat rotation(int n, int qubit, char axis, double angle);
/// Free J evolution exp(−i π J t ZZ / 2) for two qubits.
CMat j_evolution(double j_hz, double t);
CMat hadamard(int n, int qubit);
CMat cnot(int n, int control, int target);

/// Diagonal permutation (x1,x2,x3) -> (x2,x3,x1): CNOT(2→1)·CNOT(1→2).
CMat cyclic_v();
/// Maps PPS to the pseudo-Bell state: CNOT(1→2)·(Hadamard on qubit 1).
CMat bell_w();

/// Pulse-level stand-in for V: each CNOT(c→t) is
/// R_x^t(π/2) · J-delay 1/(2J) · R_y^t(π/2), which equals CNOT up to diagonal
/// phases and so acts identically on diagonal states. Pulse angles on the
/// carbon (first) channel scale by (1+delta_c), proton channel by (1+delta_h).
CMat cyclic_v_pulses(double j_hz, double delta_c, double delta_h);

}  // namespace gates

/// Unit-η PPS direction (ZI + IZ + ZZ) / 4.
CoherenceVector pps_direction(const PauliBasis& basis);
/// W applied to the PPS direction.
CoherenceVector bell_direction(const PauliBasis& basis);

/// [τ − V] in time order: relax τ, then V.
PeriodicSequence pps_sequence(const PauliBasis& basis, double tau, int repeat,
                              const CMat& v);
/// [W − τ − V − Wᵀ] arranged so the period map is W ∘ map_PPS ∘ Wᵀ:
/// time order Wᵀ, relax τ, V, W.
PeriodicSequence bell_sequence(const PauliBasis& basis, double tau, int repeat,
                               const CMat& v, const CMat& w);

struct RobustnessCell {
  double delta_c = 0.0;
  double delta_h = 0.0;
  /// |ρ_real − ρ_ideal|_F / |ρ_ideal|_F on deviation parts; NaN on failure.
  double delta = 0.0;
  bool ok = true;
};

/// Relative fixed-point error of [τ − V(δ_C, δ_H)] against the ideal-pulse
/// fixed point, over the grid product. Cells where the map stops being
/// attracting are flagged, not thrown.
std::vector<RobustnessCell> robustness_sweep(const AffineGenerator& gen, double tau,
                                             double j_hz,
                                             const std::vector<double>& deltas_c,
                                             const std::vector<double>& deltas_h,
                                             int workers = 1);

}  // namespace reachset
