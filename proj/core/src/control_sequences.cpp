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

#include "reachset/control_sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "reachset/errors.hpp"
#include "reachset/parallel.hpp"
#include "reachset/unitary_bound.hpp"

namespace reachset {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec solve_fixed_point(const AffineMap& map) {
  const auto dim = map.linear.rows();
  const Mat lhs = Mat::Identity(dim, dim) - map.linear;
  Eigen::FullPivLU<Mat> lu(lhs);
  if (!lu.isInvertible() || lu.rcond() < 1e-12) {
    throw NoUniqueFixedPoint("I - M is singular: the period map has no unique fixed point");
  }
  return lu.solve(map.offset);
}

int spin_qubit(int n, Spin s) {
  const int q = s == Spin::carbon ? 0 : 1;
  if (q >= n) throw ValidationError("saturated spin is not part of the model");
  return q;
}

// Coordinates whose label is the identity on qubit q.
std::vector<int> untouched_slots(int n, int q) {
  const PauliBasis basis = PauliBasis::build(n);
  std::vector<int> out;
  for (int k = 1; k < basis.size(); ++k) {
    if (basis.label(k)[static_cast<std::size_t>(q)] == 'I') out.push_back(k - 1);
  }
  return out;
}

// Restricted affine system on the unclamped coordinates.
struct ClampedSystem {
  std::vector<int> slots;
  Mat a;
  Vec v;
  Vec x_star;
};

ClampedSystem clamp(const AffineGenerator& gen, Spin saturated) {
  ClampedSystem s;
  s.slots = untouched_slots(gen.qubits(), spin_qubit(gen.qubits(), saturated));
  const Mat full = gen.hamiltonian() - gen.relaxation();
  s.a = restrict_matrix(full, s.slots);
  s.v = restrict_vector(gen.drive(), s.slots);
  Eigen::FullPivLU<Mat> lu(s.a);
  if (!lu.isInvertible()) throw FixedPointUndefined("clamped dynamics have no unique steady state");
  s.x_star = lu.solve(-s.v);
  return s;
}

DiagonalVector diagonal_of(int n, const std::vector<int>& slots, const Vec& x) {
  CoherenceVector full = CoherenceVector::zero(n);
  for (std::size_t i = 0; i < slots.size(); ++i) full.r(slots[i]) = x(static_cast<Eigen::Index>(i));
  return restrict_to_diagonal(full);
}

CMat embed_single(int n, int qubit, const Eigen::Matrix2cd& op) {
  CMat out = CMat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const CMat factor = q == qubit ? CMat(op) : CMat(CMat::Identity(2, 2));
    CMat next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * factor;
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

void PeriodicSequence::validate(int n) const {
  if (steps.empty()) throw ValidationError("sequence has no steps");
  if (repeat < 1) throw ValidationError("repeat must be at least 1");
  const Eigen::Index dim = (Eigen::Index{1} << (2 * n)) - 1;
  for (const auto& step : steps) {
    std::visit(overloaded{
                   [&](const GateStep& g) {
                     if (g.rep.n != n || g.rep.m.rows() != dim || g.rep.m.cols() != dim) {
                       throw ValidationError("gate '" + g.name + "' does not match the system size");
                     }
                   },
                   [](const RelaxStep& r) {
                     if (!(r.tau >= 0.0) || !std::isfinite(r.tau)) {
                       throw ValidationError("relaxation time must be finite and nonnegative");
                     }
                   },
               },
               step);
  }
}

double PeriodicSequence::period() const {
  double total = 0.0;
  for (const auto& step : steps) {
    if (const auto* r = std::get_if<RelaxStep>(&step)) total += r->tau;
  }
  return total;
}

AffineMap one_period_map(const AffineGenerator& gen, const PeriodicSequence& seq) {
  seq.validate(gen.qubits());
  AffineMap map = AffineMap::identity(gen.dim());
  for (const auto& step : seq.steps) {
    const AffineMap next = std::visit(
        overloaded{
            [&](const GateStep& g) { return AffineMap{g.rep.m, Vec::Zero(gen.dim())}; },
            [&](const RelaxStep& r) { return propagator(gen, r.tau); },
        },
        step);
    map = next.after(map);
  }
  return map;
}

double spectral_radius(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<Mat> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double angle_between(const Vec& a, const Vec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw ValidationError("angle with a zero vector is undefined");
  return std::acos(std::clamp(a.dot(b) / (na * nb), -1.0, 1.0));
}

FixedPointReport fixed_point(const AffineGenerator& gen, const PeriodicSequence& seq,
                             const CoherenceVector& target, const FixedPointOptions& opts) {
  if (target.r.size() != gen.dim()) throw ValidationError("target size mismatch");
  const AffineMap map = one_period_map(gen, seq);
  FixedPointReport rep;
  rep.x_star = {gen.qubits(), solve_fixed_point(map)};
  rep.spectral_radius = spectral_radius(map.linear);
  Vec x = gen.equilibrium();
  for (int k = 0; k < opts.cross_check_iterations; ++k) x = map.apply(x);
  rep.iteration_residual = (x - rep.x_star.r).norm();
  rep.eta_eff = kappa_channel(rep.x_star, target, opts.proportionality_tol);
  rep.theta = angle_between(rep.x_star.r, target.r);
  return rep;
}

DiagonalVector noe_steady_state(const AffineGenerator& gen, Spin saturated) {
  const ClampedSystem s = clamp(gen, saturated);
  return diagonal_of(gen.qubits(), s.slots, s.x_star);
}

std::vector<DiagonalVector> noe_trajectory(const AffineGenerator& gen, Spin saturated,
                                           const std::vector<double>& times) {
  const ClampedSystem s = clamp(gen, saturated);
  const Vec x0 = restrict_vector(gen.equilibrium(), s.slots);
  std::vector<DiagonalVector> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw ValidationError("times must be nonnegative");
    const Vec x = s.x_star + Mat(s.a * t).exp() * (x0 - s.x_star);
    out.push_back(diagonal_of(gen.qubits(), s.slots, x));
  }
  return out;
}

std::vector<SequenceRecord> simulate_sequence(const AffineGenerator& gen,
                                              const PeriodicSequence& seq,
                                              const CoherenceVector& x0,
                                              const CoherenceVector& target, int record_every) {
  if (record_every < 1) throw ValidationError("record_every must be positive");
  if (x0.r.size() != gen.dim() || target.r.size() != gen.dim()) {
    throw ValidationError("state size mismatch");
  }
  const double target_sq = target.r.squaredNorm();
  if (!(target_sq > 0.0)) throw ValidationError("target direction is zero");
  const AffineMap map = one_period_map(gen, seq);
  const double period = seq.period();

  auto record = [&](int m, const Vec& x) {
    SequenceRecord r;
    r.period = m;
    r.time = m * period;
    r.state = {gen.qubits(), x};
    r.eta = x.dot(target.r) / target_sq;
    r.theta = x.norm() > 0.0 ? angle_between(x, target.r) : 0.0;
    return r;
  };
  std::vector<SequenceRecord> out{record(0, x0.r)};
  Vec x = x0.r;
  for (int m = 1; m <= seq.repeat; ++m) {
    x = map.apply(x);
    if (m % record_every == 0 || m == seq.repeat) out.push_back(record(m, x));
  }
  return out;
}

namespace gates {

CMat rotation(int n, int qubit, char axis, double angle) {
  if (qubit < 0 || qubit >= n) throw ValidationError("rotation qubit out of range");
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd r;
  switch (axis) {
    case 'x':
      r << c, -i * s, -i * s, c;
      break;
    case 'y':
      r << c, -s, s, c;
      break;
    case 'z':
      r << std::exp(-i * (angle / 2.0)), 0.0, 0.0, std::exp(i * (angle / 2.0));
      break;
    default:
      throw ValidationError(std::string("unknown rotation axis '") + axis + "'");
  }
  return embed_single(n, qubit, r);
}

CMat j_evolution(double j_hz, double t) {
  const double phase = std::numbers::pi * j_hz * t / 2.0;
  const Complex i(0.0, 1.0);
  CMat u = CMat::Zero(4, 4);
  // ZZ eigenvalues on |00>, |01>, |10>, |11>
  const double zz[4] = {1.0, -1.0, -1.0, 1.0};
  for (int k = 0; k < 4; ++k) u(k, k) = std::exp(-i * phase * zz[k]);
  return u;
}

CMat hadamard(int n, int qubit) {
  if (qubit < 0 || qubit >= n) throw ValidationError("hadamard qubit out of range");
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  return embed_single(n, qubit, h / std::sqrt(2.0));
}

CMat cnot(int n, int control, int target) {
  if (control == target || control < 0 || target < 0 || control >= n || target >= n) {
    throw ValidationError("invalid CNOT qubits");
  }
  const int d = 1 << n;
  const int cbit = 1 << (n - 1 - control);
  const int tbit = 1 << (n - 1 - target);
  CMat u = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) u((i & cbit) ? (i ^ tbit) : i, i) = 1.0;
  return u;
}

CMat cyclic_v() { return cnot(2, 1, 0) * cnot(2, 0, 1); }

CMat bell_w() { return cnot(2, 0, 1) * hadamard(2, 0); }

CMat cyclic_v_pulses(double j_hz, double delta_c, double delta_h) {
  if (!(j_hz > 0.0)) throw ValidationError("J must be positive");
  const double half_pi = std::numbers::pi / 2.0;
  const double scale[2] = {1.0 + delta_c, 1.0 + delta_h};
  const CMat delay = j_evolution(j_hz, 1.0 / (2.0 * j_hz));
  auto pulsed_cnot = [&](int target) {
    const double a = half_pi * scale[target];
    return CMat(rotation(2, target, 'x', a) * delay * rotation(2, target, 'y', a));
  };
  // CNOT(1→2) first, then CNOT(2→1).
  return pulsed_cnot(0) * pulsed_cnot(1);
}

}  // namespace gates

CoherenceVector pps_direction(const PauliBasis& basis) {
  CoherenceVector v = CoherenceVector::zero(basis.qubits());
  for (int k = 1; k < basis.size(); ++k) {
    const auto& label = basis.label(k);
    if (label.find_first_not_of("IZ") == std::string::npos) v.r(k - 1) = 1.0 / basis.dim();
  }
  return v;
}

CoherenceVector bell_direction(const PauliBasis& basis) {
  if (basis.qubits() != 2) throw ValidationError("Bell direction is defined for two qubits");
  return unitary_rep(basis, gates::bell_w()).apply(pps_direction(basis));
}

PeriodicSequence pps_sequence(const PauliBasis& basis, double tau, int repeat, const CMat& v) {
  PeriodicSequence seq;
  seq.steps = {RelaxStep{tau}, GateStep{unitary_rep(basis, v), "V"}};
  seq.repeat = repeat;
  seq.validate(basis.qubits());
  return seq;
}

PeriodicSequence bell_sequence(const PauliBasis& basis, double tau, int repeat, const CMat& v,
                               const CMat& w) {
  PeriodicSequence seq;
  seq.steps = {GateStep{unitary_rep(basis, w.adjoint()), "W^T"}, RelaxStep{tau},
               GateStep{unitary_rep(basis, v), "V"}, GateStep{unitary_rep(basis, w), "W"}};
  seq.repeat = repeat;
  seq.validate(basis.qubits());
  return seq;
}

std::vector<RobustnessCell> robustness_sweep(const AffineGenerator& gen, double tau, double j_hz,
                                             const std::vector<double>& deltas_c,
                                             const std::vector<double>& deltas_h, int workers) {
  if (gen.qubits() != 2) throw ValidationError("robustness sweep is defined for two qubits");
  for (double d : deltas_c) {
    if (!std::isfinite(d)) throw ValidationError("grid values must be finite");
  }
  for (double d : deltas_h) {
    if (!std::isfinite(d)) throw ValidationError("grid values must be finite");
  }
  const PauliBasis basis = PauliBasis::build(2);
  const Vec ideal = solve_fixed_point(one_period_map(gen, pps_sequence(basis, tau, 1, gates::cyclic_v())));
  const double ideal_norm = ideal.norm();

  std::vector<RobustnessCell> cells(deltas_c.size() * deltas_h.size());
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    RobustnessCell& cell = cells[idx];
    cell.delta_c = deltas_c[idx / deltas_h.size()];
    cell.delta_h = deltas_h[idx % deltas_h.size()];
    try {
      const CMat v = gates::cyclic_v_pulses(j_hz, cell.delta_c, cell.delta_h);
      const AffineMap map = one_period_map(gen, pps_sequence(basis, tau, 1, v));
      if (spectral_radius(map.linear) >= 1.0) throw NoUniqueFixedPoint("map is not attracting");
      cell.delta = (solve_fixed_point(map) - ideal).norm() / ideal_norm;
    } catch (const NumericalError&) {
      cell.ok = false;
      cell.delta = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return cells;
}

}  // namespace reachset
