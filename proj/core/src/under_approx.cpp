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

#include "reachset/under_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <string>

#include "reachset/errors.hpp"
#include "reachset/parallel.hpp"

namespace reachset {
namespace {

// Value of the diagonal Z-string with qubit support `mask` on basis state i.
// Bit q of mask (from the left) is qubit q.
double z_value(int n, int mask, int state) {
  int parity = 0;
  for (int q = 0; q < n; ++q) {
    if ((mask >> (n - 1 - q)) & 1) parity ^= (state >> (n - 1 - q)) & 1;
  }
  return parity ? -1.0 : 1.0;
}

// Qubit-support masks in DiagonalVector order.
std::vector<int> diag_masks(int n) {
  std::vector<int> masks;
  for (const auto& label : diag_labels(n)) {
    int mask = 0;
    for (char c : label) mask = (mask << 1) | (c == 'Z' ? 1 : 0);
    masks.push_back(mask);
  }
  return masks;
}

}  // namespace

CMat permutation_matrix(std::span<const int> perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  CMat p = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

int PermutationControlSet::find_diag(const Mat& m, double tol) const {
  for (std::size_t k = 0; k < reps_diag.size(); ++k) {
    if (reps_diag[k].rows() == m.rows() && (reps_diag[k] - m).cwiseAbs().maxCoeff() <= tol) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

PermutationControlSet build_permutation_set(const PauliBasis& basis, bool with_full_reps) {
  const int n = basis.qubits();
  if (n < 1 || n > kMaxPermutationQubits) {
    throw SizeError("permutation control set limited to n <= " +
                    std::to_string(kMaxPermutationQubits));
  }
  const int d = basis.dim();
  const auto masks = diag_masks(n);
  const auto m = static_cast<Eigen::Index>(masks.size());

  PermutationControlSet set;
  set.n = n;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Q_d[k][j] = 2^-n Σ_i z_k(p(i)) z_j(i)
    Mat rep(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::Index j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
          acc += z_value(n, masks[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(i)]) *
                 z_value(n, masks[static_cast<std::size_t>(j)], i);
        }
        rep(k, j) = acc / d;
      }
    }
    set.perms.push_back(perm);
    set.reps_diag.push_back(std::move(rep));
    if (with_full_reps) set.reps_full.push_back(unitary_rep(basis, permutation_matrix(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return set;
}

ControlField::ControlField(const AffineGenerator& gen, const PermutationControlSet& set) {
  if (gen.qubits() != set.n) throw ValidationError("control set and generator sizes differ");
  if (set.perms.empty()) throw ValidationError("empty control set");
  // Permutations keep diagonal and off-diagonal operators apart, so the full
  // conjugation restricted to the diagonal slots is Q_dᵀ R_dd Q_d.
  const auto slots = diag_slots(gen.qubits());
  const Mat r_dd = restrict_matrix(gen.relaxation(), slots);
  const Vec drive_d = restrict_vector(gen.drive(), slots);
  controls_.reserve(set.size());
  for (const auto& q : set.reps_diag) {
    controls_.push_back({q.transpose() * r_dd * q, q.transpose() * drive_d});
  }
}

std::vector<Vec> ControlField::directions(const Vec& x) const {
  if (x.size() != dim()) throw ValidationError("state dimension mismatch");
  std::vector<Vec> out;
  out.reserve(controls_.size());
  for (const auto& c : controls_) out.push_back(c.field(x));
  return out;
}

std::vector<Vec> ControlField::active_directions(const Vec& x) const {
  if (x.size() != dim()) throw ValidationError("state dimension mismatch");
  std::vector<Vec> out;
  out.reserve(controls_.size());
  for (const auto& c : controls_) {
    const Vec ax = c.a * x;
    const Vec v = c.b - ax;
    // At a control's own steady state the field is pure cancellation noise.
    if (v.norm() > 1e-12 * (ax.norm() + c.b.norm())) out.push_back(v);
  }
  return out;
}

ConeVerdict ControlField::stlc(const Vec& x) const {
  if (dim() != 3) return stlc_lp(x);
  const auto active = active_directions(x);
  if (active.empty()) return {false, Vec::Unit(dim(), 0)};
  std::vector<Eigen::Vector3d> dirs(active.begin(), active.end());
  return stlc_test_3d(dirs);
}

ConeVerdict ControlField::stlc_lp(const Vec& x) const {
  const auto active = active_directions(x);
  if (active.empty()) return {false, Vec::Unit(dim(), 0)};
  return stlc_test_lp(active);
}

DiagonalVector hypersurface_point(const ControlField& field, std::span<const int> sigma,
                                  std::span<const double> mu) {
  const int m = field.dim();
  if (static_cast<int>(sigma.size()) != m) {
    throw ValidationError("sigma must have 2^n - 1 = " + std::to_string(m) + " elements");
  }
  if (mu.size() != sigma.size()) throw ValidationError("mu and sigma differ in length");
  double total = 0.0;
  for (double w : mu) {
    if (!(w >= -1e-14)) throw ValidationError("simplex weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("simplex weights must sum to 1");

  Mat a = Mat::Zero(m, m);
  Vec b = Vec::Zero(m);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const int k = sigma[i];
    if (k < 0 || static_cast<std::size_t>(k) >= field.size()) {
      throw ValidationError("control index out of range");
    }
    a += mu[i] * field.control(static_cast<std::size_t>(k)).a;
    b += mu[i] * field.control(static_cast<std::size_t>(k)).b;
  }
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible() || lu.rcond() < 1e-13) {
    throw SingularCombination("weighted relaxation matrix is singular");
  }
  // n is recovered from the dimension 2^n - 1.
  int n = 0;
  while ((1 << n) - 1 < m) ++n;
  return {n, lu.solve(b)};
}

std::vector<std::vector<double>> simplex_lattice(int vertices, int subdivisions) {
  if (vertices < 1 || subdivisions < 1) throw ValidationError("invalid simplex lattice size");
  std::vector<std::vector<double>> points;
  std::vector<int> counts(static_cast<std::size_t>(vertices), 0);
  // Enumerate compositions of `subdivisions` into `vertices` parts.
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == vertices - 1) {
      counts[static_cast<std::size_t>(pos)] = remaining;
      std::vector<double> w;
      for (int c : counts) w.push_back(static_cast<double>(c) / subdivisions);
      points.push_back(std::move(w));
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, subdivisions);
  return points;
}

std::vector<DiagonalVector> hypersurface_mesh(const ControlField& field,
                                              std::span<const int> sigma, int subdivisions) {
  std::vector<DiagonalVector> mesh;
  for (const auto& mu : simplex_lattice(static_cast<int>(sigma.size()), subdivisions)) {
    try {
      mesh.push_back(hypersurface_point(field, sigma, mu));
    } catch (const SingularCombination&) {
      // skipped by contract
    }
  }
  return mesh;
}

std::vector<double> stlc_boundary_rays(const ControlField& field, const Vec& origin,
                                       std::span<const Vec> ray_dirs, const RayOptions& opts) {
  if (!(opts.step > 0.0) || !(opts.tol > 0.0)) throw ValidationError("step and tol must be positive");
  if (origin.size() != field.dim()) throw ValidationError("origin dimension mismatch");
  for (const auto& d : ray_dirs) {
    if (d.size() != field.dim() || std::abs(d.norm() - 1.0) > 1e-9) {
      throw ValidationError("ray directions must be unit vectors of the state dimension");
    }
  }
  if (!field.stlc(origin).is_full) {
    throw OriginNotControllable("ray origin is not small-time locally controllable");
  }

  std::vector<double> radii(ray_dirs.size(), 0.0);
  parallel_for(ray_dirs.size(), opts.workers, [&](std::size_t i) {
    const Vec& d = ray_dirs[i];
    auto inside = [&](double t) { return field.stlc(origin + t * d).is_full; };
    double lo = 0.0;
    double hi = opts.step;
    while (inside(hi)) {
      lo = hi;
      hi += opts.step;
      if (hi > opts.max_radius) throw NumericalError("ray never left the STLC set");
    }
    while (hi - lo > opts.tol) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid) ? lo : hi) = mid;
    }
    radii[i] = lo;
  });
  return radii;
}

std::vector<Vec> fibonacci_sphere(int count) {
  if (count < 1) throw ValidationError("ray count must be positive");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * k;
    Vec v(3);
    v << rho * std::cos(phi), rho * std::sin(phi), z;
    out.push_back(v.normalized());
  }
  return out;
}

}  // namespace reachset
