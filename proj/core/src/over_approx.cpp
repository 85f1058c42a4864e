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

#include "reachset/over_approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "reachset/diag_projection.hpp"
#include "reachset/errors.hpp"

namespace reachset {
namespace {

// Relative width below which eigenvalues of MᵀM count as tied with the top.
constexpr double kTieTol = 1e-12;

}  // namespace

PurityBound max_purity_on_ellipsoid(const AffineGenerator& gen) {
  const Mat& r = gen.relaxation();
  const Vec& r_eq = gen.equilibrium();
  const Eigen::Index m = gen.dim();

  Eigen::LLT<Mat> llt(r);
  if (llt.info() != Eigen::Success) {
    throw ContractivityViolation("relaxation matrix is not positive definite");
  }

  PurityBound bound;
  bound.n = gen.qubits();
  bound.argmax = CoherenceVector::zero(gen.qubits());
  if (r_eq.isZero(0.0)) return bound;

  const Mat l = llt.matrixL();
  const Vec c = 0.5 * (l.transpose() * r_eq);
  const double rho = c.norm();
  // L⁻ᵀ via a triangular solve against the identity.
  const Mat l_inv_t = l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(m, m));
  const Vec a = l_inv_t * c;
  const Mat big_m = rho * l_inv_t;

  const Mat gram = big_m.transpose() * big_m;
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
  const Vec w = eig.eigenvalues();  // ascending
  const Mat& q = eig.eigenvectors();
  const Vec g = q.transpose() * (big_m.transpose() * a);

  const double w_max = w(m - 1);
  const double tie = kTieTol * std::max(1.0, std::abs(w_max));
  double g_top_sq = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (w_max - w(i) <= tie) g_top_sq += g(i) * g(i);
  }
  const double g_norm = g.norm();

  Vec coeffs(m);
  double lambda = w_max;
  const bool hard_case = g_top_sq <= 1e-24 * std::max(1.0, g_norm * g_norm);
  double tail = 0.0;
  if (hard_case) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (w_max - w(i) > tie) tail += g(i) * g(i) / ((w_max - w(i)) * (w_max - w(i)));
    }
  }

  if (hard_case && tail <= 1.0) {
    // Multiplier pinned at w_max; fill the top eigenspace to reach |y| = 1.
    Eigen::Index top = m - 1;
    for (Eigen::Index i = 0; i < m; ++i) {
      coeffs(i) = (w_max - w(i) > tie) ? g(i) / (w_max - w(i)) : 0.0;
    }
    coeffs(top) = std::sqrt(std::max(0.0, 1.0 - tail));
  } else {
    auto secular = [&](double lam) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (g(i) == 0.0) continue;
        const double d = lam - w(i);
        s += g(i) * g(i) / (d * d);
      }
      return s - 1.0;
    };
    // φ(w_max + |g_top|/2) >= 3 > 0 and φ(w_max + |g|) <= 0.
    double lo = w_max + std::max(0.5 * std::sqrt(g_top_sq), 1e-15 * std::max(1.0, w_max));
    double hi = w_max + g_norm;
    if (secular(hi) >= 0.0) {
      lambda = hi;
    } else {
      std::uintmax_t iters = 200;
      auto [a_lo, a_hi] = boost::math::tools::toms748_solve(
          secular, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
      lambda = 0.5 * (a_lo + a_hi);
    }
    for (Eigen::Index i = 0; i < m; ++i) coeffs(i) = g(i) / (lambda - w(i));
  }

  Vec y = q * coeffs;
  y.normalize();
  const Vec x = a + big_m * y;

  bound.radius_sq = x.squaredNorm();
  bound.argmax.r = x;
  bound.solver_residual = std::abs(x.dot(r * (x - r_eq)));
  // 2x = μ (2Rx − R r_eq)
  const Vec grad_c = 2.0 * (r * x) - r * r_eq;
  bound.lagrange_mult = grad_c.squaredNorm() > 0.0 ? (2.0 * x).dot(grad_c) / grad_c.squaredNorm()
                                                   : 0.0;
  return bound;
}

double sphere_cross_section(const PurityBound& bound, std::span<const int> subspace) {
  for (int s : subspace) {
    if (s < 0 || s >= bound.argmax.r.size()) throw ValidationError("subspace index out of range");
  }
  return bound.radius_sq;
}

std::vector<AxisIntersection> axis_intersections(const PurityBound& bound) {
  const double radius = std::sqrt(bound.radius_sq);
  std::vector<AxisIntersection> out;
  for (int slot : diag_slots(bound.n)) out.push_back({slot, radius, -radius});
  return out;
}

double ellipsoid_axis_intersection(const AffineGenerator& gen, int slot) {
  if (slot < 0 || slot >= gen.dim()) throw ValidationError("axis index out of range");
  const Mat& r = gen.relaxation();
  return (r * gen.equilibrium())(slot) / r(slot, slot);
}

}  // namespace reachset
