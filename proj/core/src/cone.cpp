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

#include "reachset/cone.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "reachset/errors.hpp"

namespace reachset {
namespace {

constexpr double kParallelTol = 1e-12;
constexpr double kSignTol = 1e-12;
constexpr double kSimplexTol = 1e-11;

Vec perpendicular(const Eigen::Vector3d& v) {
  if (v.norm() == 0.0) return Eigen::Vector3d::UnitX();
  const Eigen::Vector3d trial =
      std::abs(v.x()) < 0.9 * v.norm() ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  return v.cross(trial).normalized();
}

}  // namespace

ConeVerdict stlc_test_3d(std::span<const Eigen::Vector3d> directions) {
  const std::size_t count = directions.size();
  bool any_plane = false;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto& vi = directions[i];
    for (std::size_t j = i + 1; j < count; ++j) {
      const auto& vj = directions[j];
      const Eigen::Vector3d cross = vi.cross(vj);
      const double cross_norm = cross.norm();
      if (cross_norm <= kParallelTol * vi.norm() * vj.norm()) continue;
      any_plane = true;
      const Eigen::Vector3d normal = cross / cross_norm;
      bool all_nonneg = true;
      bool all_nonpos = true;
      for (std::size_t k = 0; k < count && (all_nonneg || all_nonpos); ++k) {
        if (k == i || k == j) continue;
        const double c = normal.dot(directions[k]);
        const double slack = kSignTol * directions[k].norm();
        if (c < -slack) all_nonneg = false;
        if (c > slack) all_nonpos = false;
      }
      if (all_nonneg) return {false, Vec(-normal)};
      if (all_nonpos) return {false, Vec(normal)};
    }
  }
  if (!any_plane) {
    // Directions span at most a line.
    Eigen::Vector3d first = Eigen::Vector3d::Zero();
    for (const auto& v : directions) {
      if (v.norm() > 0.0) {
        first = v;
        break;
      }
    }
    return {false, perpendicular(first)};
  }
  return {true, std::nullopt};
}

ConicFeasibility conic_feasibility(const Mat& directions, const Vec& target) {
  const Eigen::Index m = directions.rows();
  if (target.size() != m) throw ValidationError("target and directions differ in dimension");

  // Unit columns; zero columns contribute nothing and are dropped.
  std::vector<Eigen::Index> kept;
  std::vector<double> norms;
  for (Eigen::Index k = 0; k < directions.cols(); ++k) {
    const double nk = directions.col(k).norm();
    if (nk > 0.0) {
      kept.push_back(k);
      norms.push_back(nk);
    }
  }
  const auto cols = static_cast<Eigen::Index>(kept.size());
  const double t_norm = target.norm();

  ConicFeasibility out;
  out.weights = Vec::Zero(directions.cols());
  out.certificate = Vec::Zero(m);
  if (t_norm == 0.0) {
    out.feasible = true;
    return out;
  }

  // Rows sign-flipped so the right-hand side is nonnegative.
  Vec sign(m);
  Mat a(m, cols);
  Vec b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    sign(i) = target(i) < 0.0 ? -1.0 : 1.0;
    b(i) = sign(i) * target(i) / t_norm;
    for (Eigen::Index k = 0; k < cols; ++k) {
      a(i, k) = sign(i) * directions(i, kept[static_cast<std::size_t>(k)]) / norms[static_cast<std::size_t>(k)];
    }
  }
  auto column = [&](Eigen::Index j) -> Vec {
    if (j < cols) return a.col(j);
    return Vec::Unit(m, j - cols);
  };
  auto cost = [&](Eigen::Index j) { return j < cols ? 0.0 : 1.0; };

  // Phase one: minimise the sum of artificials, starting from the artificial basis.
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = cols + i;
  Mat b_inv = Mat::Identity(m, m);
  Vec x_b = b;

  const Eigen::Index total = cols + m;
  const long max_iter = 50 * static_cast<long>(total) + 1000;
  Vec y(m);
  for (long iter = 0;; ++iter) {
    if (iter > max_iter) throw NumericalError("simplex iteration limit reached");
    Vec c_b(m);
    for (Eigen::Index i = 0; i < m; ++i) c_b(i) = cost(basis[static_cast<std::size_t>(i)]);
    y = b_inv.transpose() * c_b;

    // Bland's rule: lowest-index improving column.
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < total; ++j) {
      const double reduced = j < cols ? -y.dot(a.col(j)) : 1.0 - y(j - cols);
      if (reduced < -kSimplexTol) {
        bool in_basis = false;
        for (auto bj : basis) in_basis = in_basis || bj == j;
        if (!in_basis) {
          entering = j;
          break;
        }
      }
    }
    if (entering < 0) break;

    const Vec w = b_inv * column(entering);
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (w(i) > kSimplexTol) {
        const double ratio = x_b(i) / w(i);
        if (ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw NumericalError("phase-one simplex unbounded");

    const double pivot = w(leave);
    b_inv.row(leave) /= pivot;
    x_b(leave) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || w(i) == 0.0) continue;
      b_inv.row(i) -= w(i) * b_inv.row(leave);
      x_b(i) -= w(i) * x_b(leave);
    }
    basis[static_cast<std::size_t>(leave)] = entering;
  }

  double objective = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto bj = basis[static_cast<std::size_t>(i)];
    if (bj >= cols) objective += x_b(i);
  }
  out.feasible = objective <= 1e-9;
  if (out.feasible) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto bj = basis[static_cast<std::size_t>(i)];
      if (bj < cols) {
        out.weights(kept[static_cast<std::size_t>(bj)]) =
            std::max(0.0, x_b(i)) * t_norm / norms[static_cast<std::size_t>(bj)];
      }
    }
  } else {
    out.certificate = sign.cwiseProduct(y);
  }
  return out;
}

ConeVerdict stlc_test_lp(std::span<const Vec> directions) {
  if (directions.empty()) throw ValidationError("no directions given");
  const Eigen::Index m = directions.front().size();
  if (m < 1) throw ValidationError("directions must have dimension >= 1");
  Mat v(m, static_cast<Eigen::Index>(directions.size()));
  for (std::size_t k = 0; k < directions.size(); ++k) {
    if (directions[k].size() != m) throw ValidationError("directions differ in dimension");
    v.col(static_cast<Eigen::Index>(k)) = directions[k];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (double s : {1.0, -1.0}) {
      const auto res = conic_feasibility(v, s * Vec::Unit(m, i));
      if (!res.feasible) {
        Vec witness = res.certificate;
        const double nn = witness.norm();
        if (nn > 0.0) witness /= nn;
        return {false, witness};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace reachset
