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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace reachset {
namespace {

std::vector<Vec> as_dynamic(const std::vector<Eigen::Vector3d>& v) {
  return {v.begin(), v.end()};
}

void expect_witness(const ConeVerdict& verdict, const std::vector<Vec>& dirs) {
  ASSERT_FALSE(verdict.is_full);
  ASSERT_TRUE(verdict.witness.has_value());
  EXPECT_NEAR(verdict.witness->norm(), 1.0, 1e-12);
  for (const auto& v : dirs) EXPECT_LE(verdict.witness->dot(v), 1e-10 * std::max(1.0, v.norm()));
}

TEST(Stlc3dTest, CoordinateCrossIsFull) {
  std::mt19937 rng(1);
  std::normal_distribution<double> normal;
  std::vector<Eigen::Vector3d> dirs;
  for (int i = 0; i < 3; ++i) {
    dirs.push_back(Eigen::Vector3d::Unit(i));
    dirs.push_back(-Eigen::Vector3d::Unit(i));
  }
  for (int k = 0; k < 18; ++k) dirs.emplace_back(normal(rng), normal(rng), normal(rng));
  EXPECT_TRUE(stlc_test_3d(dirs).is_full);
  EXPECT_TRUE(stlc_test_lp(as_dynamic(dirs)).is_full);
}

TEST(Stlc3dTest, HalfSpaceIsNotFull) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> first(0.1, 2.0);
  std::uniform_real_distribution<double> rest(-0.05, 0.05);
  std::vector<Eigen::Vector3d> dirs;
  for (int k = 0; k < 24; ++k) dirs.emplace_back(first(rng), rest(rng), rest(rng));
  const auto verdict = stlc_test_3d(dirs);
  expect_witness(verdict, as_dynamic(dirs));
  // Any separating normal will do; it must at least oppose the common axis.
  EXPECT_LT(verdict.witness->x(), 0.0);
}

TEST(Stlc3dTest, DegenerateInputs) {
  // Coplanar directions can never fill space.
  const std::vector<Eigen::Vector3d> planar{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  expect_witness(stlc_test_3d(planar), as_dynamic(planar));
  // Collinear directions define no plane at all.
  const std::vector<Eigen::Vector3d> line{{1, 1, 0}, {-2, -2, 0}};
  expect_witness(stlc_test_3d(line), as_dynamic(line));
  // A zero direction changes nothing.
  std::vector<Eigen::Vector3d> with_zero{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0},
                                         {0, 0, 1}, {0, 0, -1}, {0, 0, 0}};
  EXPECT_TRUE(stlc_test_3d(with_zero).is_full);
}

TEST(StlcLpTest, OneDimension) {
  const std::vector<Vec> dirs{Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
  EXPECT_TRUE(stlc_test_lp(dirs).is_full);
  const std::vector<Vec> half{Vec::Constant(1, 2.0)};
  expect_witness(stlc_test_lp(half), half);
}

TEST(StlcLpTest, UpperHalfPlane) {
  std::vector<Vec> dirs;
  for (auto [a, b] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.5, 2.0}}) {
    Vec v(2);
    v << a, b;
    dirs.push_back(v);
  }
  const auto verdict = stlc_test_lp(dirs);
  expect_witness(verdict, dirs);
  EXPECT_NEAR(verdict.witness->x(), 0.0, 1e-12);
  EXPECT_NEAR(verdict.witness->y(), -1.0, 1e-12);
}

TEST(StlcLpTest, AgreesWithTripleProductsOnRandomSets) {
  std::mt19937 rng(2024);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> bias(0.0, 3.0);
  int full = 0;
  for (int s = 0; s < 200; ++s) {
    Eigen::Vector3d shift(normal(rng), normal(rng), normal(rng));
    shift = shift.normalized() * bias(rng);
    std::vector<Eigen::Vector3d> dirs;
    for (int k = 0; k < 24; ++k) dirs.push_back(Eigen::Vector3d(normal(rng), normal(rng), normal(rng)) + shift);
    const auto a = stlc_test_3d(dirs);
    const auto b = stlc_test_lp(as_dynamic(dirs));
    ASSERT_EQ(a.is_full, b.is_full) << "instance " << s;
    if (!a.is_full) {
      expect_witness(a, as_dynamic(dirs));
      expect_witness(b, as_dynamic(dirs));
    }
    full += a.is_full ? 1 : 0;
  }
  // Both verdicts occur.
  EXPECT_GT(full, 20);
  EXPECT_LT(full, 180);
}

TEST(ConicFeasibilityTest, WeightsAndCertificates) {
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 50; ++s) {
    const int m = 2 + s % 4;
    Mat v(m, 3 * m);
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = normal(rng) + (s % 2 ? 0.8 : 0.0);
    Vec target(m);
    for (auto& t : target) t = normal(rng);
    const auto res = conic_feasibility(v, target);
    std::vector<Vec> cols;
    for (Eigen::Index k = 0; k < v.cols(); ++k) cols.push_back(v.col(k));
    if (res.feasible) {
      EXPECT_TRUE(oracle::check_combination(cols, res.weights, target, 1e-8));
    } else {
      for (const auto& c : cols) EXPECT_LE(res.certificate.dot(c), 1e-9);
      EXPECT_GT(res.certificate.dot(target), 0.0);
    }
  }
}

}  // namespace
}  // namespace reachset
