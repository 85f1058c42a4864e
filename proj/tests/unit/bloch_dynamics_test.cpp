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

#include "reachset/bloch_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "reachset/errors.hpp"

namespace reachset {
namespace {

using testing::basis2;
using testing::chloroform;

CMat lowering() {
  CMat s = CMat::Zero(2, 2);
  s(0, 1) = 1.0;  // |0><1|
  return s;
}

TEST(LindbladToBlochTest, AmplitudeDampingMatchesClosedForm) {
  const auto basis = PauliBasis::build(1);
  const double gamma = 0.7;
  const CMat jump = std::sqrt(gamma) * lowering();
  const auto gen = lindblad_to_bloch(basis, CMat::Zero(2, 2), lindblad_dissipator({jump}));
  Mat expected_r = Mat::Zero(3, 3);
  expected_r.diagonal() << gamma / 2, gamma / 2, gamma;
  EXPECT_LT((gen.relaxation() - expected_r).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((gen.equilibrium() - Vec::Unit(3, 2) * 0.5).norm(), 1e-14);
  EXPECT_LT(gen.hamiltonian().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LindbladToBlochTest, AgreesWithBruteForceSuperoperator) {
  std::mt19937 rng(3);
  const auto basis = PauliBasis::build(2);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 5; ++s) {
    std::vector<CMat> jumps;
    CMat liouvillian = CMat::Zero(16, 16);
    for (int k = 0; k < 3; ++k) {
      CMat l(4, 4);
      for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = Complex(normal(rng), normal(rng)) * 0.3;
      jumps.push_back(l);
      liouvillian += oracle::dissipator_superoperator(l);
    }
    const auto got = bloch_matrices(basis, CMat::Zero(4, 4), lindblad_dissipator(jumps));
    const auto ref = oracle::bloch_from_superoperator(2, liouvillian);
    EXPECT_LT((got.r - ref.r).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((got.v - ref.v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LindbladToBlochTest, DissipatorPreservesTrace) {
  std::mt19937 rng(4);
  std::normal_distribution<double> normal;
  CMat l(4, 4);
  for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = Complex(normal(rng), normal(rng));
  const auto diss = lindblad_dissipator({l});
  for (int s = 0; s < 10; ++s) {
    EXPECT_LT(std::abs(diss(oracle::random_density(4, rng)).trace()), 1e-12);
  }
}

TEST(LindbladToBlochTest, ScalarCouplingAloneIsUnital) {
  const double j = 214.5;
  const CMat hs = (std::numbers::pi * j / 2.0) * basis2().matrix(basis2().index_of("ZZ"));
  const Superoperator none = [](const CMat& x) { return CMat::Zero(x.rows(), x.cols()); };
  EXPECT_THROW(lindblad_to_bloch(basis2(), hs, none), ContractivityViolation);

  const auto gen = lindblad_to_bloch(basis2(), hs, none, {.allow_unital = true});
  EXPECT_EQ(gen.relaxation().cwiseAbs().maxCoeff(), 0.0);
  const int xi = basis2().coherence_index("XI");
  const int yz = basis2().coherence_index("YZ");
  const int yi = basis2().coherence_index("YI");
  const int xz = basis2().coherence_index("XZ");
  const double pj = std::numbers::pi * j;
  EXPECT_NEAR(gen.hamiltonian()(xi, yz), -pj, 1e-9);
  EXPECT_NEAR(gen.hamiltonian()(yi, xz), pj, 1e-9);
  // Population coordinates are untouched by ZZ.
  const int zi = basis2().coherence_index("ZI");
  EXPECT_EQ(gen.hamiltonian().row(zi).cwiseAbs().sum(), 0.0);
}

TEST(LindbladToBlochTest, RejectsNonHermitianHamiltonian) {
  const auto basis = PauliBasis::build(1);
  CMat h = CMat::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(lindblad_to_bloch(basis, h, lindblad_dissipator({lowering()})), ValidationError);
}

TEST(AffineGeneratorTest, ValidatesStructure) {
  Mat r = Mat::Identity(3, 3);
  Mat h = Mat::Zero(3, 3);
  h(0, 1) = 1.0;
  EXPECT_THROW(AffineGenerator::from_equilibrium(1, h, r, Vec::Zero(3)), ValidationError);
  Mat bad_r = Mat::Identity(3, 3);
  bad_r(2, 2) = -0.1;
  EXPECT_THROW(AffineGenerator::from_equilibrium(1, Mat::Zero(3, 3), bad_r, Vec::Zero(3)),
               ContractivityViolation);
  Mat asym = Mat::Identity(3, 3);
  asym(0, 1) = 0.5;
  EXPECT_THROW(AffineGenerator::from_equilibrium(1, Mat::Zero(3, 3), asym, Vec::Zero(3)),
               ValidationError);
  EXPECT_THROW(AffineGenerator::from_equilibrium(1, Mat::Zero(2, 2), Mat::Identity(2, 2), Vec::Zero(2)),
               ValidationError);
  const auto g = AffineGenerator::from_drive(1, Mat::Zero(3, 3), 2.0 * r, Vec::Ones(3));
  EXPECT_LT((g.equilibrium() - 0.5 * Vec::Ones(3)).norm(), 1e-15);
}

TEST(EvolveTest, FixedPointAndZeroTime) {
  const auto& gen = chloroform();
  const CoherenceVector eq{2, gen.equilibrium()};
  EXPECT_LT((evolve(gen, eq, 3.7).r - eq.r).norm(), 1e-12);
  std::mt19937 rng(8);
  const auto r0 = encode(basis2(), oracle::random_density(4, rng));
  EXPECT_LT((evolve(gen, r0, 0.0).r - r0.r).norm(), 1e-14);
  EXPECT_THROW(evolve(gen, r0, -1.0), ValidationError);
}

TEST(EvolveTest, MatchesRungeKutta) {
  const auto& gen = chloroform();
  std::mt19937 rng(9);
  std::normal_distribution<double> normal;
  Vec r0(15);
  for (auto& x : r0) x = normal(rng);
  // πJ ≈ 674 rad/s: fine steps keep RK4 well below 1e-8.
  Vec x = r0;
  for (int t = 1; t <= 10; ++t) {
    x = oracle::rk4(gen.hamiltonian(), gen.relaxation(), gen.equilibrium(), x, 1.0, 200000);
    const Vec exact = evolve(gen, {2, r0}, static_cast<double>(t)).r;
    EXPECT_LT((exact - x).cwiseAbs().maxCoeff(), 1e-8) << "t = " << t;
  }
}

TEST(EvolveTest, Composes) {
  const auto& gen = chloroform();
  std::mt19937 rng(10);
  const auto r0 = encode(basis2(), oracle::random_density(4, rng));
  const auto a = evolve(gen, evolve(gen, r0, 0.37), 2.11);
  const auto b = evolve(gen, r0, 2.48);
  EXPECT_LT((a.r - b.r).norm(), 1e-9);
}

TEST(EvolveTest, DistanceToSteadyStateDecreases) {
  const auto& gen = chloroform();
  const Vec eq = gen.equilibrium();
  const CoherenceVector zero = CoherenceVector::zero(2);
  double last_hs = INFINITY;
  double last_trace = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const double t = 5.0 * k;
    const Vec r = evolve(gen, zero, t).r;
    const double hs = (r - eq).norm();
    const CMat diff = decode(basis2(), {2, r}) - decode(basis2(), {2, eq});
    Eigen::SelfAdjointEigenSolver<CMat> es(diff, Eigen::EigenvaluesOnly);
    const double trace = 0.5 * es.eigenvalues().cwiseAbs().sum();
    EXPECT_LT(hs, last_hs);
    EXPECT_LT(trace, last_trace);
    last_hs = hs;
    last_trace = trace;
  }
}

TEST(EvolveTest, FreeEvolutionReachesEquilibrium) {
  const auto& gen = chloroform();
  // Slowest rate is about 0.044 /s, so 1e-9 needs several hundred seconds.
  const auto r = evolve(gen, CoherenceVector::zero(2), 1000.0);
  EXPECT_LT((r.r - gen.equilibrium()).norm(), 1e-9);
  EXPECT_LT((full_fixed_point(gen) - gen.equilibrium()).norm(), 1e-12);
}

TEST(PurityTest, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(purity(CoherenceVector::zero(2)), 0.25);
  CoherenceVector up{1, Vec::Zero(3)};
  up.r(2) = 0.5;
  EXPECT_DOUBLE_EQ(purity(up), 1.0);
  const CoherenceVector eq{2, chloroform().equilibrium()};
  EXPECT_NEAR(purity(eq), 0.25 + 68.0, 1e-12);
  const CMat rho = decode(basis2(), eq);
  EXPECT_NEAR((rho * rho).trace().real(), purity(eq), 1e-10);
}

TEST(PurityRateTest, SignsAroundEquilibrium) {
  const auto& gen = chloroform();
  const Vec eq = gen.equilibrium();
  EXPECT_NEAR(purity_rate(gen, {2, eq}), 0.0, 1e-12);
  EXPECT_LT(purity_rate(gen, {2, 2.0 * eq}), 0.0);
  EXPECT_GT(purity_rate(gen, {2, 0.5 * eq}), 0.0);
}

TEST(PurityRateTest, HamiltonianDoesNotContribute) {
  const auto& gen = chloroform();
  const auto bare = gen.with_hamiltonian(Mat::Zero(15, 15));
  std::mt19937 rng(12);
  for (int s = 0; s < 10; ++s) {
    const auto r = encode(basis2(), oracle::random_density(4, rng));
    EXPECT_NEAR(purity_rate(gen, r), purity_rate(bare, r), 1e-12);
  }
}

TEST(PurityRateTest, MatchesFiniteDifferenceToFirstOrder) {
  const auto& gen = chloroform();
  std::mt19937 rng(13);
  std::normal_distribution<double> normal;
  Vec x(15);
  for (auto& v : x) v = normal(rng);
  const CoherenceVector r{2, x};
  const double rate = purity_rate(gen, r);
  auto fd = [&](double h) { return (purity(evolve(gen, r, h)) - purity(r)) / h; };
  const double e4 = std::abs(fd(1e-4) - rate);
  const double e5 = std::abs(fd(1e-5) - rate);
  // Error shrinks linearly in h.
  EXPECT_LT(e5, 0.2 * e4);
  EXPECT_LT(e5 / 1e-5, 2.0 * e4 / 1e-4);
}

TEST(PurityRateTest, ContractiveAwayFromEquilibrium) {
  const auto& gen = chloroform();
  std::mt19937 rng(14);
  for (int s = 0; s < 100; ++s) {
    const Vec d = encode(basis2(), oracle::random_density(4, rng)).r - gen.equilibrium();
    EXPECT_GT(d.dot(gen.relaxation() * d), 0.0);
  }
}

TEST(PurityRateTest, UnitalSystemsNeverPurify) {
  std::mt19937 rng(15);
  const Mat r = oracle::random_spd(15, 0.1, 3.0, rng);
  const Mat h = oracle::random_antisymmetric(15, 1.0, rng);
  const auto gen = AffineGenerator::from_equilibrium(2, h, r, Vec::Zero(15));
  for (int s = 0; s < 100; ++s) {
    EXPECT_LE(purity_rate(gen, encode(basis2(), oracle::random_density(4, rng))), 0.0);
  }
}

}  // namespace
}  // namespace reachset
