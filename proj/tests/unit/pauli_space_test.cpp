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

#include "reachset/pauli_space.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reachset/errors.hpp"

namespace reachset {
namespace {

TEST(PauliBasisTest, SingleQubitLabelsAndTraces) {
  const auto basis = PauliBasis::build(1);
  ASSERT_EQ(basis.labels(), (std::vector<std::string>{"I", "X", "Y", "Z"}));
  const CMat x = basis.matrix(1);
  const CMat y = basis.matrix(2);
  EXPECT_NEAR(std::abs((x * y).trace()), 0.0, 1e-15);
  EXPECT_NEAR((x * x).trace().real() / 2.0, 1.0, 1e-15);
}

TEST(PauliBasisTest, TwoQubitGramIsIdentity) {
  const auto basis = PauliBasis::build(2);
  ASSERT_EQ(basis.size(), 16);
  EXPECT_EQ(basis.label(0), "II");
  EXPECT_EQ(basis.label(15), "ZZ");
  for (int k = 0; k < 16; ++k) {
    const CMat bk = basis.matrix(k);
    // Compare with an independently built Kronecker product.
    EXPECT_TRUE(bk.isApprox(oracle::pauli_string(basis.label(k)))) << basis.label(k);
    if (k > 0) EXPECT_EQ(bk.trace(), Complex(0.0, 0.0));
    for (int j = 0; j < 16; ++j) {
      const Complex g = (bk * basis.matrix(j)).trace() / 4.0;
      EXPECT_EQ(g, Complex(k == j ? 1.0 : 0.0, 0.0));
    }
  }
}

TEST(PauliBasisTest, EntriesAreUnitPhasesAndHermitian) {
  for (int n = 1; n <= 3; ++n) {
    const auto basis = PauliBasis::build(n);
    for (int k = 0; k < basis.size(); ++k) {
      const CMat b = basis.matrix(k);
      EXPECT_TRUE(b.isApprox(b.adjoint()));
      for (Eigen::Index i = 0; i < b.size(); ++i) {
        const double a = std::abs(b.data()[i]);
        EXPECT_TRUE(a == 0.0 || a == 1.0);
      }
    }
  }
}

TEST(PauliBasisTest, RejectsOutOfRangeQubitCounts) {
  EXPECT_THROW(PauliBasis::build(0), SizeError);
  EXPECT_THROW(PauliBasis::build(kMaxQubits + 1), SizeError);
  EXPECT_NO_THROW(PauliBasis::build(kMaxQubits));
}

TEST(PauliBasisTest, LabelLookup) {
  const auto basis = PauliBasis::build(2);
  EXPECT_EQ(basis.index_of("ZI"), 12);
  EXPECT_EQ(basis.coherence_index("IZ"), 2);
  EXPECT_THROW(static_cast<void>(basis.index_of("QQ")), ValidationError);
}

TEST(EncodeTest, MaximallyMixedIsZero) {
  const auto basis = PauliBasis::build(2);
  const auto v = encode(basis, CMat::Identity(4, 4) / 4.0);
  EXPECT_EQ(v.r.size(), 15);
  EXPECT_LT(v.r.norm(), 1e-15);
}

TEST(EncodeTest, ThermalStateHasTwoComponents) {
  const auto basis = PauliBasis::build(2);
  const double eps = 1e-5;
  const CMat rho = CMat::Identity(4, 4) / 4.0 + eps * basis.matrix(basis.index_of("ZI")) +
                   4.0 * eps * basis.matrix(basis.index_of("IZ"));
  const auto v = encode(basis, rho);
  for (int k = 0; k < 15; ++k) {
    const auto& label = basis.label(k + 1);
    const double expected = label == "ZI" ? eps : label == "IZ" ? 4.0 * eps : 0.0;
    EXPECT_NEAR(v.r(k), expected, 1e-16) << label;
  }
}

TEST(EncodeTest, SingleQubitGroundState) {
  const auto basis = PauliBasis::build(1);
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 1.0;
  const auto v = encode(basis, rho);
  EXPECT_NEAR(v.r(2), 0.5, 1e-15);
  EXPECT_NEAR(v.r(0), 0.0, 1e-15);
  EXPECT_NEAR(v.r(1), 0.0, 1e-15);
  EXPECT_TRUE(decode(basis, v).isApprox(rho));
}

TEST(EncodeTest, RejectsInvalidInput) {
  const auto basis = PauliBasis::build(1);
  CMat rho = CMat::Identity(2, 2) / 2.0;
  rho(0, 1) = 0.3;
  EXPECT_THROW(encode(basis, rho), ValidationError);
  EXPECT_THROW(encode(basis, CMat::Identity(2, 2)), ValidationError);
  EXPECT_THROW(encode(basis, CMat::Identity(4, 4) / 4.0), ValidationError);
}

TEST(DecodeTest, ZeroIsMaximallyMixed) {
  const auto basis = PauliBasis::build(3);
  EXPECT_TRUE(decode(basis, CoherenceVector::zero(3)).isApprox(CMat::Identity(8, 8) / 8.0));
}

TEST(DecodeTest, RejectsLengthMismatch) {
  const auto basis = PauliBasis::build(2);
  EXPECT_THROW(decode(basis, CoherenceVector{2, Vec::Zero(3)}), ValidationError);
}

TEST(DecodeTest, RoundTripRandomStates) {
  std::mt19937 rng(11);
  for (int n = 1; n <= 3; ++n) {
    const auto basis = PauliBasis::build(n);
    for (int s = 0; s < 100; ++s) {
      const CMat rho = oracle::random_density(basis.dim(), rng);
      const CMat back = decode(basis, encode(basis, rho));
      EXPECT_LT((back - rho).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(UnitaryRepTest, IdentityMapsToIdentity) {
  const auto basis = PauliBasis::build(2);
  const auto rep = unitary_rep(basis, CMat::Identity(4, 4));
  EXPECT_TRUE(rep.m.isApprox(Mat::Identity(15, 15)));
}

TEST(UnitaryRepTest, CnotMovesIzToZzAndFixesZi) {
  const auto basis = PauliBasis::build(2);
  CMat cnot = CMat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto rep = unitary_rep(basis, cnot);
  const int zi = basis.coherence_index("ZI");
  const int iz = basis.coherence_index("IZ");
  const int zz = basis.coherence_index("ZZ");
  EXPECT_NEAR(rep.m(zz, iz), 1.0, 1e-14);
  EXPECT_NEAR(rep.m(zi, zi), 1.0, 1e-14);
  EXPECT_NEAR(rep.m.col(iz).norm(), 1.0, 1e-14);
}

TEST(UnitaryRepTest, OrthogonalHomomorphismAndCovariant) {
  std::mt19937 rng(5);
  const auto basis = PauliBasis::build(2);
  for (int s = 0; s < 20; ++s) {
    const CMat u = oracle::haar_unitary(4, rng);
    const CMat v = oracle::haar_unitary(4, rng);
    const auto ru = unitary_rep(basis, u);
    const auto rv = unitary_rep(basis, v);
    EXPECT_LT((ru.m.transpose() * ru.m - Mat::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((unitary_rep(basis, u * v).m - ru.m * rv.m).cwiseAbs().maxCoeff(), 1e-9);

    const CMat rho = oracle::random_density(4, rng);
    const auto r = encode(basis, rho);
    const auto image = encode(basis, u * rho * u.adjoint());
    EXPECT_LT((ru.apply(r).r - image.r).norm(), 1e-10);
    EXPECT_NEAR(ru.apply(r).r.norm(), r.r.norm(), 1e-10);
  }
}

TEST(UnitaryRepTest, RejectsNonUnitary) {
  const auto basis = PauliBasis::build(1);
  EXPECT_THROW(unitary_rep(basis, 2.0 * CMat::Identity(2, 2)), ValidationError);
}

TEST(CoherenceTermsTest, BuildsSparseVector) {
  const auto basis = PauliBasis::build(2);
  const auto v = coherence_from_terms(basis, {{"ZI", 1.0}, {"IZ", 4.0}});
  EXPECT_EQ(v.r(basis.coherence_index("ZI")), 1.0);
  EXPECT_EQ(v.r(basis.coherence_index("IZ")), 4.0);
  EXPECT_EQ(v.r.cwiseAbs().sum(), 5.0);
}

}  // namespace
}  // namespace reachset
