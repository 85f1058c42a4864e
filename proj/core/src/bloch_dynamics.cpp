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

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "reachset/errors.hpp"

namespace reachset {
namespace {

constexpr double kStructureTol = 1e-10;
constexpr double kConsistencyTol = 1e-9;

double scale_of(const Mat& m) { return std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0); }

}  // namespace

AffineGenerator AffineGenerator::from_drive(int n, Mat h, Mat r, Vec v, GeneratorOptions opts) {
  AffineGenerator gen;
  gen.n_ = n;
  gen.h_ = std::move(h);
  gen.r_ = std::move(r);
  gen.v_ = std::move(v);
  gen.unital_allowed_ = opts.allow_unital;
  if (gen.r_.rows() != gen.r_.cols() || gen.v_.size() != gen.r_.rows()) {
    throw ValidationError("relaxation matrix and drive vector sizes differ");
  }
  Eigen::LLT<Mat> llt(gen.r_);
  if (llt.info() == Eigen::Success) {
    gen.r_eq_ = llt.solve(gen.v_);
  } else if (opts.allow_unital) {
    gen.r_eq_ = gen.r_.completeOrthogonalDecomposition().solve(gen.v_);
  } else {
    throw ContractivityViolation("relaxation matrix is not positive definite");
  }
  gen.validate();
  return gen;
}

AffineGenerator AffineGenerator::from_equilibrium(int n, Mat h, Mat r, Vec r_eq,
                                                  GeneratorOptions opts) {
  AffineGenerator gen;
  gen.n_ = n;
  gen.h_ = std::move(h);
  gen.r_ = std::move(r);
  gen.r_eq_ = std::move(r_eq);
  gen.unital_allowed_ = opts.allow_unital;
  if (gen.r_.rows() != gen.r_.cols() || gen.r_eq_.size() != gen.r_.rows()) {
    throw ValidationError("relaxation matrix and equilibrium sizes differ");
  }
  gen.v_ = gen.r_ * gen.r_eq_;
  gen.validate();
  return gen;
}

void AffineGenerator::validate() const {
  const Eigen::Index m = (Eigen::Index{1} << (2 * n_)) - 1;
  if (n_ < 1 || r_.rows() != m || h_.rows() != m || h_.cols() != m) {
    throw ValidationError("generator matrices must be " + std::to_string(m) + "x" +
                          std::to_string(m) + " for n=" + std::to_string(n_));
  }
  if (!h_.allFinite() || !r_.allFinite() || !v_.allFinite()) {
    throw ValidationError("generator contains non-finite entries");
  }
  if ((h_ + h_.transpose()).cwiseAbs().maxCoeff() > kStructureTol * scale_of(h_)) {
    throw ValidationError("coherent part H is not antisymmetric");
  }
  if ((r_ - r_.transpose()).cwiseAbs().maxCoeff() > kStructureTol * scale_of(r_)) {
    throw ValidationError("relaxation matrix R is not symmetric");
  }
  const Vec eig = Eigen::SelfAdjointEigenSolver<Mat>(r_, Eigen::EigenvaluesOnly).eigenvalues();
  const double floor = unital_allowed_ ? -kStructureTol * scale_of(r_) : 0.0;
  if (unital_allowed_ ? eig.minCoeff() < floor : eig.minCoeff() <= 0.0) {
    throw ContractivityViolation("relaxation matrix is not positive " +
                                 std::string(unital_allowed_ ? "semidefinite" : "definite") +
                                 " (min eigenvalue " + std::to_string(eig.minCoeff()) + ")");
  }
  const double resid = (r_ * r_eq_ - v_).cwiseAbs().maxCoeff();
  if (resid > kConsistencyTol * std::max(1.0, v_.cwiseAbs().maxCoeff())) {
    throw ValidationError("R r_eq differs from the drive vector v");
  }
}

AffineGenerator AffineGenerator::with_hamiltonian(Mat h) const {
  AffineGenerator gen = *this;
  gen.h_ = std::move(h);
  gen.validate();
  return gen;
}

Vec AffineGenerator::field(const Vec& r) const { return h_ * r - r_ * (r - r_eq_); }

BlochMatrices bloch_matrices(const PauliBasis& basis, const CMat& hamiltonian,
                             const Superoperator& dissipator) {
  const int d = basis.dim();
  const int m = basis.coherence_dim();
  BlochMatrices out{Mat(m, m), Mat(m, m), Vec(m)};
  const Complex minus_i(0, -1);
  const CMat ident = CMat::Identity(d, d);
  const CMat r_ident = dissipator(ident);
  for (int j = 1; j < basis.size(); ++j) {
    const CMat bj = basis.matrix(j);
    const CMat comm = minus_i * (hamiltonian * bj - bj * hamiltonian);
    const CMat relaxed = dissipator(bj);
    for (int k = 1; k < basis.size(); ++k) {
      out.h(k - 1, j - 1) = basis.trace_with(k, comm).real() / d;
      out.r(k - 1, j - 1) = -basis.trace_with(k, relaxed).real() / d;
    }
  }
  for (int k = 1; k < basis.size(); ++k) {
    out.v(k - 1) = basis.trace_with(k, r_ident).real() / (static_cast<double>(d) * d);
  }
  return out;
}

AffineGenerator lindblad_to_bloch(const PauliBasis& basis, const CMat& hamiltonian,
                                  const Superoperator& dissipator, GeneratorOptions opts) {
  if (hamiltonian.rows() != basis.dim() || hamiltonian.cols() != basis.dim()) {
    throw ValidationError("Hamiltonian has the wrong dimension");
  }
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > kStructureTol) {
    throw ValidationError("Hamiltonian is not Hermitian");
  }
  auto raw = bloch_matrices(basis, hamiltonian, dissipator);
  return AffineGenerator::from_drive(basis.qubits(), std::move(raw.h), std::move(raw.r),
                                     std::move(raw.v), opts);
}

Superoperator lindblad_dissipator(std::vector<CMat> jump_operators) {
  return [ops = std::move(jump_operators)](const CMat& rho) {
    CMat out = CMat::Zero(rho.rows(), rho.cols());
    for (const auto& l : ops) {
      const CMat ldl = l.adjoint() * l;
      out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return out;
  };
}

Vec full_fixed_point(const AffineGenerator& gen) {
  if (gen.drive().isZero(0.0)) return Vec::Zero(gen.dim());
  const Mat a = gen.hamiltonian() - gen.relaxation();
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) {
    throw FixedPointUndefined("H − R is singular while the drive is nonzero");
  }
  return lu.solve(-gen.drive());
}

AffineMap propagator(const AffineGenerator& gen, double t) {
  if (!(t >= 0.0)) throw ValidationError("evolution time must be nonnegative");
  const Eigen::Index m = gen.dim();
  if (t == 0.0) return AffineMap::identity(m);
  const Mat a = gen.hamiltonian() - gen.relaxation();
  Mat e = (a * t).exp();
  const Vec fixed = full_fixed_point(gen);
  Vec offset = fixed - e * fixed;
  return {std::move(e), std::move(offset)};
}

CoherenceVector evolve(const AffineGenerator& gen, const CoherenceVector& r0, double t) {
  if (r0.n != gen.qubits() || r0.r.size() != gen.dim()) {
    throw ValidationError("state and generator sizes differ");
  }
  return {r0.n, propagator(gen, t).apply(r0.r)};
}

double purity(const CoherenceVector& r) {
  const double d = std::ldexp(1.0, r.n);
  return 1.0 / d + d * r.r.squaredNorm();
}

double purity_rate(const AffineGenerator& gen, const CoherenceVector& r) {
  if (r.r.size() != gen.dim()) throw ValidationError("state and generator sizes differ");
  return -std::ldexp(1.0, r.n + 1) * r.r.dot(gen.relaxation() * (r.r - gen.equilibrium()));
}

}  // namespace reachset
