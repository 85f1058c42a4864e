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

#include "reachset/unitary_bound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "reachset/diag_projection.hpp"
#include "reachset/errors.hpp"

namespace reachset {
namespace {

CMat deviation_matrix(const PauliBasis& basis, const CoherenceVector& v) {
  if (v.n != basis.qubits() || v.r.size() != basis.coherence_dim()) {
    throw ValidationError("coherence vector does not match the basis");
  }
  const int d = basis.dim();
  return decode(basis, v) - CMat::Identity(d, d) / static_cast<double>(d);
}

// Eigenvalues of the deviation, descending, with near-equal values snapped
// together so that repeated eigenvalues compare equal.
Vec deviation_spectrum(const PauliBasis& basis, const CoherenceVector& v) {
  Eigen::SelfAdjointEigenSolver<CMat> es(deviation_matrix(basis, v), Eigen::EigenvaluesOnly);
  Vec ev = es.eigenvalues().reverse();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev(i) - ev(i - 1)) <= 1e-10 * scale) ev(i) = ev(i - 1);
  }
  return ev;
}

}  // namespace

double kappa_unitary_max(const PauliBasis& basis, const CoherenceVector& rho,
                         const CoherenceVector& sigma) {
  const double norm_sq = sigma.r.squaredNorm();
  if (!(norm_sq > 0.0)) throw ValidationError("target deviation is zero");
  const Vec a = deviation_spectrum(basis, rho);
  const Vec b = deviation_spectrum(basis, sigma);
  // Tr(σ_dev²) = 2^n |s|², Tr(ρ_dev σ_dev) = ⟨λ↓(ρ), λ↓(σ)⟩ at the optimum.
  return a.dot(b) / (basis.dim() * norm_sq);
}

double kappa_unitary(const PauliBasis& basis, const CoherenceVector& rho,
                     const CoherenceVector& sigma, const CMat& u) {
  const double norm_sq = sigma.r.squaredNorm();
  if (!(norm_sq > 0.0)) throw ValidationError("target deviation is zero");
  const CMat rotated = u * deviation_matrix(basis, rho) * u.adjoint();
  const Complex overlap = (rotated * deviation_matrix(basis, sigma)).trace();
  return overlap.real() / (basis.dim() * norm_sq);
}

double kappa_channel(const CoherenceVector& output, const CoherenceVector& sigma,
                     double tol) {
  if (output.r.size() != sigma.r.size()) throw ValidationError("state sizes differ");
  const double norm_sq = sigma.r.squaredNorm();
  if (!(norm_sq > 0.0)) throw ValidationError("target deviation is zero");
  const double kappa = output.r.dot(sigma.r) / norm_sq;
  const double residual = (output.r - kappa * sigma.r).norm();
  if (residual > tol * output.r.norm()) {
    throw ResidualTooLarge("output has components outside the target direction (relative residual " +
                           std::to_string(residual / output.r.norm()) + ")");
  }
  return kappa;
}

SpectrumPolytope polytope_vertices(const PauliBasis& basis, const CoherenceVector& rho) {
  SpectrumPolytope p;
  p.source_state = rho;
  p.spectrum = deviation_spectrum(basis, rho);
  std::vector<double> entries(p.spectrum.data(), p.spectrum.data() + p.spectrum.size());
  std::sort(entries.begin(), entries.end());
  do {
    p.vertices.push_back(Eigen::Map<const Vec>(entries.data(), static_cast<Eigen::Index>(entries.size())));
  } while (std::next_permutation(entries.begin(), entries.end()));
  return p;
}

double polytope_radius(const SpectrumPolytope& polytope, const Vec& direction) {
  const int n = polytope.source_state.n;
  const int d = 1 << n;
  if (direction.size() != d - 1) {
    throw ValidationError("direction must have 2^n - 1 diagonal coordinates");
  }
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw ValidationError("direction is zero");

  // Diagonal entries of Σ_k u_k Z_k for the unit direction u.
  const auto labels = diag_labels(n);
  Vec diag = Vec::Zero(d);
  for (Eigen::Index k = 0; k < direction.size(); ++k) {
    const auto& label = labels[static_cast<std::size_t>(k)];
    for (int i = 0; i < d; ++i) {
      int parity = 0;
      for (int q = 0; q < n; ++q) {
        if (label[static_cast<std::size_t>(q)] == 'Z') parity ^= (i >> (n - 1 - q)) & 1;
      }
      diag(i) += (parity ? -1.0 : 1.0) * direction(k) / norm;
    }
  }
  std::sort(diag.begin(), diag.end(), std::greater<>());

  // t·diag lies in the permutohedron iff its sorted partial sums are bounded
  // by those of the spectrum (both sum to zero).
  double radius = std::numeric_limits<double>::infinity();
  double s_dir = 0.0;
  double s_spec = 0.0;
  for (int k = 0; k + 1 < d; ++k) {
    s_dir += diag(k);
    s_spec += polytope.spectrum(k);
    if (s_dir > 1e-14) radius = std::min(radius, s_spec / s_dir);
  }
  return std::max(radius, 0.0);
}

Vec diagonal_deviation(const PauliBasis& basis, const CoherenceVector& r) {
  return deviation_matrix(basis, r).diagonal().real();
}

}  // namespace reachset
