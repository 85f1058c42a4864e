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

#include <functional>
#include <vector>

#include "reachset/pauli_space.hpp"
#include "reachset/types.hpp"

namespace reachset {

/// Superoperator acting on 2^n x 2^n matrices.
using Superoperator = std::function<CMat(const CMat&)>;

struct GeneratorOptions {
  /// Accept a positive semidefinite relaxation matrix (unital models used in
  /// property tests). Reachability analysis always requires strict SPD.
  bool allow_unital = false;
};

/// Affine coherence-vector generator  ṙ = H r − R (r − r_eq),
/// with H antisymmetric, R symmetric positive definite and R r_eq = v.
class AffineGenerator {
 public:
  /// Validates antisymmetry, symmetry, definiteness and R r_eq = v.
  static AffineGenerator from_drive(int n, Mat h, Mat r, Vec v,
                                    GeneratorOptions opts = {});
  static AffineGenerator from_equilibrium(int n, Mat h, Mat r, Vec r_eq,
                                          GeneratorOptions opts = {});

  [[nodiscard]] int qubits() const { return n_; }
  [[nodiscard]] Eigen::Index dim() const { return r_eq_.size(); }
  [[nodiscard]] const Mat& hamiltonian() const { return h_; }
  [[nodiscard]] const Mat& relaxation() const { return r_; }
  [[nodiscard]] const Vec& drive() const { return v_; }
  [[nodiscard]] const Vec& equilibrium() const { return r_eq_; }
  [[nodiscard]] bool unital_allowed() const { return unital_allowed_; }

  /// Same relaxation and equilibrium, different coherent part.
  [[nodiscard]] AffineGenerator with_hamiltonian(Mat h) const;

  /// ṙ at r.
  [[nodiscard]] Vec field(const Vec& r) const;

 private:
  AffineGenerator() = default;
  void validate() const;

  int n_ = 0;
  Mat h_;
  Mat r_;
  Vec v_;
  Vec r_eq_;
  bool unital_allowed_ = false;
};

/// Raw coherence-representation matrices of a Lindblad generator, before any
/// structural validation.
struct BlochMatrices {
  Mat h;  // Tr(−i B_k [H, B_j]) / 2^n
  Mat r;  // Tr(−B_k 𝓡 B_j) / 2^n
  Vec v;  // Tr(B_k 𝓡 I) / 4^n
};

BlochMatrices bloch_matrices(const PauliBasis& basis, const CMat& hamiltonian,
                             const Superoperator& dissipator);

/// Throws ValidationError if H is not Hermitian or the Bloch Hamiltonian part
/// is not antisymmetric, ContractivityViolation if R is not SPD (unless
/// opts.allow_unital and R is PSD).
AffineGenerator lindblad_to_bloch(const PauliBasis& basis,
                                  const CMat& hamiltonian,
                                  const Superoperator& dissipator,
                                  GeneratorOptions opts = {});

/// Σ_j  L_j ρ L_j† − ½ {L_j† L_j, ρ}
Superoperator lindblad_dissipator(std::vector<CMat> jump_operators);

/// r(t) = e^{At}(r0 − r*) + r*  with A = H − R and r* the full fixed point.
AffineMap propagator(const AffineGenerator& gen, double t);

CoherenceVector evolve(const AffineGenerator& gen, const CoherenceVector& r0,
                       double t);

/// Fixed point of the full affine field (H − R) r* + v = 0. Equals r_eq when
/// H r_eq = 0. Throws FixedPointUndefined if H − R is singular and v ≠ 0.
Vec full_fixed_point(const AffineGenerator& gen);

/// p = 1/2^n + 2^n rᵀr
double purity(const CoherenceVector& r);

/// ṗ = −2^{n+1} rᵀ R (r − r_eq); H does not contribute.
double purity_rate(const AffineGenerator& gen, const CoherenceVector& r);

}  // namespace reachset
