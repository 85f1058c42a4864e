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

#include "reachset/diag_projection.hpp"

#include <algorithm>
#include <string>

#include "reachset/errors.hpp"

namespace reachset {
namespace {

std::vector<std::vector<int>> z_supports(int n) {
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> qubits;
    for (int q = 0; q < n; ++q) {
      if (mask & (1 << q)) qubits.push_back(q);
    }
    subsets.push_back(std::move(qubits));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return subsets;
}

}  // namespace

std::vector<int> diag_slots(int n) {
  if (n < 1 || n > kMaxQubits) throw SizeError("qubit count out of range");
  std::vector<int> slots;
  for (const auto& support : z_supports(n)) {
    int index = 0;
    for (int q : support) index += 3 << (2 * (n - 1 - q));  // 'Z' is digit 3
    slots.push_back(index - 1);
  }
  return slots;
}

std::vector<std::string> diag_labels(int n) {
  std::vector<std::string> labels;
  for (const auto& support : z_supports(n)) {
    std::string label(static_cast<std::size_t>(n), 'I');
    for (int q : support) label[static_cast<std::size_t>(q)] = 'Z';
    labels.push_back(std::move(label));
  }
  return labels;
}

CoherenceVector embed(const DiagonalVector& x) {
  const auto slots = diag_slots(x.n);
  if (x.x.size() != static_cast<Eigen::Index>(slots.size())) {
    throw ValidationError("diagonal vector length does not match n");
  }
  auto r = CoherenceVector::zero(x.n);
  for (std::size_t i = 0; i < slots.size(); ++i) r.r(slots[i]) = x.x(static_cast<Eigen::Index>(i));
  return r;
}

DiagonalVector restrict_to_diagonal(const CoherenceVector& r) {
  const auto slots = diag_slots(r.n);
  return {r.n, restrict_vector(r.r, slots)};
}

Mat restrict_matrix(const Mat& m, std::span<const int> slots) {
  const auto k = static_cast<Eigen::Index>(slots.size());
  Mat out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(slots[i], slots[j]);
  }
  return out;
}

Vec restrict_vector(const Vec& v, std::span<const int> slots) {
  Vec out(static_cast<Eigen::Index>(slots.size()));
  for (std::size_t i = 0; i < slots.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(slots[i]);
  return out;
}

ProjectedControl project_control(const AffineGenerator& gen, const UnitaryRep& control) {
  if (control.m.rows() != gen.dim()) throw ValidationError("control and generator sizes differ");
  const auto slots = diag_slots(gen.qubits());
  const Mat& u = control.m;
  const Mat rotated = u.transpose() * gen.relaxation() * u;
  const Vec drive = u.transpose() * gen.drive();
  return {restrict_matrix(rotated, slots), restrict_vector(drive, slots)};
}

DiagonalVector projected_field(const AffineGenerator& gen, const UnitaryRep& control,
                               const DiagonalVector& x) {
  const auto pc = project_control(gen, control);
  if (x.x.size() != pc.b.size()) throw ValidationError("diagonal vector length mismatch");
  return {x.n, pc.field(x.x)};
}

std::vector<DiagonalVector> direction_set(const AffineGenerator& gen,
                                          std::span<const UnitaryRep> controls,
                                          const DiagonalVector& x) {
  std::vector<DiagonalVector> out;
  out.reserve(controls.size());
  for (const auto& u : controls) out.push_back(projected_field(gen, u, x));
  return out;
}

}  // namespace reachset
