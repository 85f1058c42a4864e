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

#include <complex>

#include <Eigen/Dense>

namespace reachset {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// x -> M x + c on coherence or diagonal coordinates.
struct AffineMap {
  Mat linear;
  Vec offset;

  [[nodiscard]] Vec apply(const Vec& x) const { return linear * x + offset; }

  // (this ∘ inner)(x) = this(inner(x))
  [[nodiscard]] AffineMap after(const AffineMap& inner) const {
    return {linear * inner.linear, linear * inner.offset + offset};
  }

  static AffineMap identity(Eigen::Index dim) {
    return {Mat::Identity(dim, dim), Vec::Zero(dim)};
  }
};

}  // namespace reachset
