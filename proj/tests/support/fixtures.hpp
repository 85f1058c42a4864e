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

#include "reachset/bloch_dynamics.hpp"
#include "reachset/chloroform_model.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset::testing {

inline const PauliBasis& basis2() {
  static const PauliBasis b = PauliBasis::build(2);
  return b;
}

inline const AffineGenerator& chloroform() {
  static const AffineGenerator g = chloroform::assemble_generator(chloroform::RateSet::defaults());
  return g;
}

}  // namespace reachset::testing
