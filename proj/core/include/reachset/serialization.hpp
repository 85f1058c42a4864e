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

#include <iosfwd>
#include <string>
#include <vector>

#include "reachset/bloch_dynamics.hpp"
#include "reachset/chloroform_model.hpp"
#include "reachset/pauli_space.hpp"

namespace reachset::io {

// All matrices are row-major and indexed in lex-IXYZ order with the identity
// dropped. Malformed input throws ValidationError.

/// { "n": int, "order": "lex-IXYZ", "r": [...] }
std::string coherence_to_json(const CoherenceVector& v);
CoherenceVector coherence_from_json(const std::string& text);

/// { "n": int, "H": [[...]], "R": [[...]], "r_eq": [...] }
std::string generator_to_json(const AffineGenerator& gen);
AffineGenerator generator_from_json(const std::string& text);

/// { "r": [14], "J_hz": f, "eps_C": f, "eps_H": f }
std::string rates_to_json(const chloroform::RateSet& rates);
chloroform::RateSet rates_from_json(const std::string& text);

/// Header `t,<label>,...`, one row per time, %.17g floats.
std::string trajectory_to_csv(const chloroform::TrajectorySample& traj);
chloroform::TrajectorySample trajectory_from_csv(const std::string& text);

std::string format_double(double x);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace reachset::io
