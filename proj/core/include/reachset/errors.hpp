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

#include <stdexcept>
#include <string>

namespace reachset {

// Bad input: shapes, ranges, non-Hermitian matrices, malformed files.
// The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Inputs were well formed but the numerics cannot deliver the requested
// object. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relaxation matrix is not symmetric positive definite, so the free
// relaxation is not strictly contractive.
class ContractivityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FixedPointUndefined : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoUniqueFixedPoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularCombination : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OriginNotControllable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResidualTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Assembled model disagrees with an independent construction of itself.
class ModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace reachset
