// Copyright 2026 The gsic-detect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsic {

/// Bad dimension, out-of-range parameter, or mismatched operands.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a construction parameter t makes some measurement operator
/// indefinite. Carries the first offending operator and its eigenvalue.
class InfeasibleParameter : public std::domain_error {
 public:
  InfeasibleParameter(std::size_t index, double min_eigenvalue, double t)
      : std::domain_error("infeasible t = " + std::to_string(t) +
                          ": operator " + std::to_string(index) +
                          " has min eigenvalue " +
                          std::to_string(min_eigenvalue)),
        index_(index),
        min_eigenvalue_(min_eigenvalue) {}

  std::size_t index() const noexcept { return index_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  std::size_t index_;
  double min_eigenvalue_;
};

/// A quantity that must be real came out with a non-negligible imaginary part.
class NumericIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsic
