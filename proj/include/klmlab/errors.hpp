// Copyright 2026 The klmlab Authors
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

namespace klmlab {

/// Operator or state dimensions are inconsistent.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical quality guarantee (trace, positivity, residual) was violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian null space is not one dimensional.
class NonUniqueSteadyStateError : public std::runtime_error {
 public:
  explicit NonUniqueSteadyStateError(int dimension)
      : std::runtime_error("steady state is not unique: null-space dimension is " +
                           std::to_string(dimension)),
        dimension_(dimension) {}

  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// Malformed command line flags or config file.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace klmlab
