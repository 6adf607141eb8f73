// Copyright 2026 The corrq Authors.
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

#ifndef CORRQ_ERROR_HPP_
#define CORRQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace corrq {

// Base class for all corrq errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid caller input: malformed files, inconsistent dimensions, values
// outside the documented domain of an operation, or configured caps exceeded.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// Numerical failure: an iterative method did not converge, or a computed
// quantity drifted past its tolerance. The message carries the residual.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace corrq

#endif  // CORRQ_ERROR_HPP_
