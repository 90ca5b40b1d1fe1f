// Copyright 2026 The csbm Authors.
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

#ifndef CSBM_ERROR_HPP_
#define CSBM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csbm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range model or method parameters (n < 2, probabilities outside
// (0,1), length mismatches, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A formula is undefined at the given arguments (p == q, zero channel entry).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The eigensolver did not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// Problem too large for an exhaustive routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Moment-based parameter estimation has no admissible solution.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace csbm

#endif  // CSBM_ERROR_HPP_
