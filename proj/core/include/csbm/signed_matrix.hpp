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

#ifndef CSBM_SIGNED_MATRIX_HPP_
#define CSBM_SIGNED_MATRIX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "csbm/model.hpp"

namespace csbm {

// Sparse symmetric matrix with entry 1 on present pairs, -y on absent pairs
// and 0 elsewhere (including the diagonal). Stored in CSR form with both
// orientations of every pair.
class SignedMatrix {
 public:
  // Throws DomainError if y <= 0.
  static SignedMatrix build(const ObservedGraph& graph, double y);

  std::int64_t dimension() const { return n_; }
  double weight() const { return y_; }
  // Stored nonzeros, counting both orientations.
  std::size_t nonzeros() const { return values_.size(); }

  // out = M * v. Throws ParameterError on dimension mismatch.
  void multiply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> multiply(std::span<const double> v) const;

  // -M, used when p < q.
  SignedMatrix negated() const;

  // Max absolute row sum; an upper bound on the spectral radius.
  double max_abs_row_sum() const;

  // Entry (i, j); O(log deg).
  double at(Vertex i, Vertex j) const;

 private:
  std::int64_t n_ = 0;
  double y_ = 1.0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> columns_;
  std::vector<double> values_;
};

}  // namespace csbm

#endif  // CSBM_SIGNED_MATRIX_HPP_
