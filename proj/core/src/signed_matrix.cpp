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

#include "csbm/signed_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "csbm/error.hpp"

namespace csbm {

SignedMatrix SignedMatrix::build(const ObservedGraph& graph, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("encoding weight y must be positive");
  }
  SignedMatrix m;
  m.n_ = graph.num_vertices();
  m.y_ = y;
  const auto n = static_cast<std::size_t>(m.n_);
  m.offsets_.assign(n + 1, 0);
  m.columns_.reserve(2 * graph.num_revealed());
  m.values_.reserve(2 * graph.num_revealed());
  for (std::size_t u = 0; u < n; ++u) {
    for (const Neighbor& nb : graph.neighbors(static_cast<Vertex>(u))) {
      m.columns_.push_back(nb.vertex);
      m.values_.push_back(nb.status == EdgeStatus::kPresent ? 1.0 : -y);
    }
    m.offsets_[u + 1] = m.columns_.size();
  }
  return m;
}

void SignedMatrix::multiply(std::span<const double> v, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(n_);
  if (v.size() != n || out.size() != n) {
    throw ParameterError("matvec dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      acc += values_[k] * v[columns_[k]];
    }
    out[i] = acc;
  }
}

std::vector<double> SignedMatrix::multiply(std::span<const double> v) const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  multiply(v, out);
  return out;
}

SignedMatrix SignedMatrix::negated() const {
  SignedMatrix m = *this;
  for (auto& x : m.values_) x = -x;
  return m;
}

double SignedMatrix::max_abs_row_sum() const {
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    double row = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      row += std::abs(values_[k]);
    }
    best = std::max(best, row);
  }
  return best;
}

double SignedMatrix::at(Vertex i, Vertex j) const {
  if (i >= n_ || j >= n_) throw ParameterError("index out of range");
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

}  // namespace csbm
