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

#ifndef CSBM_MODEL_HPP_
#define CSBM_MODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "csbm/rng.hpp"

namespace csbm {

using Vertex = std::uint32_t;

// Parameters of the censored two-community block model.
//
// Pairs inside community +1 connect with probability p1, inside community -1
// with p2, and across communities with q. Each pair's status is revealed
// independently with probability alpha = min(1, t log(n) / n).
struct ModelParams {
  std::int64_t n = 2;
  double p1 = 0.5;
  double p2 = 0.5;
  double q = 0.5;
  double t = 1.0;

  static ModelParams symmetric(std::int64_t n, double p, double q, double t) {
    return {n, p, p, q, t};
  }

  // Throws ParameterError unless n >= 2, p1, p2, q in (0,1) and t > 0.
  void validate() const;

  // Unclamped reveal intensity t log(n) / n.
  double raw_alpha() const;
  // Reveal probability, clamped to 1.
  double alpha() const;
  bool alpha_clamped() const { return raw_alpha() > 1.0; }
  bool is_symmetric() const { return p1 == p2; }
};

// A +-1 community assignment.
class Labeling {
 public:
  Labeling() = default;
  // Throws ParameterError if any entry is not +1 or -1.
  explicit Labeling(std::vector<int> labels);

  static Labeling constant(std::size_t n, int label);

  std::size_t size() const { return labels_.size(); }
  int operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::int8_t> values() const { return labels_; }

  void set(std::size_t i, int label);
  void flip(std::size_t i) { labels_[i] = static_cast<std::int8_t>(-labels_[i]); }

  // Number of vertices labeled +1.
  std::size_t count_plus() const;
  Labeling negated() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<std::int8_t> labels_;
};

enum class EdgeStatus : std::uint8_t { kAbsent = 0, kPresent = 1 };

struct RevealedPair {
  Vertex u = 0;
  Vertex v = 0;
  EdgeStatus status = EdgeStatus::kAbsent;

  friend bool operator==(const RevealedPair&, const RevealedPair&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  EdgeStatus status = EdgeStatus::kAbsent;
};

// The observed graph: revealed pairs with their present/absent status.
// Censored pairs are not stored. Immutable after construction.
class ObservedGraph {
 public:
  ObservedGraph() = default;
  // Pairs may be given in any order and orientation. Throws ParameterError on
  // self-pairs, duplicates, or vertex ids >= n.
  ObservedGraph(std::int64_t n, std::vector<RevealedPair> pairs);

  std::int64_t num_vertices() const { return n_; }
  std::size_t num_revealed() const { return pairs_.size(); }
  std::size_t num_present() const { return num_present_; }

  // Revealed pairs normalized to u < v and sorted lexicographically.
  std::span<const RevealedPair> pairs() const { return pairs_; }

  // N(u): every revealed partner of u, sorted by vertex id.
  std::span<const Neighbor> neighbors(Vertex u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t num_neighbors(Vertex u) const {
    return offsets_[u + 1] - offsets_[u];
  }
  // Number of present pairs at u.
  std::size_t present_degree(Vertex u) const { return present_degree_[u]; }

  friend bool operator==(const ObservedGraph& a, const ObservedGraph& b) {
    return a.n_ == b.n_ && a.pairs_ == b.pairs_;
  }

 private:
  std::int64_t n_ = 0;
  std::vector<RevealedPair> pairs_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::size_t> present_degree_;
  std::size_t num_present_ = 0;
};

// Independent uniform +-1 labels. Throws ParameterError if n < 2.
Labeling sample_labels(std::int64_t n, Rng& rng);

// Samples the revealed pairs and their statuses given the planted labels.
// Dense pair sweep when alpha > 0.05, geometric skipping over the pair index
// otherwise.
ObservedGraph sample_graph(const ModelParams& params, const Labeling& labels,
                           Rng& rng);

// Text format: "n <n>" header, then one "u v s" line per revealed pair with
// u < v and s = 1 (present) or 0 (absent).
void write_graph(const ObservedGraph& graph, std::ostream& out);
// Throws ParseError (with line number) on malformed input.
ObservedGraph read_graph(std::istream& in);

// Text format: one "i l" line per vertex, l in {+1, -1}.
void write_labels(const Labeling& labels, std::ostream& out);
Labeling read_labels(std::istream& in);

}  // namespace csbm

#endif  // CSBM_MODEL_HPP_
