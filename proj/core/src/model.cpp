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

#include "csbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "csbm/error.hpp"

namespace csbm {
namespace {

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

// Above this reveal probability a full pair sweep is cheaper than skipping.
constexpr double kDenseSweepAlpha = 0.05;

EdgeStatus draw_status(double presence, Rng& rng) {
  return uniform01(rng) < presence ? EdgeStatus::kPresent : EdgeStatus::kAbsent;
}

}  // namespace

void ModelParams::validate() const {
  if (n < 2) throw ParameterError("n must be at least 2");
  if (n > std::numeric_limits<Vertex>::max()) {
    throw ParameterError("n exceeds the supported vertex range");
  }
  if (!open_unit(p1) || !open_unit(p2) || !open_unit(q)) {
    throw ParameterError("p1, p2 and q must lie strictly inside (0,1)");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("t must be positive");
}

double ModelParams::raw_alpha() const {
  const double nd = static_cast<double>(n);
  return t * std::log(nd) / nd;
}

double ModelParams::alpha() const { return std::min(1.0, raw_alpha()); }

Labeling::Labeling(std::vector<int> labels) {
  labels_.reserve(labels.size());
  for (int l : labels) {
    if (l != 1 && l != -1) throw ParameterError("labels must be +1 or -1");
    labels_.push_back(static_cast<std::int8_t>(l));
  }
}

Labeling Labeling::constant(std::size_t n, int label) {
  return Labeling(std::vector<int>(n, label));
}

void Labeling::set(std::size_t i, int label) {
  if (label != 1 && label != -1) throw ParameterError("labels must be +1 or -1");
  labels_.at(i) = static_cast<std::int8_t>(label);
}

std::size_t Labeling::count_plus() const {
  return static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), std::int8_t{1}));
}

Labeling Labeling::negated() const {
  Labeling out = *this;
  for (auto& l : out.labels_) l = static_cast<std::int8_t>(-l);
  return out;
}

ObservedGraph::ObservedGraph(std::int64_t n, std::vector<RevealedPair> pairs)
    : n_(n), pairs_(std::move(pairs)) {
  if (n < 0 || n > std::numeric_limits<Vertex>::max()) {
    throw ParameterError("vertex count out of range");
  }
  for (auto& p : pairs_) {
    if (p.u == p.v) throw ParameterError("self-pair at vertex " + std::to_string(p.u));
    if (p.u > p.v) std::swap(p.u, p.v);
    if (p.v >= n) throw ParameterError("vertex id " + std::to_string(p.v) + " >= n");
  }
  auto key = [](const RevealedPair& p) { return std::pair(p.u, p.v); };
  if (!std::is_sorted(pairs_.begin(), pairs_.end(),
                      [&](const auto& a, const auto& b) { return key(a) < key(b); })) {
    std::sort(pairs_.begin(), pairs_.end(),
              [&](const auto& a, const auto& b) { return key(a) < key(b); });
  }
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (key(pairs_[i]) == key(pairs_[i - 1])) {
      throw ParameterError("duplicate pair {" + std::to_string(pairs_[i].u) + "," +
                           std::to_string(pairs_[i].v) + "}");
    }
  }

  const auto nv = static_cast<std::size_t>(n);
  std::vector<std::size_t> degree(nv, 0);
  present_degree_.assign(nv, 0);
  for (const auto& p : pairs_) {
    ++degree[p.u];
    ++degree[p.v];
    if (p.status == EdgeStatus::kPresent) {
      ++present_degree_[p.u];
      ++present_degree_[p.v];
      ++num_present_;
    }
  }
  offsets_.assign(nv + 1, 0);
  for (std::size_t i = 0; i < nv; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_[nv]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Pairs are sorted by (u, v), so each row is filled in ascending order:
  // entries v < u arrive while scanning earlier rows, entries v > u after.
  for (const auto& p : pairs_) {
    adjacency_[cursor[p.u]++] = {p.v, p.status};
    adjacency_[cursor[p.v]++] = {p.u, p.status};
  }
}

Labeling sample_labels(std::int64_t n, Rng& rng) {
  if (n < 2) throw ParameterError("n must be at least 2");
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = (rng() >> 63) ? 1 : -1;
  return Labeling(std::move(labels));
}

ObservedGraph sample_graph(const ModelParams& params, const Labeling& labels,
                           Rng& rng) {
  params.validate();
  if (static_cast<std::int64_t>(labels.size()) != params.n) {
    throw ParameterError("labeling length does not match n");
  }
  const double alpha = params.alpha();
  const auto n = static_cast<Vertex>(params.n);
  auto presence = [&](Vertex u, Vertex v) {
    const int a = labels[u];
    const int b = labels[v];
    if (a != b) return params.q;
    return a == 1 ? params.p1 : params.p2;
  };

  std::vector<RevealedPair> pairs;
  const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  pairs.reserve(static_cast<std::size_t>(alpha * total * 1.05 + 16));

  if (alpha > kDenseSweepAlpha) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (alpha < 1.0 && uniform01(rng) >= alpha) continue;
        pairs.push_back({u, v, draw_status(presence(u, v), rng)});
      }
    }
  } else {
    // Gaps between revealed pair indices are geometric with parameter alpha.
    const double log_miss = std::log1p(-alpha);
    const std::uint64_t num_pairs =
        static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t index = 0;
    Vertex row = 0;
    std::uint64_t row_start = 0;
    while (true) {
      const double uniform = 1.0 - uniform01(rng);  // (0, 1]
      const double gap = std::floor(std::log(uniform) / log_miss);
      if (gap >= static_cast<double>(num_pairs - index)) break;
      index += static_cast<std::uint64_t>(gap);
      while (index >= row_start + (n - 1 - row)) {
        row_start += n - 1 - row;
        ++row;
      }
      const Vertex col = row + 1 + static_cast<Vertex>(index - row_start);
      pairs.push_back({row, col, draw_status(presence(row, col), rng)});
      ++index;
      if (index >= num_pairs) break;
    }
  }
  return ObservedGraph(params.n, std::move(pairs));
}

void write_graph(const ObservedGraph& graph, std::ostream& out) {
  out << "n " << graph.num_vertices() << '\n';
  for (const auto& p : graph.pairs()) {
    out << p.u << ' ' << p.v << ' '
        << (p.status == EdgeStatus::kPresent ? 1 : 0) << '\n';
  }
}

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

template <typename T>
bool read_exact(std::istringstream& in, T& value) {
  in >> value;
  return static_cast<bool>(in);
}

bool at_end(std::istringstream& in) {
  in >> std::ws;
  return in.eof();
}

}  // namespace

ObservedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::int64_t n = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream fields(line);
    std::string tag;
    if (!read_exact(fields, tag) || tag != "n" || !read_exact(fields, n) ||
        !at_end(fields) || n < 0 ||
        n > std::numeric_limits<Vertex>::max()) {
      throw ParseError(line_no, "expected header 'n <count>'");
    }
    break;
  }
  if (n < 0) throw ParseError(line_no, "missing header 'n <count>'");

  std::vector<RevealedPair> pairs;
  std::vector<std::pair<std::uint64_t, std::size_t>> seen;  // key, line
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream fields(line);
    std::int64_t u = 0;
    std::int64_t v = 0;
    int s = 0;
    if (!read_exact(fields, u) || !read_exact(fields, v) ||
        !read_exact(fields, s) || !at_end(fields)) {
      throw ParseError(line_no, "expected 'u v s'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParseError(line_no, "vertex id out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    if (u > v) throw ParseError(line_no, "pair must be written with u < v");
    if (s != 0 && s != 1) throw ParseError(line_no, "status must be 0 or 1");
    pairs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v),
                     s == 1 ? EdgeStatus::kPresent : EdgeStatus::kAbsent});
    seen.emplace_back((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v),
                      line_no);
  }
  std::stable_sort(seen.begin(), seen.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first) {
      throw ParseError(std::max(seen[i].second, seen[i - 1].second), "duplicate pair");
    }
  }
  return ObservedGraph(n, std::move(pairs));
}

void write_labels(const Labeling& labels, std::ostream& out) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << i << ' ' << (labels[i] > 0 ? "+1" : "-1") << '\n';
  }
}

Labeling read_labels(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream fields(line);
    std::int64_t i = 0;
    int l = 0;
    if (!read_exact(fields, i) || !read_exact(fields, l) || !at_end(fields)) {
      throw ParseError(line_no, "expected 'i l'");
    }
    if (i != static_cast<std::int64_t>(labels.size())) {
      throw ParseError(line_no, "vertex ids must be consecutive from 0");
    }
    if (l != 1 && l != -1) throw ParseError(line_no, "label must be +1 or -1");
    labels.push_back(l);
  }
  return Labeling(std::move(labels));
}

}  // namespace csbm
