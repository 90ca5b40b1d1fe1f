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

#include "oracles.hpp"

#include <cmath>
#include <limits>

namespace csbm::oracle {

Eigen::MatrixXd dense_signed(const ObservedGraph& graph, double y) {
  const auto n = static_cast<Eigen::Index>(graph.num_vertices());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : graph.pairs()) {
    const double v = p.status == EdgeStatus::kPresent ? 1.0 : -y;
    m(p.u, p.v) = v;
    m(p.v, p.u) = v;
  }
  return m;
}

Eigen::MatrixXd dense_expected(const ModelParams& params, const Labeling& labels) {
  const double p = params.p1;
  const double q = params.q;
  const double y = std::log((1.0 - q) / (1.0 - p)) / std::log(p / q);
  const double alpha = params.alpha();
  const double same = alpha * (p - y * (1.0 - p));
  const double cross = alpha * (q - y * (1.0 - q));
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]
                    ? same
                    : cross;
    }
  }
  return m;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense_eigen(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m);
}

std::array<double, 2> grid_min_tilted_sum(const std::array<double, 4>& c1,
                                          const std::array<double, 4>& c2,
                                          double step) {
  const auto steps = static_cast<long>(std::llround(1.0 / step));
  double best_x = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (long k = 0; k <= steps; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(steps);
    double f = 0.0;
    for (int i = 0; i < 4; ++i) f += std::pow(c1[i], x) * std::pow(c2[i], 1.0 - x);
    if (f < best) {
      best = f;
      best_x = x;
    }
  }
  return {best_x, best};
}

double brute_log_likelihood(const ObservedGraph& graph, const Labeling& sigma,
                            double p1, double p2, double q) {
  double ll = 0.0;
  for (const auto& pair : graph.pairs()) {
    const int a = sigma[pair.u];
    const int b = sigma[pair.v];
    const double rate = a != b ? q : (a > 0 ? p1 : p2);
    ll += std::log(pair.status == EdgeStatus::kPresent ? rate : 1.0 - rate);
  }
  return ll;
}

int likelihood_flip_decision(const ObservedGraph& graph, const Labeling& truth,
                             Vertex u, double p1, double p2, double q) {
  Labeling plus = truth;
  plus.set(u, 1);
  Labeling minus = truth;
  minus.set(u, -1);
  // Only pairs at u differ between the two labelings.
  double diff = 0.0;
  for (const auto& pair : graph.pairs()) {
    if (pair.u != u && pair.v != u) continue;
    const Vertex other = pair.u == u ? pair.v : pair.u;
    for (int side : {1, -1}) {
      const Labeling& s = side > 0 ? plus : minus;
      const int a = s[u];
      const int b = s[other];
      const double rate = a != b ? q : (a > 0 ? p1 : p2);
      diff += side * std::log(pair.status == EdgeStatus::kPresent ? rate : 1.0 - rate);
    }
  }
  return diff >= 0.0 ? 1 : -1;
}

double brute_max_log_likelihood(const ObservedGraph& graph, double p1, double p2,
                                double q) {
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<int> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = (mask >> v) & 1 ? 1 : -1;
    best = std::max(best, brute_log_likelihood(graph, Labeling(labels), p1, p2, q));
  }
  return best;
}

std::int64_t brute_triangles(const ObservedGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& p : graph.pairs()) {
    if (p.status == EdgeStatus::kPresent) adj[p.u][p.v] = adj[p.v][p.u] = 1;
  }
  std::int64_t count = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!adj[a][b]) continue;
      for (std::size_t c = b + 1; c < n; ++c) count += adj[a][c] && adj[b][c];
    }
  }
  return count;
}

double binomial_sd(double trials, double prob) {
  return std::sqrt(trials * prob * (1.0 - prob));
}

}  // namespace csbm::oracle
