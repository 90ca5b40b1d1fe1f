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

#include "csbm/estimators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "csbm/error.hpp"

namespace csbm {
namespace {

void require_probabilities(double p1, double p2, double q) {
  for (double x : {p1, p2, q}) {
    if (!(x > 0.0 && x < 1.0)) {
      throw DomainError("p1, p2 and q must lie strictly inside (0,1)");
    }
  }
}

void require_length(const ObservedGraph& graph, const Labeling& sigma) {
  if (static_cast<std::int64_t>(sigma.size()) != graph.num_vertices()) {
    throw ParameterError("labeling length does not match the graph");
  }
}

// Score weights for (d1, d2, d3, d4).
std::array<double, 4> score_weights(double p1, double p2, double q) {
  require_probabilities(p1, p2, q);
  return {std::log(p1 / q), std::log((1.0 - p1) / (1.0 - q)), std::log(q / p2),
          std::log((1.0 - q) / (1.0 - p2))};
}

double weighted(const DegreeProfile& d, const std::array<double, 4>& w) {
  return static_cast<double>(d.d1) * w[0] + static_cast<double>(d.d2) * w[1] +
         static_cast<double>(d.d3) * w[2] + static_cast<double>(d.d4) * w[3];
}

Labeling refine_once(const ObservedGraph& graph, const Labeling& reference,
                     const std::array<double, 4>& weights) {
  std::vector<int> out(reference.size());
  for (std::size_t u = 0; u < out.size(); ++u) {
    const DegreeProfile d = degree_profile(graph, reference, static_cast<Vertex>(u));
    out[u] = weighted(d, weights) >= 0.0 ? 1 : -1;
  }
  return Labeling(std::move(out));
}

// Pair categories for the likelihood: {same +1, same -1, cross} x
// {present, absent}.
enum Category : int {
  kPresentPlus,
  kPresentMinus,
  kPresentCross,
  kAbsentPlus,
  kAbsentMinus,
  kAbsentCross,
  kNumCategories,
};

int category(int a, int b, EdgeStatus s) {
  const int type = a != b ? 2 : (a > 0 ? 0 : 1);
  return type + (s == EdgeStatus::kPresent ? 0 : 3);
}

using CategoryCounts = std::array<std::int64_t, kNumCategories>;

// Log-likelihood as a function of category counts. Categories whose rates
// coincide are merged before the logs are weighted, so labelings with equal
// merged counts get bit-identical values.
class LikelihoodTable {
 public:
  explicit LikelihoodTable(const ModelParams& params) {
    require_probabilities(params.p1, params.p2, params.q);
    const std::array<double, kNumCategories> rates = {
        params.p1,       params.p2,       params.q,
        1.0 - params.p1, 1.0 - params.p2, 1.0 - params.q};
    for (int c = 0; c < kNumCategories; ++c) {
      int found = -1;
      for (std::size_t b = 0; b < bucket_rate_.size(); ++b) {
        if (std::abs(bucket_rate_[b] - rates[c]) <= 1e-12) {
          found = static_cast<int>(b);
          break;
        }
      }
      if (found < 0) {
        found = static_cast<int>(bucket_rate_.size());
        bucket_rate_.push_back(rates[c]);
        bucket_log_.push_back(std::log(rates[c]));
      }
      bucket_of_[c] = found;
    }
  }

  double evaluate(const CategoryCounts& counts) const {
    std::array<std::int64_t, kNumCategories> merged{};
    for (int c = 0; c < kNumCategories; ++c) merged[bucket_of_[c]] += counts[c];
    double ll = 0.0;
    for (std::size_t b = 0; b < bucket_log_.size(); ++b) {
      ll += static_cast<double>(merged[b]) * bucket_log_[b];
    }
    return ll;
  }

 private:
  std::array<int, kNumCategories> bucket_of_{};
  std::vector<double> bucket_rate_;
  std::vector<double> bucket_log_;
};

CategoryCounts count_categories(const ObservedGraph& graph, const Labeling& sigma) {
  CategoryCounts counts{};
  for (const auto& p : graph.pairs()) {
    ++counts[category(sigma[p.u], sigma[p.v], p.status)];
  }
  return counts;
}

}  // namespace

DegreeProfile degree_profile(const ObservedGraph& graph, const Labeling& sigma,
                             Vertex u) {
  require_length(graph, sigma);
  if (u >= graph.num_vertices()) throw ParameterError("vertex out of range");
  DegreeProfile d;
  for (const Neighbor& nb : graph.neighbors(u)) {
    const bool present = nb.status == EdgeStatus::kPresent;
    if (sigma[nb.vertex] > 0) {
      (present ? d.d1 : d.d2) += 1;
    } else {
      (present ? d.d3 : d.d4) += 1;
    }
  }
  return d;
}

double gamma_score(const DegreeProfile& profile, double p1, double p2, double q) {
  return weighted(profile, score_weights(p1, p2, q));
}

Labeling genie_estimate(const ObservedGraph& graph, const Labeling& truth,
                        const ModelParams& params) {
  require_length(graph, truth);
  return refine_once(graph, truth, score_weights(params.p1, params.p2, params.q));
}

Labeling two_step_refine(const ObservedGraph& graph, const Labeling& initial,
                         const ModelParams& params, int passes) {
  require_length(graph, initial);
  if (passes < 1) throw ParameterError("passes must be at least 1");
  const auto weights = score_weights(params.p1, params.p2, params.q);
  Labeling current = initial;
  for (int i = 0; i < passes; ++i) current = refine_once(graph, current, weights);
  return current;
}

Labeling degree_estimate(const ObservedGraph& graph, const ModelParams& params) {
  params.validate();
  if (graph.num_vertices() != params.n) {
    throw ParameterError("graph size does not match n");
  }
  const double cutoff = params.alpha() * static_cast<double>(params.n) *
                        (params.p1 + params.p2 + 2.0 * params.q) / 4.0;
  std::vector<int> out(static_cast<std::size_t>(params.n));
  for (std::size_t u = 0; u < out.size(); ++u) {
    out[u] = static_cast<double>(graph.present_degree(static_cast<Vertex>(u))) >= cutoff
                 ? 1
                 : -1;
  }
  return Labeling(std::move(out));
}

double log_likelihood(const ObservedGraph& graph, const Labeling& sigma,
                      const ModelParams& params) {
  require_length(graph, sigma);
  return LikelihoodTable(params).evaluate(count_categories(graph, sigma));
}

Labeling map_exhaustive(const ObservedGraph& graph, const ModelParams& params) {
  const std::int64_t n = graph.num_vertices();
  if (n > kMaxExhaustiveVertices) {
    throw SizeError("exhaustive search supports at most " +
                    std::to_string(kMaxExhaustiveVertices) + " vertices");
  }
  if (n == 0) return Labeling();
  const LikelihoodTable table(params);

  // With p1 == p2 the likelihood is invariant under a global flip, so vertex 0
  // is fixed to +1. Otherwise all 2^n labelings are searched. Free vertex v
  // owns bit (n - 1 - v) of the mask, so numeric order of masks is
  // lexicographic order of labelings.
  const bool fix_first = params.is_symmetric();
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  if (fix_first) labels[0] = 1;
  Labeling sigma(labels);
  CategoryCounts counts = count_categories(graph, sigma);
  std::uint32_t mask = 0;
  double best = table.evaluate(counts);
  std::uint32_t best_mask = 0;

  const auto free_bits = static_cast<std::uint32_t>(fix_first ? n - 1 : n);
  const std::uint32_t total = 1u << free_bits;
  for (std::uint32_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const auto v = static_cast<Vertex>(n - 1 - bit);
    const int old_label = sigma[v];
    for (const Neighbor& nb : graph.neighbors(v)) {
      const int other = sigma[nb.vertex];
      --counts[category(old_label, other, nb.status)];
      ++counts[category(-old_label, other, nb.status)];
    }
    sigma.flip(v);
    mask ^= 1u << bit;
    const double ll = table.evaluate(counts);
    if (ll > best || (ll == best && mask < best_mask)) {
      best = ll;
      best_mask = mask;
    }
  }

  for (std::int64_t v = fix_first ? 1 : 0; v < n; ++v) {
    labels[static_cast<std::size_t>(v)] = (best_mask >> (n - 1 - v)) & 1u ? 1 : -1;
  }
  return Labeling(std::move(labels));
}

std::int64_t count_present_triangles(const ObservedGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.num_vertices());
  // Forward adjacency: present partners with larger id, ascending.
  std::vector<std::vector<Vertex>> forward(n);
  for (const auto& p : graph.pairs()) {
    if (p.status == EdgeStatus::kPresent) forward[p.u].push_back(p.v);
  }
  std::int64_t triangles = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& fu = forward[u];
    for (Vertex v : fu) {
      const auto& fv = forward[v];
      auto a = std::upper_bound(fu.begin(), fu.end(), v);
      auto b = fv.begin();
      while (a != fu.end() && b != fv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++triangles;
          ++a;
          ++b;
        }
      }
    }
  }
  return triangles;
}

ParameterEstimate solve_moment_equations(double edges, double triangles,
                                         std::int64_t n, double t) {
  if (n < 2) throw EstimationError("n must be at least 2");
  if (!(t > 0.0)) throw EstimationError("t must be positive");
  if (!(edges > 0.0)) throw EstimationError("no present edges");
  const double log_n = std::log(static_cast<double>(n));
  const double sum = 4.0 * edges / (t * static_cast<double>(n) * log_n);
  if (!(sum > 0.0 && sum < 2.0)) {
    throw EstimationError("edge count implies p + q = " + std::to_string(sum) +
                          ", outside (0, 2)");
  }
  const double target = 8.0 * triangles / (t * t * t * log_n * log_n * log_n);
  // g(p) = p (s - p)^2 + p^3 / 3 has g'(p) = (s - 2p)^2 >= 0.
  auto g = [sum](double p) { return p * (sum - p) * (sum - p) + p * p * p / 3.0; };
  double lo = std::max(0.0, sum - 1.0);
  double hi = std::min(1.0, sum);
  if (target < g(lo) || target > g(hi)) {
    throw EstimationError("triangle count has no admissible solution");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  const double p_hat = 0.5 * (lo + hi);
  const double q_hat = sum - p_hat;
  if (!(p_hat > 0.0 && p_hat < 1.0 && q_hat > 0.0 && q_hat < 1.0)) {
    throw EstimationError("estimated parameters fall outside (0,1)");
  }
  return {p_hat, q_hat, edges, triangles};
}

ParameterEstimate estimate_parameters(const ObservedGraph& graph, double t) {
  if (graph.num_present() == 0) throw EstimationError("graph has no present pairs");
  return solve_moment_equations(static_cast<double>(graph.num_present()),
                                static_cast<double>(count_present_triangles(graph)),
                                graph.num_vertices(), t);
}

}  // namespace csbm
