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

#ifndef CSBM_ESTIMATORS_HPP_
#define CSBM_ESTIMATORS_HPP_

#include <cstdint>

#include "csbm/model.hpp"

namespace csbm {

// Counts of u's revealed pairs relative to a reference labeling:
// present/absent to community +1 (d1, d2), then to community -1 (d3, d4).
struct DegreeProfile {
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  std::int64_t d3 = 0;
  std::int64_t d4 = 0;

  std::int64_t total() const { return d1 + d2 + d3 + d4; }
  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

DegreeProfile degree_profile(const ObservedGraph& graph, const Labeling& sigma,
                             Vertex u);

// Log-likelihood ratio of u in community +1 versus -1 given the degree
// profile:
//   d1 log(p1/q) + d2 log((1-p1)/(1-q)) + d3 log(q/p2) + d4 log((1-q)/(1-p2)).
double gamma_score(const DegreeProfile& profile, double p1, double p2,
                   double q);

// Optimal single-vertex decision when every other label is known: +1 iff the
// score against the true labels is >= 0.
Labeling genie_estimate(const ObservedGraph& graph, const Labeling& truth,
                        const ModelParams& params);

// Relabels every vertex by the sign of its score against the frozen initial
// labeling. passes > 1 repeats the refinement using the previous output.
Labeling two_step_refine(const ObservedGraph& graph, const Labeling& initial,
                         const ModelParams& params, int passes = 1);

// +1 iff the present degree is at least alpha n (p1 + p2 + 2q) / 4.
Labeling degree_estimate(const ObservedGraph& graph, const ModelParams& params);

// Label-dependent part of log P(G | sigma): sum over revealed pairs of the log
// presence or absence probability for the pair's community type.
double log_likelihood(const ObservedGraph& graph, const Labeling& sigma,
                      const ModelParams& params);

inline constexpr std::int64_t kMaxExhaustiveVertices = 20;

// Maximum-likelihood labeling over all 2^n assignments. When p1 == p2 the
// global flip is a symmetry and the result has label(0) = +1. Exact
// likelihood ties go to the lexicographically smallest labeling (-1 < +1).
// Throws SizeError for n > 20.
Labeling map_exhaustive(const ObservedGraph& graph, const ModelParams& params);

struct ParameterEstimate {
  double p_hat = 0.0;
  double q_hat = 0.0;
  double edges = 0.0;
  double triangles = 0.0;
};

// Triangles whose three pairs are all present.
std::int64_t count_present_triangles(const ObservedGraph& graph);

// Inverts the edge and triangle moment equations of the symmetric model
//   E = t n log(n) (p + q) / 4,  T = t^3 log^3(n) (p q^2 + p^3 / 3) / 8.
// Throws EstimationError if no admissible (p, q) exists.
ParameterEstimate solve_moment_equations(double edges, double triangles,
                                         std::int64_t n, double t);

// Counts present edges and triangles in the graph, then solves the moment
// equations.
ParameterEstimate estimate_parameters(const ObservedGraph& graph, double t);

}  // namespace csbm

#endif  // CSBM_ESTIMATORS_HPP_
