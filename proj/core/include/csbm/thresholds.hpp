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

#ifndef CSBM_THRESHOLDS_HPP_
#define CSBM_THRESHOLDS_HPP_

#include <array>

namespace csbm {

inline constexpr double kDefaultSearchTol = 1e-10;

// Bernoulli Kullback-Leibler divergence D(p || q) in nats.
double kl_divergence(double p, double q);

// Weight y = log((1-q)/(1-p)) / log(p/q) given to absent pairs in the signed
// adjacency matrix. Strictly positive; symmetric in (p, q).
// Throws DomainError when p == q or either argument is outside (0,1).
double encoding_weight(double p, double q);

// Exact-recovery threshold of the symmetric model:
//   2 / ((sqrt(p) - sqrt(q))^2 + (sqrt(1-q) - sqrt(1-p))^2).
double threshold_symmetric(double p, double q);

// Per-vertex observation channels of the two communities:
// c1 = (p1, 1-p1, q, 1-q), c2 = (q, 1-q, p2, 1-p2).
struct ChannelPair {
  std::array<double, 4> c1{};
  std::array<double, 4> c2{};

  static ChannelPair from_model(double p1, double p2, double q);
};

struct ChMinimum {
  double x_star = 0.5;
  double value = 0.0;
};

// Minimizes the convex f(x) = sum_i c1_i^x c2_i^(1-x) over [0,1] by
// bisection on f'. x_star is within tol of the minimizer. Identical channels
// report x_star = 0.5.
ChMinimum hellinger_ch_min(const ChannelPair& pair,
                           double tol = kDefaultSearchTol);

// General threshold [1 - min_x f(x) / 2]^-1. Reduces to threshold_symmetric
// when p1 == p2. Throws DomainError when p1 == p2 == q.
double threshold_general(double p1, double p2, double q,
                         double tol = kDefaultSearchTol);

struct ChDivergence {
  double x_star = 0.5;
  double value = 0.0;
};

// Chernoff-Hellinger divergence
//   max_x sum_i (x a_i + (1-x) b_i - a_i^x b_i^(1-x)).
// With a = (t/2) c1 and b = (t/2) c2 this equals t / threshold_general.
ChDivergence ch_divergence_full(const std::array<double, 4>& a,
                                const std::array<double, 4>& b,
                                double tol = kDefaultSearchTol);
double ch_divergence(const std::array<double, 4>& a,
                     const std::array<double, 4>& b,
                     double tol = kDefaultSearchTol);

}  // namespace csbm

#endif  // CSBM_THRESHOLDS_HPP_
