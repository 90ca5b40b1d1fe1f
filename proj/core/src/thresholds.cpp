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

#include "csbm/thresholds.hpp"

#include <cmath>
#include <string>

#include "csbm/error.hpp"

namespace csbm {
namespace {

// Distance from a singular configuration below which formulas are rejected.
constexpr double kSingularGap = 1e-12;

void require_probability(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(name) + " must lie strictly inside (0,1)");
  }
}

void require_distinct(double p, double q) {
  if (std::abs(p - q) <= kSingularGap) {
    throw DomainError("p and q must differ");
  }
}

// Root of a nondecreasing function on [lo, hi] by bisection; clamps to the
// boundary when the sign does not change. Used on derivatives of convex
// objectives, whose values are far better conditioned near the optimum than
// the objective itself.
template <typename F>
double bisect_increasing(F&& derivative, double lo, double hi, double tol) {
  if (derivative(lo) >= 0.0) return lo;
  if (derivative(hi) <= 0.0) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (derivative(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void require_positive_channels(const std::array<double, 4>& a,
                               const std::array<double, 4>& b) {
  for (int i = 0; i < 4; ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0) || !std::isfinite(a[i]) ||
        !std::isfinite(b[i])) {
      throw DomainError("channel entries must be positive and finite");
    }
  }
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
}

double tilted_sum(const std::array<double, 4>& a, const std::array<double, 4>& b,
                  double x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::pow(a[i], x) * std::pow(b[i], 1.0 - x);
  return sum;
}

// x a + (1-x) b - a^x b^(1-x), without the cancellation of the direct form.
// With L = log(a/b) this is b (x expm1(L) - expm1(x L)) = b sum_{k>=2}
// (x - x^k) L^k / k!, which is O(L^2) for nearby a and b.
double tilted_gap_term(double a, double b, double x) {
  const double l = std::log(a / b);
  if (std::abs(l) >= 0.5) return b * (x * std::expm1(l) - std::expm1(x * l));
  double sum = 0.0;
  double power = l;  // l^k / k!
  double xk = x;     // x^k
  for (int k = 2; k < 40; ++k) {
    power *= l / k;
    xk *= x;
    const double term = (x - xk) * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return b * sum;
}

double tilted_gap(const std::array<double, 4>& a, const std::array<double, 4>& b,
                  double x) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += tilted_gap_term(a[i], b[i], x);
  return sum;
}

}  // namespace

double kl_divergence(double p, double q) {
  require_probability(p, "p");
  require_probability(q, "q");
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double encoding_weight(double p, double q) {
  require_probability(p, "p");
  require_probability(q, "q");
  require_distinct(p, q);
  return std::log((1.0 - q) / (1.0 - p)) / std::log(p / q);
}

double threshold_symmetric(double p, double q) {
  require_probability(p, "p");
  require_probability(q, "q");
  require_distinct(p, q);
  // sqrt(a) - sqrt(b) = (a - b) / (sqrt(a) + sqrt(b)) avoids cancellation.
  const double present = (p - q) / (std::sqrt(p) + std::sqrt(q));
  const double absent = (p - q) / (std::sqrt(1.0 - q) + std::sqrt(1.0 - p));
  return 2.0 / (present * present + absent * absent);
}

ChannelPair ChannelPair::from_model(double p1, double p2, double q) {
  return {{p1, 1.0 - p1, q, 1.0 - q}, {q, 1.0 - q, p2, 1.0 - p2}};
}

ChMinimum hellinger_ch_min(const ChannelPair& pair, double tol) {
  require_tol(tol);
  require_positive_channels(pair.c1, pair.c2);
  if (pair.c1 == pair.c2) {
    return {0.5, tilted_sum(pair.c1, pair.c2, 0.5)};
  }
  // f'(x) = sum_i c1_i^x c2_i^(1-x) log(c1_i / c2_i) is nondecreasing.
  const double x = bisect_increasing(
      [&](double s) {
        double d = 0.0;
        for (int i = 0; i < 4; ++i) {
          d += std::pow(pair.c1[i], s) * std::pow(pair.c2[i], 1.0 - s) *
               std::log(pair.c1[i] / pair.c2[i]);
        }
        return d;
      },
      0.0, 1.0, tol);
  return {x, tilted_sum(pair.c1, pair.c2, x)};
}

double threshold_general(double p1, double p2, double q, double tol) {
  require_probability(p1, "p1");
  require_probability(p2, "p2");
  require_probability(q, "q");
  if (std::abs(p1 - q) <= kSingularGap && std::abs(p2 - q) <= kSingularGap) {
    throw DomainError("p1 == p2 == q: communities are indistinguishable");
  }
  // 1 - f/2 equals half the tilted gap since both channels sum to 2.
  const ChannelPair pair = ChannelPair::from_model(p1, p2, q);
  const ChMinimum m = hellinger_ch_min(pair, tol);
  return 2.0 / tilted_gap(pair.c1, pair.c2, m.x_star);
}

ChDivergence ch_divergence_full(const std::array<double, 4>& a,
                                const std::array<double, 4>& b, double tol) {
  require_tol(tol);
  require_positive_channels(a, b);
  if (a == b) return {0.5, 0.0};
  // The objective is concave; minus its derivative is nondecreasing.
  const double x = bisect_increasing(
      [&](double s) {
        double d = 0.0;
        for (int i = 0; i < 4; ++i) {
          d += std::pow(a[i], s) * std::pow(b[i], 1.0 - s) * std::log(a[i] / b[i]) -
               (a[i] - b[i]);
        }
        return d;
      },
      0.0, 1.0, tol);
  return {x, tilted_gap(a, b, x)};
}

double ch_divergence(const std::array<double, 4>& a,
                     const std::array<double, 4>& b, double tol) {
  return ch_divergence_full(a, b, tol).value;
}

}  // namespace csbm
