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

#include "csbm/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "csbm/error.hpp"
#include "csbm/thresholds.hpp"

namespace csbm {

SpectralResult spectral_estimate_full(const ObservedGraph& graph, double p,
                                      double q, const EigenOptions& options,
                                      Rng& rng) {
  const double y = encoding_weight(p, q);
  SignedMatrix a = SignedMatrix::build(graph, y);
  if (p < q) a = a.negated();
  EigenResult top = top_eigenpairs(a, 1, options, rng);
  const auto& u = top.pairs.front().vector;
  std::vector<int> labels(u.size());
  std::transform(u.begin(), u.end(), labels.begin(), sign_of);
  return {Labeling(std::move(labels)), std::move(top.pairs.front()), top.iterations};
}

Labeling spectral_estimate(const ObservedGraph& graph, double p, double q,
                           const EigenOptions& options, Rng& rng) {
  return spectral_estimate_full(graph, p, q, options, rng).labels;
}

std::vector<double> combine_eigenvectors(const EigenResult& top_two,
                                         double gamma1, double gamma2) {
  if (top_two.pairs.size() < 2) {
    throw ParameterError("need the top two eigenpairs");
  }
  const auto& u1 = top_two.pairs[0].vector;
  const auto& u2 = top_two.pairs[1].vector;
  std::vector<double> score(u1.size());
  for (std::size_t i = 0; i < score.size(); ++i) {
    score[i] = gamma1 * u1[i] + gamma2 * u2[i];
  }
  return score;
}

Labeling threshold_scores(std::span<const double> scores, double r) {
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = sign_of(scores[i] - r);
  return Labeling(std::move(labels));
}

Labeling spectral_general(const ObservedGraph& graph, double y, double r,
                          double gamma1, double gamma2,
                          const EigenOptions& options, Rng& rng) {
  if (gamma1 == 0.0 && gamma2 == 0.0) {
    throw ParameterError("gamma1 and gamma2 must not both be zero");
  }
  const SignedMatrix a = SignedMatrix::build(graph, y);
  if (a.dimension() < 2) throw ParameterError("need at least two vertices");
  const EigenResult top = top_eigenpairs(a, 2, options, rng);
  return threshold_scores(combine_eigenvectors(top, gamma1, gamma2), r);
}

ExpectedSpectrum expected_matrix_spectrum(const ModelParams& params,
                                          const Labeling& labels) {
  params.validate();
  if (!params.is_symmetric()) {
    throw ParameterError("expected spectrum requires p1 == p2");
  }
  if (static_cast<std::int64_t>(labels.size()) != params.n) {
    throw ParameterError("labeling length does not match n");
  }
  const double p = params.p1;
  const double q = params.q;
  if (p == q) throw DomainError("p and q must differ");
  const double n1 = static_cast<double>(labels.count_plus());
  const double n2 = static_cast<double>(labels.size()) - n1;
  if (n1 < 1.0 || n2 < 1.0) {
    throw ParameterError("both communities must be nonempty");
  }

  // alpha (p - y (1 - p)) = alpha D(p||q) / log(p/q), and likewise across.
  const double log_ratio = std::log(p / q);
  const double alpha = params.alpha();
  ExpectedSpectrum out;
  out.same_entry = alpha * kl_divergence(p, q) / log_ratio;
  out.cross_entry = -alpha * kl_divergence(q, p) / log_ratio;

  // Eigenvectors are constant on communities: with w_c = sqrt(n_c) x_c the
  // problem reduces to the symmetric 2x2 matrix below.
  const double a11 = n1 * out.same_entry;
  const double a22 = n2 * out.same_entry;
  const double a12 = std::sqrt(n1 * n2) * out.cross_entry;
  const double mean = 0.5 * (a11 + a22);
  const double radius = std::hypot(0.5 * (a11 - a22), a12);
  out.lambda1_star = mean + radius;
  out.lambda2_star = mean - radius;

  auto eigvec = [&](double lambda) {
    // Two equivalent forms; take the better conditioned one.
    double w1 = a12;
    double w2 = lambda - a11;
    const double alt1 = lambda - a22;
    const double alt2 = a12;
    if (std::hypot(alt1, alt2) > std::hypot(w1, w2)) {
      w1 = alt1;
      w2 = alt2;
    }
    const double len = std::hypot(w1, w2);
    if (len == 0.0) return std::pair(1.0, 0.0);  // diagonal case
    return std::pair(w1 / len, w2 / len);
  };
  auto [w11, w12] = eigvec(out.lambda1_star);
  auto [w21, w22] = eigvec(out.lambda2_star);
  if (radius == 0.0) {
    w11 = 1.0; w12 = 0.0; w21 = 0.0; w22 = 1.0;
  }
  // u1 positive on community +1; u2 with nonnegative entry sum.
  if (w11 < 0.0 || (w11 == 0.0 && w12 < 0.0)) {
    w11 = -w11;
    w12 = -w12;
  }
  if (w21 * std::sqrt(n1) + w22 * std::sqrt(n2) < 0.0) {
    w21 = -w21;
    w22 = -w22;
  }
  const double s1 = 1.0 / std::sqrt(n1);
  const double s2 = 1.0 / std::sqrt(n2);
  out.u1_star.resize(labels.size());
  out.u2_star.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool plus = labels[i] > 0;
    out.u1_star[i] = plus ? w11 * s1 : w12 * s2;
    out.u2_star[i] = plus ? w21 * s1 : w22 * s2;
  }
  return out;
}

double entrywise_residual(std::span<const double> u, const SignedMatrix& matrix,
                          std::span<const double> u_star, double lambda_star) {
  if (lambda_star == 0.0) throw DomainError("lambda_star must be nonzero");
  if (u.size() != u_star.size() ||
      static_cast<std::int64_t>(u.size()) != matrix.dimension()) {
    throw ParameterError("dimension mismatch");
  }
  const std::vector<double> projected = matrix.multiply(u_star);
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double target = projected[i] / lambda_star;
    plus = std::max(plus, std::abs(u[i] - target));
    minus = std::max(minus, std::abs(u[i] + target));
  }
  return std::min(plus, minus);
}

}  // namespace csbm
