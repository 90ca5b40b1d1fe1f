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

#ifndef CSBM_SPECTRAL_HPP_
#define CSBM_SPECTRAL_HPP_

#include <span>
#include <vector>

#include "csbm/lanczos.hpp"
#include "csbm/model.hpp"
#include "csbm/signed_matrix.hpp"

namespace csbm {

// Entrywise sign with sign(0) = +1.
inline int sign_of(double x) { return x >= 0.0 ? 1 : -1; }

struct SpectralResult {
  Labeling labels;
  EigenPair top;
  int iterations = 0;
};

// Sign of the top eigenvector of the signed adjacency matrix built with
// y = encoding_weight(p, q). Uses -A when p < q.
SpectralResult spectral_estimate_full(const ObservedGraph& graph, double p,
                                      double q, const EigenOptions& options,
                                      Rng& rng);
Labeling spectral_estimate(const ObservedGraph& graph, double p, double q,
                           const EigenOptions& options, Rng& rng);

// Per-vertex score gamma1 * u1 + gamma2 * u2 from the top two eigenpairs.
std::vector<double> combine_eigenvectors(const EigenResult& top_two,
                                         double gamma1, double gamma2);

// sign(score - r) per vertex.
Labeling threshold_scores(std::span<const double> scores, double r);

// sign(gamma1 u1 + gamma2 u2 - r) where u1, u2 are the top two eigenvectors
// of the y-encoded matrix. Throws ParameterError if gamma1 == gamma2 == 0.
Labeling spectral_general(const ObservedGraph& graph, double y, double r,
                          double gamma1, double gamma2,
                          const EigenOptions& options, Rng& rng);

// Exact spectrum of the rank-2 block matrix E[A | sigma] (diagonal blocks
// included) in the symmetric model.
struct ExpectedSpectrum {
  double lambda1_star = 0.0;
  double lambda2_star = 0.0;
  std::vector<double> u1_star;  // positive on community +1
  std::vector<double> u2_star;  // nonnegative sum
  double same_entry = 0.0;      // E[A_ij] for sigma(i) == sigma(j)
  double cross_entry = 0.0;     // E[A_ij] for sigma(i) != sigma(j)
};

// Requires p1 == p2 != q and both communities nonempty.
ExpectedSpectrum expected_matrix_spectrum(const ModelParams& params,
                                          const Labeling& labels);

// min over s in {+1,-1} of || u - s M u_star / lambda_star ||_inf.
// Throws DomainError if lambda_star == 0.
double entrywise_residual(std::span<const double> u, const SignedMatrix& matrix,
                          std::span<const double> u_star, double lambda_star);

}  // namespace csbm

#endif  // CSBM_SPECTRAL_HPP_
