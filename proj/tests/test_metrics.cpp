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

#include "csbm/error.hpp"
#include "csbm/metrics.hpp"
#include "csbm/spectral.hpp"
#include "csbm/thresholds.hpp"
#include "doctest.h"

using namespace csbm;

namespace {

// On a tie (2 * count == n) both flips are optimal and the misclassified
// sets are complements, so only the scalar fields are compared.
bool same_report(const RecoveryReport& a, const RecoveryReport& b, std::int64_t n) {
  const bool scalars = a.mismatch_fraction == b.mismatch_fraction &&
                       a.mismatch_count == b.mismatch_count && a.exact == b.exact;
  return scalars && (2 * a.mismatch_count == n || a.misclassified == b.misclassified);
}

}  // namespace

TEST_CASE("recovery report examples") {
  const Labeling truth({1, 1, -1, -1});
  const RecoveryReport same = recovery_report(truth, truth);
  CHECK(same.mismatch_fraction == 0.0);
  CHECK(same.exact);
  CHECK(same.best_flip == 1);

  const RecoveryReport flipped = recovery_report(truth.negated(), truth);
  CHECK(flipped.mismatch_fraction == 0.0);
  CHECK(flipped.exact);
  CHECK(flipped.best_flip == -1);

  const RecoveryReport one = recovery_report(Labeling({1, -1, -1, -1}), truth);
  CHECK(one.mismatch_fraction == 0.25);
  CHECK(one.mismatch_count == 1);
  CHECK_FALSE(one.exact);
  CHECK(one.misclassified == std::vector<Vertex>{1});

  // Two mismatches either way: tie resolves to +1.
  const RecoveryReport tie = recovery_report(Labeling({1, -1, 1, -1}), truth);
  CHECK(tie.mismatch_fraction == 0.5);
  CHECK(tie.best_flip == 1);
  CHECK(tie.misclassified == std::vector<Vertex>{1, 2});

  CHECK_THROWS_AS(recovery_report(Labeling({1}), truth), ParameterError);
}

TEST_CASE("recovery report flip invariances") {
  Rng rng(3);
  for (int rep = 0; rep < 300; ++rep) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 40);
    const Labeling truth = sample_labels(n, rng);
    Labeling estimate = truth;
    const double noise = uniform01(rng);
    for (std::int64_t i = 0; i < n; ++i) {
      if (uniform01(rng) < noise) estimate.flip(static_cast<std::size_t>(i));
    }
    const RecoveryReport r = recovery_report(estimate, truth);
    CHECK(same_report(r, recovery_report(estimate.negated(), truth), n));
    CHECK(same_report(r, recovery_report(estimate, truth.negated()), n));
    CHECK(r.mismatch_fraction >= 0.0);
    CHECK(r.mismatch_fraction <= 0.5);
    CHECK(r.mismatch_fraction ==
          static_cast<double>(r.misclassified.size()) / static_cast<double>(n));
    CHECK(r.exact == r.misclassified.empty());
    CHECK(r.exact == (estimate == truth || estimate == truth.negated()));
    for (Vertex v : r.misclassified) CHECK(estimate[v] != r.best_flip * truth[v]);
  }
}

TEST_CASE("neighbor misclassification diagnostic") {
  const ObservedGraph g(4, {{0, 1, EdgeStatus::kPresent},
                            {1, 2, EdgeStatus::kAbsent},
                            {2, 3, EdgeStatus::kPresent},
                            {0, 2, EdgeStatus::kPresent}});
  const Labeling truth({1, 1, -1, -1});
  CHECK(neighbor_misclassification_max(g, truth, truth) == 0);
  // Vertex 2 misclassified; its neighbors 0, 1 and 3 each see it once.
  CHECK(neighbor_misclassification_max(g, Labeling({1, 1, 1, -1}), truth) == 1);
  // Vertex 3 misclassified; only vertex 2 is adjacent to it.
  CHECK(neighbor_misclassification_max(g, Labeling({1, 1, -1, 1}), truth) == 1);
  // Vertices 1 and 3 misclassified; vertex 2 sees both.
  CHECK(neighbor_misclassification_max(g, Labeling({1, -1, -1, 1}), truth) == 2);
  CHECK_THROWS_AS(neighbor_misclassification_max(g, Labeling({1, 1}), truth), ParameterError);

  const double t = 1.5 * threshold_symmetric(0.9, 0.1);
  int bounded = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(71, 0, trial));
    const auto params = ModelParams::symmetric(3000, 0.9, 0.1, t);
    const Labeling truth3 = sample_labels(params.n, rng);
    const ObservedGraph h = sample_graph(params, truth3, rng);
    bounded += neighbor_misclassification_max(
                   h, spectral_estimate(h, 0.9, 0.1, {}, rng), truth3) <= 3;
  }
  CHECK(bounded >= 18);
}
