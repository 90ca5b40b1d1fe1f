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

#include "csbm/metrics.hpp"

#include <algorithm>

#include "csbm/error.hpp"

namespace csbm {

RecoveryReport recovery_report(const Labeling& estimate, const Labeling& truth) {
  if (estimate.size() != truth.size()) {
    throw ParameterError("estimate and truth differ in length");
  }
  const std::size_t n = truth.size();
  std::int64_t disagree = 0;
  for (std::size_t i = 0; i < n; ++i) disagree += estimate[i] != truth[i];
  const std::int64_t agree = static_cast<std::int64_t>(n) - disagree;

  RecoveryReport report;
  report.best_flip = disagree <= agree ? 1 : -1;
  report.mismatch_count = std::min(disagree, agree);
  report.mismatch_fraction =
      n == 0 ? 0.0 : static_cast<double>(report.mismatch_count) / static_cast<double>(n);
  report.exact = report.mismatch_count == 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (estimate[i] != report.best_flip * truth[i]) {
      report.misclassified.push_back(static_cast<Vertex>(i));
    }
  }
  return report;
}

std::int64_t neighbor_misclassification_max(const ObservedGraph& graph,
                                            const Labeling& estimate,
                                            const Labeling& truth) {
  if (static_cast<std::int64_t>(truth.size()) != graph.num_vertices()) {
    throw ParameterError("labeling length does not match the graph");
  }
  const RecoveryReport report = recovery_report(estimate, truth);
  std::vector<char> wrong(truth.size(), 0);
  for (Vertex v : report.misclassified) wrong[v] = 1;
  std::int64_t best = 0;
  for (std::int64_t u = 0; u < graph.num_vertices(); ++u) {
    std::int64_t count = 0;
    for (const Neighbor& nb : graph.neighbors(static_cast<Vertex>(u))) {
      count += wrong[nb.vertex];
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace csbm
