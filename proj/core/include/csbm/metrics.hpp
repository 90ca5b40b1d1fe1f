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

#ifndef CSBM_METRICS_HPP_
#define CSBM_METRICS_HPP_

#include <cstdint>
#include <vector>

#include "csbm/model.hpp"

namespace csbm {

// Agreement of an estimate with the truth, minimized over the global flip.
struct RecoveryReport {
  double mismatch_fraction = 0.0;  // in [0, 1/2]
  std::int64_t mismatch_count = 0;
  bool exact = false;
  int best_flip = 1;                 // ties resolve to +1
  std::vector<Vertex> misclassified; // under best_flip, ascending
};

RecoveryReport recovery_report(const Labeling& estimate, const Labeling& truth);

// max_u |N(u) ∩ M|, where M is the misclassified set under the best flip.
std::int64_t neighbor_misclassification_max(const ObservedGraph& graph,
                                            const Labeling& estimate,
                                            const Labeling& truth);

}  // namespace csbm

#endif  // CSBM_METRICS_HPP_
