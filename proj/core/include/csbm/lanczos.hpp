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

#ifndef CSBM_LANCZOS_HPP_
#define CSBM_LANCZOS_HPP_

#include <vector>

#include "csbm/rng.hpp"
#include "csbm/signed_matrix.hpp"

namespace csbm {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
};

struct EigenOptions {
  double tol = 1e-8;
  // 0 selects the default budget 10 sqrt(n) + 200.
  int max_iter = 0;
};

struct EigenResult {
  std::vector<EigenPair> pairs;  // descending by eigenvalue
  int iterations = 0;            // matrix-vector products performed
};

// The k algebraically largest eigenpairs of a symmetric sparse matrix.
//
// Lanczos with full reorthogonalization. When the Krylov space becomes
// invariant before the wanted pairs have converged, the recurrence continues
// from a fresh random vector orthogonal to the current basis. Every returned
// pair satisfies ||M u - lambda u|| <= tol * max(1, |lambda|).
//
// Throws ParameterError if k is not in [1, n], ConvergenceError (with the best
// residual seen) when the iteration budget runs out, and ConvergenceError for
// the zero matrix, which has no distinguished top eigenvector.
EigenResult top_eigenpairs(const SignedMatrix& matrix, int k,
                           const EigenOptions& options, Rng& rng);

}  // namespace csbm

#endif  // CSBM_LANCZOS_HPP_
