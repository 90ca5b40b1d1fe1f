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

#include "csbm/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>

#include "csbm/error.hpp"

namespace csbm {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Row-major block of Lanczos vectors.
class Basis {
 public:
  explicit Basis(std::size_t n) : n_(n) {}

  std::size_t size() const { return count_; }
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  void push(std::span<const double> v) {
    data_.insert(data_.end(), v.begin(), v.end());
    ++count_;
  }

  // Removes the components of w along the basis. A second classical
  // Gram-Schmidt pass runs when the first one cancels most of w.
  void orthogonalize(std::span<double> w) const {
    for (int pass = 0; pass < 2; ++pass) {
      const double before = norm(w);
      for (std::size_t i = 0; i < count_; ++i) {
        const auto vi = (*this)[i];
        const double c = dot(vi, w);
        for (std::size_t r = 0; r < n_; ++r) w[r] -= c * vi[r];
      }
      if (norm(w) > 0.7 * before) break;
    }
  }

 private:
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

// Random unit vector orthogonal to the basis; empty if the basis spans the
// whole space (numerically).
std::vector<double> fresh_start(const Basis& basis, std::size_t n, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform01(rng) - 0.5;
    basis.orthogonalize(v);
    const double nv = norm(v);
    if (nv > 1e-8) {
      for (auto& x : v) x /= nv;
      return v;
    }
  }
  return {};
}

// Fixes the arbitrary sign of an eigenvector: the entry of largest magnitude
// (first on ties) is made positive.
void canonicalize_sign(std::vector<double>& u) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (std::abs(u[i]) > std::abs(u[best]) * (1.0 + 1e-12)) best = i;
  }
  if (!u.empty() && u[best] < 0.0) {
    for (auto& x : u) x = -x;
  }
}

}  // namespace

EigenResult top_eigenpairs(const SignedMatrix& matrix, int k,
                           const EigenOptions& options, Rng& rng) {
  const auto n = static_cast<std::size_t>(matrix.dimension());
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ParameterError("k must lie in [1, n]");
  }
  if (!(options.tol > 0.0)) throw ParameterError("tolerance must be positive");
  if (matrix.nonzeros() == 0) {
    throw ConvergenceError("zero matrix: top eigenvectors are not determined",
                           std::numeric_limits<double>::infinity());
  }
  const int budget = options.max_iter > 0
                         ? options.max_iter
                         : static_cast<int>(10.0 * std::sqrt(static_cast<double>(n))) + 200;
  const std::size_t max_steps = std::min<std::size_t>(n, static_cast<std::size_t>(budget));

  Basis basis(n);
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[j] couples basis vectors j and j+1
  std::vector<double> v = fresh_start(basis, n, rng);
  std::vector<double> w(n);
  std::vector<double> prev;
  double prev_beta = 0.0;
  double best_residual = std::numeric_limits<double>::infinity();
  int products = 0;
  const double scale = std::max(1.0, matrix.max_abs_row_sum());

  while (true) {
    basis.push(v);
    matrix.multiply(v, w);
    ++products;
    const double a = dot(v, w);
    for (std::size_t r = 0; r < n; ++r) {
      w[r] -= a * v[r] + (prev.empty() ? 0.0 : prev_beta * prev[r]);
    }
    basis.orthogonalize(w);
    diag.push_back(a);
    double beta = norm(w);
    const std::size_t m = basis.size();
    const bool invariant = beta <= 1e-12 * scale;
    const bool exhausted = m >= max_steps;

    if (m >= static_cast<std::size_t>(k) &&
        (m % 5 == 0 || invariant || exhausted || m == static_cast<std::size_t>(k))) {
      Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(m));
      Eigen::VectorXd e(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
      for (std::size_t j = 0; j + 1 < m; ++j) e[static_cast<Eigen::Index>(j)] = offdiag[j];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      const auto& theta = tri.eigenvalues();
      const auto& s = tri.eigenvectors();
      const double tail = invariant ? 0.0 : beta;

      bool estimates_ok = true;
      double worst = 0.0;
      for (int i = 0; i < k; ++i) {
        const auto col = static_cast<Eigen::Index>(m - 1 - static_cast<std::size_t>(i));
        const double est = std::abs(tail * s(static_cast<Eigen::Index>(m - 1), col));
        const double allowed = options.tol * std::max(1.0, std::abs(theta[col]));
        worst = std::max(worst, est / allowed * options.tol);
        if (est > allowed) estimates_ok = false;
      }
      if (estimates_ok || exhausted || (invariant && m == n)) {
        EigenResult result;
        result.iterations = products;
        bool verified = true;
        double worst_true = 0.0;
        for (int i = 0; i < k; ++i) {
          const auto col = static_cast<Eigen::Index>(m - 1 - static_cast<std::size_t>(i));
          EigenPair pair;
          pair.value = theta[col];
          pair.vector.assign(n, 0.0);
          for (std::size_t j = 0; j < m; ++j) {
            const double c = s(static_cast<Eigen::Index>(j), col);
            const auto vj = basis[j];
            for (std::size_t r = 0; r < n; ++r) pair.vector[r] += c * vj[r];
          }
          const double nu = norm(pair.vector);
          for (auto& x : pair.vector) x /= nu;
          canonicalize_sign(pair.vector);
          std::vector<double> au = matrix.multiply(pair.vector);
          double res = 0.0;
          for (std::size_t r = 0; r < n; ++r) {
            const double diff = au[r] - pair.value * pair.vector[r];
            res += diff * diff;
          }
          res = std::sqrt(res);
          const double allowed = options.tol * std::max(1.0, std::abs(pair.value));
          worst_true = std::max(worst_true, res / std::max(1.0, std::abs(pair.value)));
          if (res > allowed) verified = false;
          result.pairs.push_back(std::move(pair));
        }
        best_residual = std::min(best_residual, worst_true);
        if (verified) return result;
        if (exhausted || (invariant && m == n)) {
          throw ConvergenceError(
              "Lanczos did not converge within " + std::to_string(products) +
                  " matrix-vector products",
              best_residual);
        }
      } else {
        best_residual = std::min(best_residual, worst);
      }
    }
    if (exhausted) {
      throw ConvergenceError("Lanczos did not converge within " +
                                 std::to_string(products) + " matrix-vector products",
                             best_residual);
    }

    if (invariant) {
      // Krylov space is invariant: continue from a new direction.
      std::vector<double> next = fresh_start(basis, n, rng);
      if (next.empty()) {
        throw ConvergenceError("Lanczos basis exhausted", best_residual);
      }
      offdiag.push_back(0.0);
      prev.clear();
      prev_beta = 0.0;
      v = std::move(next);
      continue;
    }
    offdiag.push_back(beta);
    prev = std::move(v);
    prev_beta = beta;
    v.assign(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) v[r] = w[r] / beta;
  }
}

}  // namespace csbm
