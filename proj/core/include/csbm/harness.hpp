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

#ifndef CSBM_HARNESS_HPP_
#define CSBM_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csbm/lanczos.hpp"
#include "csbm/model.hpp"

namespace csbm {

enum class Method {
  kSpectral,
  kDegree,
  kGenie,
  kTwoStepSpectral,
  kTwoStepDegree,
  kSpectralGeneral,
  kMap,
};

std::string_view method_name(Method method);
// Throws ParameterError for unknown names.
Method parse_method(std::string_view name);

// A t value given either directly or as a multiple of the cell's threshold.
struct TValue {
  enum class Kind { kAbsolute, kTimesThreshold };
  Kind kind = Kind::kAbsolute;
  double value = 1.0;
};

// Parameter grid of the generalized spectral family. Every (y, r, gamma)
// combination becomes one method column. Thresholds come either as absolute
// values (r) or as empirical quantiles of the per-vertex scores (r_quantiles).
struct SpectralGeneralGrid {
  std::vector<double> y;
  std::vector<double> r;
  std::vector<double> r_quantiles;
  std::vector<std::array<double, 2>> gamma;

  // count unit vectors (cos, sin) at angles 2 pi k / count.
  static std::vector<std::array<double, 2>> directions(int count);
  std::size_t size() const;
};

struct SweepConfig {
  std::vector<std::int64_t> n;
  std::vector<double> p1;
  std::vector<double> p2;  // ignored when symmetric
  bool symmetric = false;  // p2 follows p1 instead of spanning its own axis
  std::vector<double> q;
  std::vector<TValue> t;
  int trials = 1;
  std::vector<Method> methods;
  SpectralGeneralGrid spectral_general;
  std::uint64_t master_seed = 0;
  EigenOptions eigen;
  int two_step_passes = 1;

  // Throws ParameterError on empty grids, trials < 1, map with n > 20, or a
  // spectral-general method without a grid.
  void validate() const;

  // JSON object with the fields above; "t" entries are numbers (absolute) or
  // {"times_tc": x}. A "p" list in place of p1/p2 selects the symmetric grid.
  // Solver settings are "tol" and "max_iter". Throws ParameterError on
  // malformed input.
  static SweepConfig from_json(std::string_view text);
};

// One point of the parameter grid with t resolved.
struct Cell {
  std::size_t index = 0;
  ModelParams params;
  double t_over_tc = 0.0;  // NaN when the threshold is infinite
  std::string skip_reason; // non-empty when the cell cannot be run
};

// Cells in row-major order over (n, p1, p2, q, t).
std::vector<Cell> resolve_cells(const SweepConfig& config);

struct MethodOutcome {
  std::string method;
  double mismatch_fraction = 0.0;
  std::int64_t mismatch_count = 0;
  bool exact = false;
  bool failed = false;
  double wall_ms = 0.0;
  int eigen_iterations = -1;  // -1 when the method uses no eigensolver
  std::string note;

  // Wall time is excluded: it is the only non-deterministic field.
  friend bool operator==(const MethodOutcome& a, const MethodOutcome& b) {
    return a.method == b.method && a.mismatch_count == b.mismatch_count &&
           a.mismatch_fraction == b.mismatch_fraction && a.exact == b.exact &&
           a.failed == b.failed && a.eigen_iterations == b.eigen_iterations &&
           a.note == b.note;
  }
};

struct TrialRecord {
  std::size_t cell_index = 0;
  ModelParams params;
  double t_over_tc = 0.0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  bool alpha_clamped = false;
  std::vector<MethodOutcome> outcomes;
  std::string note;  // cell-level note (alpha clamp, skip reason)
  bool skipped = false;

  bool has_failures() const;
  friend bool operator==(const TrialRecord&, const TrialRecord&);
};

// Samples labels and a graph from `seed`, then runs each configured method.
// Method failures are recorded in the outcome, not thrown.
TrialRecord run_trial(const Cell& cell, std::int64_t trial, std::uint64_t seed,
                      const SweepConfig& config);

// Every cell x trial, on up to `parallelism` threads. The result is ordered by
// (cell, trial) and does not depend on parallelism.
std::vector<TrialRecord> run_sweep(const SweepConfig& config, int parallelism);

enum class ResultFormat { kCsv, kJsonLines };

inline constexpr std::string_view kCsvHeader =
    "n,p1,p2,q,t,t_over_tc,trial,seed,method,mismatch_fraction,exact,wall_ms,"
    "note";

// One row per (record, method); skipped cells produce a single row.
void emit_results(std::span<const TrialRecord> records, std::ostream& out,
                  ResultFormat format);
std::vector<TrialRecord> read_results_jsonl(std::istream& in);

// Per (cell, method) aggregate over trials.
struct MethodSummary {
  std::size_t cell_index = 0;
  std::string method;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double exact_rate = 0.0;
  double mean_mismatch_count = 0.0;
  double median_mismatch_count = 0.0;
  double mean_mismatch_fraction = 0.0;
};

// Failed outcomes count as non-exact and are excluded from the mismatch
// statistics. Sorted by (cell, method).
std::vector<MethodSummary> summarize(std::span<const TrialRecord> records);

}  // namespace csbm

#endif  // CSBM_HARNESS_HPP_
