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

#include "csbm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <thread>
#include <utility>

#include "csbm/error.hpp"
#include "csbm/estimators.hpp"
#include "csbm/metrics.hpp"
#include "csbm/spectral.hpp"
#include "csbm/thresholds.hpp"
#include "json.hpp"

namespace csbm {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethodNames = {{
    {Method::kSpectral, "spectral"},
    {Method::kDegree, "degree"},
    {Method::kGenie, "genie"},
    {Method::kTwoStepSpectral, "two-step-spectral"},
    {Method::kTwoStepDegree, "two-step-degree"},
    {Method::kSpectralGeneral, "spectral-general"},
    {Method::kMap, "map"},
}};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Linear interpolation between order statistics.
double quantile(std::vector<double> values, double level) {
  std::sort(values.begin(), values.end());
  const double pos = level * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

MethodOutcome scored(std::string name, const Labeling& estimate,
                     const Labeling& truth, double wall_ms) {
  const RecoveryReport report = recovery_report(estimate, truth);
  MethodOutcome out;
  out.method = std::move(name);
  out.mismatch_fraction = report.mismatch_fraction;
  out.mismatch_count = report.mismatch_count;
  out.exact = report.exact;
  out.wall_ms = wall_ms;
  return out;
}

MethodOutcome failed(std::string name, const std::exception& e, double wall_ms) {
  MethodOutcome out;
  out.method = std::move(name);
  out.failed = true;
  out.mismatch_fraction = std::numeric_limits<double>::quiet_NaN();
  out.mismatch_count = -1;
  out.wall_ms = wall_ms;
  out.note = e.what();
  return out;
}

template <typename T>
std::vector<T> as_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

struct SpectralCache {
  bool done = false;
  std::optional<SpectralResult> result;
  std::string error;
  double wall_ms = 0.0;
};

}  // namespace

std::string_view method_name(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

std::vector<std::array<double, 2>> SpectralGeneralGrid::directions(int count) {
  std::vector<std::array<double, 2>> out;
  for (int k = 0; k < count; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / count;
    double c = std::cos(angle);
    double s = std::sin(angle);
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    out.push_back({c, s});
  }
  return out;
}

std::size_t SpectralGeneralGrid::size() const {
  return y.size() * (r.size() + r_quantiles.size()) * gamma.size();
}

void SweepConfig::validate() const {
  if (n.empty() || p1.empty() || q.empty() || t.empty() ||
      (!symmetric && p2.empty())) {
    throw ParameterError("every parameter axis needs at least one value");
  }
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (methods.empty()) throw ParameterError("no methods selected");
  if (two_step_passes < 1) throw ParameterError("two_step_passes must be >= 1");
  if (!(eigen.tol > 0.0)) throw ParameterError("tol must be positive");
  for (auto v : n) {
    if (v < 2) throw ParameterError("n must be at least 2");
  }
  for (const auto& tv : t) {
    if (!(tv.value > 0.0)) throw ParameterError("t values must be positive");
  }
  for (Method m : methods) {
    if (m == Method::kMap) {
      for (auto v : n) {
        if (v > kMaxExhaustiveVertices) {
          throw ParameterError("map requires n <= 20");
        }
      }
    }
    if (m == Method::kSpectralGeneral) {
      const auto& g = spectral_general;
      if (g.size() == 0) {
        throw ParameterError("spectral-general needs y, r and gamma values");
      }
      for (double y : g.y) {
        if (!(y > 0.0)) throw ParameterError("spectral-general y must be positive");
      }
      for (double level : g.r_quantiles) {
        if (!(level >= 0.0 && level <= 1.0)) {
          throw ParameterError("r quantiles must lie in [0,1]");
        }
      }
      for (const auto& gm : g.gamma) {
        if (gm[0] == 0.0 && gm[1] == 0.0) {
          throw ParameterError("gamma direction must be nonzero");
        }
      }
    }
  }
}

SweepConfig SweepConfig::from_json(std::string_view text) {
  SweepConfig config;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    config.n = as_list<std::int64_t>(j, "n");
    if (j.contains("p")) {
      config.symmetric = true;
      config.p1 = as_list<double>(j, "p");
    } else {
      config.p1 = as_list<double>(j, "p1");
      config.p2 = as_list<double>(j, "p2");
    }
    config.q = as_list<double>(j, "q");
    if (j.contains("t")) {
      const json& tj = j.at("t");
      const json list = tj.is_array() ? tj : json::array({tj});
      for (const json& entry : list) {
        if (entry.is_number()) {
          config.t.push_back({TValue::Kind::kAbsolute, entry.get<double>()});
        } else if (entry.is_object() && entry.contains("times_tc")) {
          config.t.push_back({TValue::Kind::kTimesThreshold, entry.at("times_tc").get<double>()});
        } else {
          throw ParameterError("t entries must be numbers or {\"times_tc\": x}");
        }
      }
    }
    config.trials = j.value("trials", 1);
    for (const auto& name : as_list<std::string>(j, "methods")) {
      config.methods.push_back(parse_method(name));
    }
    if (j.contains("spectral_general")) {
      const json& g = j.at("spectral_general");
      config.spectral_general.y = as_list<double>(g, "y");
      config.spectral_general.r = as_list<double>(g, "r");
      config.spectral_general.r_quantiles = as_list<double>(g, "r_quantiles");
      if (g.contains("directions")) {
        config.spectral_general.gamma =
            SpectralGeneralGrid::directions(g.at("directions").get<int>());
      }
      if (g.contains("gamma")) {
        for (const auto& pair : g.at("gamma")) {
          const auto v = pair.get<std::vector<double>>();
          if (v.size() != 2) throw ParameterError("gamma entries must be pairs");
          config.spectral_general.gamma.push_back({v[0], v[1]});
        }
      }
    }
    config.master_seed = j.value("master_seed", std::uint64_t{0});
    config.eigen.tol = j.value("tol", config.eigen.tol);
    config.eigen.max_iter = j.value("max_iter", config.eigen.max_iter);
    config.two_step_passes = j.value("two_step_passes", 1);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("invalid sweep config: ") + e.what());
  }
  config.validate();
  return config;
}

std::vector<Cell> resolve_cells(const SweepConfig& config) {
  std::vector<Cell> cells;
  const std::vector<double> p2_axis = config.symmetric ? std::vector<double>{0.0} : config.p2;
  for (auto n : config.n) {
    for (double p1 : config.p1) {
      for (double p2_value : p2_axis) {
        const double p2 = config.symmetric ? p1 : p2_value;
        for (double q : config.q) {
          for (const TValue& tv : config.t) {
            Cell cell;
            cell.index = cells.size();
            cell.params = {n, p1, p2, q, tv.value};
            double tc = std::numeric_limits<double>::quiet_NaN();
            try {
              tc = threshold_general(p1, p2, q);
            } catch (const Error& e) {
              if (tv.kind == TValue::Kind::kTimesThreshold) {
                cell.skip_reason = std::string("threshold unavailable: ") + e.what();
              }
            }
            if (tv.kind == TValue::Kind::kTimesThreshold && cell.skip_reason.empty()) {
              cell.params.t = tv.value * tc;
            }
            cell.t_over_tc = std::isnan(tc) ? tc : cell.params.t / tc;
            if (cell.skip_reason.empty()) {
              try {
                cell.params.validate();
              } catch (const Error& e) {
                cell.skip_reason = e.what();
              }
            }
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return cells;
}

bool TrialRecord::has_failures() const {
  if (skipped) return true;
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [](const MethodOutcome& o) { return o.failed; });
}

bool operator==(const TrialRecord& a, const TrialRecord& b) {
  auto same_double = [](double x, double y) {
    return x == y || (std::isnan(x) && std::isnan(y));
  };
  return a.cell_index == b.cell_index && a.params.n == b.params.n &&
         a.params.p1 == b.params.p1 && a.params.p2 == b.params.p2 &&
         a.params.q == b.params.q && a.params.t == b.params.t &&
         same_double(a.t_over_tc, b.t_over_tc) && a.trial == b.trial &&
         a.seed == b.seed && a.alpha_clamped == b.alpha_clamped &&
         a.note == b.note && a.skipped == b.skipped &&
         a.outcomes.size() == b.outcomes.size() &&
         std::equal(a.outcomes.begin(), a.outcomes.end(), b.outcomes.begin(),
                    [&](const MethodOutcome& x, const MethodOutcome& y) {
                      return x == y || (x.method == y.method && x.failed && y.failed &&
                                        x.note == y.note &&
                                        x.eigen_iterations == y.eigen_iterations);
                    });
}

TrialRecord run_trial(const Cell& cell, std::int64_t trial, std::uint64_t seed,
                      const SweepConfig& config) {
  TrialRecord record;
  record.cell_index = cell.index;
  record.params = cell.params;
  record.t_over_tc = cell.t_over_tc;
  record.trial = trial;
  record.seed = seed;
  if (!cell.skip_reason.empty()) {
    record.skipped = true;
    record.note = cell.skip_reason;
    return record;
  }
  const ModelParams& params = cell.params;
  record.alpha_clamped = params.alpha_clamped();
  if (record.alpha_clamped) {
    record.note = "alpha clamped to 1 (t log n / n = " + format_number(params.raw_alpha()) + ")";
  }

  Rng rng(seed);
  const Labeling truth = sample_labels(params.n, rng);
  const ObservedGraph graph = sample_graph(params, truth, rng);

  SpectralCache spectral;
  auto run_spectral = [&]() -> SpectralCache& {
    if (!spectral.done) {
      spectral.done = true;
      const auto start = Clock::now();
      Rng eig_rng(mix64(seed ^ 0x5bd1e995ULL));
      try {
        spectral.result =
            spectral_estimate_full(graph, params.p1, params.q, config.eigen, eig_rng);
      } catch (const Error& e) {
        spectral.error = e.what();
      }
      spectral.wall_ms = elapsed_ms(start);
    }
    return spectral;
  };

  for (Method method : config.methods) {
    const std::string name(method_name(method));
    const auto start = Clock::now();
    try {
      switch (method) {
        case Method::kSpectral:
        case Method::kTwoStepSpectral: {
          SpectralCache& s = run_spectral();
          if (!s.result) throw ConvergenceError(s.error, 0.0);
          Labeling estimate = s.result->labels;
          if (method == Method::kTwoStepSpectral) {
            estimate = two_step_refine(graph, estimate, params, config.two_step_passes);
          }
          MethodOutcome o = scored(name, estimate, truth, elapsed_ms(start) + s.wall_ms);
          o.eigen_iterations = s.result->iterations;
          record.outcomes.push_back(std::move(o));
          break;
        }
        case Method::kDegree:
          record.outcomes.push_back(
              scored(name, degree_estimate(graph, params), truth, elapsed_ms(start)));
          break;
        case Method::kTwoStepDegree: {
          const Labeling initial = degree_estimate(graph, params);
          record.outcomes.push_back(scored(
              name, two_step_refine(graph, initial, params, config.two_step_passes),
              truth, elapsed_ms(start)));
          break;
        }
        case Method::kGenie:
          record.outcomes.push_back(
              scored(name, genie_estimate(graph, truth, params), truth, elapsed_ms(start)));
          break;
        case Method::kMap:
          record.outcomes.push_back(
              scored(name, map_exhaustive(graph, params), truth, elapsed_ms(start)));
          break;
        case Method::kSpectralGeneral: {
          const auto& grid = config.spectral_general;
          for (std::size_t yi = 0; yi < grid.y.size(); ++yi) {
            const double y = grid.y[yi];
            const std::string prefix = name + ":y=" + format_number(y);
            const auto solve_start = Clock::now();
            Rng eig_rng(mix64(seed ^ mix64(0x9e37ULL + yi)));
            std::optional<EigenResult> top;
            std::string error;
            try {
              top = top_eigenpairs(SignedMatrix::build(graph, y), 2, config.eigen, eig_rng);
            } catch (const Error& e) {
              error = e.what();
            }
            const double solve_ms = elapsed_ms(solve_start);
            for (const auto& g : grid.gamma) {
              const std::string gname =
                  ":g1=" + format_number(g[0]) + ":g2=" + format_number(g[1]);
              std::vector<double> scores;
              if (top) scores = combine_eigenvectors(*top, g[0], g[1]);
              auto emit = [&](const std::string& rname, double r) {
                const std::string full = prefix + rname + gname;
                if (!top) {
                  record.outcomes.push_back(
                      failed(full, ConvergenceError(error, 0.0), solve_ms));
                  return;
                }
                MethodOutcome o = scored(full, threshold_scores(scores, r), truth, solve_ms);
                o.eigen_iterations = top->iterations;
                record.outcomes.push_back(std::move(o));
              };
              for (double r : grid.r) emit(":r=" + format_number(r), r);
              for (double level : grid.r_quantiles) {
                emit(":r=q" + format_number(level), top ? quantile(scores, level) : 0.0);
              }
            }
          }
          break;
        }
      }
    } catch (const Error& e) {
      record.outcomes.push_back(failed(name, e, elapsed_ms(start)));
    }
  }
  return record;
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config, int parallelism) {
  config.validate();
  if (parallelism < 1) throw ParameterError("parallelism must be at least 1");
  const std::vector<Cell> cells = resolve_cells(config);

  struct Job {
    std::size_t cell;
    std::int64_t trial;
  };
  std::vector<Job> jobs;
  for (const Cell& cell : cells) {
    const std::int64_t count = cell.skip_reason.empty() ? config.trials : 1;
    for (std::int64_t k = 0; k < count; ++k) jobs.push_back({cell.index, k});
  }

  std::vector<TrialRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const std::uint64_t seed = derive_seed(config.master_seed, job.cell,
                                             static_cast<std::uint64_t>(job.trial));
      records[i] = run_trial(cells[job.cell], job.trial, seed, config);
    }
  };
  const int threads = std::min<int>(parallelism, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return records;
}

void emit_results(std::span<const TrialRecord> records, std::ostream& out,
                  ResultFormat format) {
  if (format == ResultFormat::kCsv) {
    out << kCsvHeader << '\n';
    auto row = [&](const TrialRecord& r, const MethodOutcome* o) {
      std::string note = r.note;
      if (o != nullptr && !o->note.empty()) {
        note += (note.empty() ? "" : "; ") + o->note;
      }
      out << r.params.n << ',' << format_full(r.params.p1) << ','
          << format_full(r.params.p2) << ',' << format_full(r.params.q) << ','
          << format_full(r.params.t) << ',' << format_full(r.t_over_tc) << ','
          << r.trial << ',' << r.seed << ',';
      if (o == nullptr) {
        out << "none,nan,0,0";
      } else {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", o->wall_ms);
        out << o->method << ',' << format_full(o->mismatch_fraction) << ','
            << (o->exact ? 1 : 0) << ',' << wall;
      }
      out << ',' << sanitize(note) << '\n';
    };
    for (const auto& r : records) {
      if (r.outcomes.empty()) {
        row(r, nullptr);
      } else {
        for (const auto& o : r.outcomes) row(r, &o);
      }
    }
    return;
  }

  auto nan_or = [](double x) -> json { return std::isnan(x) ? json(nullptr) : json(x); };
  for (const auto& r : records) {
    json base = {
        {"cell", r.cell_index},   {"n", r.params.n},
        {"p1", r.params.p1},      {"p2", r.params.p2},
        {"q", r.params.q},        {"t", r.params.t},
        {"t_over_tc", nan_or(r.t_over_tc)},
        {"trial", r.trial},       {"seed", r.seed},
        {"alpha_clamped", r.alpha_clamped},
        {"skipped", r.skipped},   {"record_note", r.note},
    };
    if (r.outcomes.empty()) {
      base["method"] = "";
      out << base.dump() << '\n';
      continue;
    }
    for (const auto& o : r.outcomes) {
      json line = base;
      line["method"] = o.method;
      line["mismatch_fraction"] = nan_or(o.mismatch_fraction);
      line["mismatch_count"] = o.mismatch_count;
      line["exact"] = o.exact;
      line["failed"] = o.failed;
      line["wall_ms"] = o.wall_ms;
      line["eigen_iterations"] = o.eigen_iterations;
      line["note"] = o.note;
      out << line.dump() << '\n';
    }
  }
}

std::vector<TrialRecord> read_results_jsonl(std::istream& in) {
  std::vector<TrialRecord> records;
  std::string line;
  std::size_t line_no = 0;
  auto number_or_nan = [](const json& j, const char* key) {
    const json& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      TrialRecord head;
      head.cell_index = j.at("cell").get<std::size_t>();
      head.params = {j.at("n").get<std::int64_t>(), j.at("p1").get<double>(),
                     j.at("p2").get<double>(), j.at("q").get<double>(),
                     j.at("t").get<double>()};
      head.t_over_tc = number_or_nan(j, "t_over_tc");
      head.trial = j.at("trial").get<std::int64_t>();
      head.seed = j.at("seed").get<std::uint64_t>();
      head.alpha_clamped = j.at("alpha_clamped").get<bool>();
      head.skipped = j.at("skipped").get<bool>();
      head.note = j.at("record_note").get<std::string>();
      const bool continues = !records.empty() &&
                             records.back().cell_index == head.cell_index &&
                             records.back().trial == head.trial;
      if (!continues) records.push_back(head);
      const std::string method = j.at("method").get<std::string>();
      if (method.empty()) continue;
      MethodOutcome o;
      o.method = method;
      o.mismatch_fraction = number_or_nan(j, "mismatch_fraction");
      o.mismatch_count = j.at("mismatch_count").get<std::int64_t>();
      o.exact = j.at("exact").get<bool>();
      o.failed = j.at("failed").get<bool>();
      o.wall_ms = j.at("wall_ms").get<double>();
      o.eigen_iterations = j.at("eigen_iterations").get<int>();
      o.note = j.at("note").get<std::string>();
      records.back().outcomes.push_back(std::move(o));
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return records;
}

std::vector<MethodSummary> summarize(std::span<const TrialRecord> records) {
  std::map<std::pair<std::size_t, std::string>, std::vector<const MethodOutcome*>> groups;
  for (const auto& r : records) {
    for (const auto& o : r.outcomes) groups[{r.cell_index, o.method}].push_back(&o);
  }
  std::vector<MethodSummary> out;
  for (const auto& [key, outcomes] : groups) {
    MethodSummary s;
    s.cell_index = key.first;
    s.method = key.second;
    s.trials = static_cast<std::int64_t>(outcomes.size());
    std::vector<double> counts;
    double fraction_sum = 0.0;
    std::int64_t exact = 0;
    for (const MethodOutcome* o : outcomes) {
      if (o->failed) {
        ++s.failures;
        continue;
      }
      exact += o->exact;
      counts.push_back(static_cast<double>(o->mismatch_count));
      fraction_sum += o->mismatch_fraction;
    }
    s.exact_rate = static_cast<double>(exact) / static_cast<double>(s.trials);
    if (!counts.empty()) {
      const double size = static_cast<double>(counts.size());
      double total = 0.0;
      for (double c : counts) total += c;
      s.mean_mismatch_count = total / size;
      s.mean_mismatch_fraction = fraction_sum / size;
      s.median_mismatch_count = quantile(counts, 0.5);
    } else {
      s.mean_mismatch_count = std::numeric_limits<double>::quiet_NaN();
      s.mean_mismatch_fraction = std::numeric_limits<double>::quiet_NaN();
      s.median_mismatch_count = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace csbm
