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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "csbm/error.hpp"
#include "csbm/estimators.hpp"
#include "csbm/harness.hpp"
#include "csbm/metrics.hpp"
#include "csbm/model.hpp"
#include "csbm/spectral.hpp"
#include "csbm/thresholds.hpp"

namespace csbm::cli {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  return out;
}

ObservedGraph load_graph(const std::string& path) {
  std::ifstream in = open_input(path);
  try {
    return read_graph(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

Labeling load_labels(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_labels(in);
}

struct ModelArgs {
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<double> q;
  std::optional<double> t;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--p1", p1, "Connection probability inside community +1");
    cmd->add_option("--p2", p2, "Connection probability inside community -1 (default: p1)");
    cmd->add_option("--q", q, "Connection probability across communities");
    cmd->add_option("--t", t, "Reveal intensity (alpha = t log n / n)");
  }

  // p2 defaults to p1; t defaults to 1 when the method does not use it.
  ModelParams resolve(std::int64_t n, bool need_t, const std::string& method) const {
    if (!p1 || !q) throw ParameterError(method + " requires --p1 and --q");
    if (need_t && !t) throw ParameterError(method + " requires --t");
    ModelParams params{n, *p1, p2.value_or(*p1), *q, t.value_or(1.0)};
    params.validate();
    return params;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Community recovery in the censored two-community block model"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample labels and an observed graph");
  std::int64_t sample_n = 0;
  ModelArgs sample_model;
  std::uint64_t sample_seed = 0;
  std::string graph_out;
  std::string labels_out;
  sample->add_option("--n", sample_n, "Number of vertices")->required();
  sample_model.add_to(sample);
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("--graph-out", graph_out, "Graph output path")->required();
  sample->add_option("--labels-out", labels_out, "Label output path")->required();

  // recover
  auto* recover = app.add_subcommand("recover", "Run an estimator on a graph file");
  std::string graph_path;
  std::string method_arg;
  std::string truth_path;
  std::string recover_out;
  ModelArgs recover_model;
  std::optional<double> y_arg;
  double r_arg = 0.0;
  double g1_arg = 1.0;
  double g2_arg = 0.0;
  int iterate = 1;
  EigenOptions eigen;
  std::uint64_t recover_seed = 0;
  recover->add_option("--graph", graph_path, "Graph file")->required();
  recover->add_option("--method", method_arg,
                      "spectral | spectral-general | degree | genie | "
                      "two-step-spectral | two-step-degree | map")
      ->required();
  recover->add_option("--labels", truth_path,
                      "True labels (required for genie; reported against otherwise)");
  recover_model.add_to(recover);
  recover->add_option("--y", y_arg, "Encoding weight for spectral-general");
  recover->add_option("--r", r_arg, "Threshold for spectral-general");
  recover->add_option("--g1", g1_arg, "Weight of the first eigenvector");
  recover->add_option("--g2", g2_arg, "Weight of the second eigenvector");
  recover->add_option("--iterate", iterate, "Number of two-step refinement passes");
  recover->add_option("--tol", eigen.tol, "Eigensolver tolerance");
  recover->add_option("--max-iter", eigen.max_iter, "Eigensolver iteration budget");
  recover->add_option("--seed", recover_seed, "Eigensolver start-vector seed");
  recover->add_option("--out", recover_out, "Label output path")->required();

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Print recovery thresholds");
  ModelArgs threshold_model;
  double tol = kDefaultSearchTol;
  threshold_model.add_to(threshold);
  threshold->add_option("--tol", tol, "Search tolerance in x");

  // estimate-params
  auto* estimate = app.add_subcommand("estimate-params",
                                      "Estimate (p, q) of a symmetric model from edge "
                                      "and triangle counts");
  std::string estimate_graph;
  double estimate_t = 0.0;
  estimate->add_option("--graph", estimate_graph, "Graph file")->required();
  estimate->add_option("--t", estimate_t, "Reveal intensity")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo parameter sweep");
  std::string config_path;
  std::string sweep_out;
  int parallelism = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string format = "csv";
  sweep->add_option("--config", config_path, "Sweep configuration (JSON)")->required();
  sweep->add_option("--out", sweep_out, "Results path")->required();
  sweep->add_option("--parallelism", parallelism, "Worker threads");
  sweep->add_option("--format", format, "csv | jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameterError;
  }

  try {
    if (sample->parsed()) {
      if (!sample_model.t) throw ParameterError("sample requires --t");
      const ModelParams params = sample_model.resolve(sample_n, true, "sample");
      Rng rng(sample_seed);
      const Labeling labels = sample_labels(params.n, rng);
      const ObservedGraph graph = sample_graph(params, labels, rng);
      std::ofstream gout = open_output(graph_out);
      write_graph(graph, gout);
      std::ofstream lout = open_output(labels_out);
      write_labels(labels, lout);
      out << "alpha " << num(params.alpha());
      if (params.alpha_clamped()) {
        out << " (clamped: t log n / n = " << num(params.raw_alpha()) << ")";
      }
      out << "\nrevealed " << graph.num_revealed() << "\npresent "
          << graph.num_present() << '\n';
      return kExitOk;
    }

    if (recover->parsed()) {
      const ObservedGraph graph = load_graph(graph_path);
      const Method method = parse_method(method_arg);
      std::optional<Labeling> truth;
      if (!truth_path.empty()) {
        truth = load_labels(truth_path);
        if (static_cast<std::int64_t>(truth->size()) != graph.num_vertices()) {
          throw ParameterError("label file length does not match the graph");
        }
      }
      Rng rng(recover_seed);
      Labeling estimate;
      switch (method) {
        case Method::kSpectral: {
          const ModelParams m = recover_model.resolve(graph.num_vertices(), false, method_arg);
          estimate = spectral_estimate(graph, m.p1, m.q, eigen, rng);
          break;
        }
        case Method::kSpectralGeneral: {
          double y = 0.0;
          if (y_arg) {
            y = *y_arg;
          } else {
            const ModelParams m = recover_model.resolve(graph.num_vertices(), false, method_arg);
            y = encoding_weight(m.p1, m.q);
          }
          estimate = spectral_general(graph, y, r_arg, g1_arg, g2_arg, eigen, rng);
          break;
        }
        case Method::kDegree:
          estimate = degree_estimate(
              graph, recover_model.resolve(graph.num_vertices(), true, method_arg));
          break;
        case Method::kGenie:
          if (!truth) throw ParameterError("genie requires --labels");
          estimate = genie_estimate(
              graph, *truth, recover_model.resolve(graph.num_vertices(), false, method_arg));
          break;
        case Method::kTwoStepSpectral: {
          const ModelParams m = recover_model.resolve(graph.num_vertices(), false, method_arg);
          estimate = two_step_refine(graph, spectral_estimate(graph, m.p1, m.q, eigen, rng),
                                     m, iterate);
          break;
        }
        case Method::kTwoStepDegree: {
          const ModelParams m = recover_model.resolve(graph.num_vertices(), true, method_arg);
          estimate = two_step_refine(graph, degree_estimate(graph, m), m, iterate);
          break;
        }
        case Method::kMap:
          estimate = map_exhaustive(
              graph, recover_model.resolve(graph.num_vertices(), false, method_arg));
          break;
      }
      std::ofstream lout = open_output(recover_out);
      write_labels(estimate, lout);
      if (truth) {
        const RecoveryReport report = recovery_report(estimate, *truth);
        out << "mismatch_fraction " << num(report.mismatch_fraction) << "\nexact "
            << (report.exact ? "true" : "false") << '\n';
      }
      return kExitOk;
    }

    if (threshold->parsed()) {
      if (!threshold_model.p1 || !threshold_model.q) {
        throw ParameterError("threshold requires --p1 and --q");
      }
      const double p1 = *threshold_model.p1;
      const double p2 = threshold_model.p2.value_or(p1);
      const double q = *threshold_model.q;
      if (p1 == p2) out << "y " << num(encoding_weight(p1, q)) << '\n';
      const ChMinimum m = hellinger_ch_min(ChannelPair::from_model(p1, p2, q), tol);
      const double tc = threshold_general(p1, p2, q, tol);
      out << "t_c " << num(tc) << "\nx_star " << num(m.x_star) << '\n';
      if (threshold_model.t) {
        const double t = *threshold_model.t;
        if (!(t > 0.0)) throw ParameterError("t must be positive");
        const ChannelPair c = ChannelPair::from_model(p1, p2, q);
        std::array<double, 4> a{};
        std::array<double, 4> b{};
        for (int i = 0; i < 4; ++i) {
          a[i] = 0.5 * t * c.c1[i];
          b[i] = 0.5 * t * c.c2[i];
        }
        out << "delta_plus " << num(ch_divergence(a, b, tol)) << '\n';
      }
      return kExitOk;
    }

    if (estimate->parsed()) {
      const ObservedGraph graph = load_graph(estimate_graph);
      if (!(estimate_t > 0.0)) throw ParameterError("t must be positive");
      const ParameterEstimate e = estimate_parameters(graph, estimate_t);
      out << "p_hat " << num(e.p_hat) << "\nq_hat " << num(e.q_hat) << "\nedges "
          << num(e.edges) << "\ntriangles " << num(e.triangles) << '\n';
      return kExitOk;
    }

    if (sweep->parsed()) {
      std::ifstream in = open_input(config_path);
      std::stringstream text;
      text << in.rdbuf();
      const SweepConfig config = SweepConfig::from_json(text.str());
      const auto records = run_sweep(config, parallelism);
      std::ofstream rout = open_output(sweep_out);
      emit_results(records, rout,
                   format == "csv" ? ResultFormat::kCsv : ResultFormat::kJsonLines);
      std::size_t clamped = 0;
      std::size_t failures = 0;
      for (const auto& r : records) {
        clamped += r.alpha_clamped;
        failures += r.has_failures();
      }
      out << "records " << records.size() << '\n';
      if (clamped > 0) out << "alpha clamped to 1 in " << clamped << " trials\n";
      if (failures > 0) {
        out << "trials with failures " << failures << '\n';
        return kExitPartialFailure;
      }
      return kExitOk;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameterError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace csbm::cli
