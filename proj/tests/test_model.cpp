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

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "csbm/error.hpp"
#include "csbm/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csbm;

TEST_CASE("model params validation and alpha clamp") {
  CHECK_NOTHROW(ModelParams::symmetric(2, 0.9, 0.1, 1.0).validate());
  CHECK_THROWS_AS(ModelParams::symmetric(1, 0.9, 0.1, 1.0).validate(), ParameterError);
  CHECK_THROWS_AS(ModelParams::symmetric(10, 1.0, 0.1, 1.0).validate(), ParameterError);
  CHECK_THROWS_AS(ModelParams::symmetric(10, 0.9, 0.0, 1.0).validate(), ParameterError);
  CHECK_THROWS_AS(ModelParams::symmetric(10, 0.9, 0.1, 0.0).validate(), ParameterError);

  const auto clamped = ModelParams::symmetric(10, 0.9, 0.1, 5.0);
  CHECK(clamped.alpha_clamped());
  CHECK(clamped.alpha() == 1.0);
  const auto sparse = ModelParams::symmetric(1000, 0.9, 0.1, 2.0);
  CHECK_FALSE(sparse.alpha_clamped());
  CHECK(sparse.alpha() == doctest::Approx(2.0 * std::log(1000.0) / 1000.0));
}

TEST_CASE("labeling rejects values other than +-1") {
  CHECK_THROWS_AS(Labeling({1, 0, -1}), ParameterError);
  CHECK_THROWS_AS(Labeling({2}), ParameterError);
  const Labeling l({1, -1, 1});
  CHECK(l.count_plus() == 2);
  CHECK(l.negated() == Labeling({-1, 1, -1}));
}

TEST_CASE("sample_labels") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_labels(1, rng), ParameterError);

  const Labeling four = sample_labels(4, rng);
  CHECK(four.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK((four[i] == 1 || four[i] == -1));

  // Binomial(10^4, 1/2) has sd 50; 300 is six standard deviations.
  Rng big(2024);
  const Labeling many = sample_labels(10000, big);
  CHECK(std::abs(static_cast<double>(many.count_plus()) - 5000.0) <= 300.0);

  Rng a(77);
  Rng b(77);
  CHECK(sample_labels(500, a) == sample_labels(500, b));
}

TEST_CASE("sample_graph forced outcome and errors") {
  // alpha = min(1, 10 log 2 / 2) = 1.
  const ModelParams params{2, 0.999999, 0.5, 0.5, 10.0};
  const Labeling labels({1, 1});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ObservedGraph g = sample_graph(params, labels, rng);
    REQUIRE(g.num_revealed() == 1);
    CHECK(g.pairs()[0].u == 0);
    CHECK(g.pairs()[0].v == 1);
  }
  Rng rng(3);
  CHECK_THROWS_AS(sample_graph(ModelParams::symmetric(5, 0.9, 0.1, 1.0), labels, rng),
                  ParameterError);
}

TEST_CASE("sample_graph revealed count matches alpha (sparse path)") {
  const auto params = ModelParams::symmetric(2000, 0.9, 0.1, 2.0);
  Rng rng(11);
  const Labeling labels = sample_labels(params.n, rng);
  const ObservedGraph g = sample_graph(params, labels, rng);
  const double pairs = 2000.0 * 1999.0 / 2.0;
  const double mean = params.alpha() * pairs;
  const double sd = oracle::binomial_sd(pairs, params.alpha());
  CHECK(std::abs(static_cast<double>(g.num_revealed()) - mean) <= 5.0 * sd);
}

TEST_CASE("sample_graph present fraction within a community (both paths)") {
  for (double t : {0.5, 60.0}) {  // geometric skipping, then dense sweep
    const ModelParams params{400, 0.3, 0.6, 0.8, t};
    const Labeling labels = Labeling::constant(400, 1);
    Rng rng(99);
    const ObservedGraph g = sample_graph(params, labels, rng);
    const double revealed = static_cast<double>(g.num_revealed());
    const double total = 400.0 * 399.0 / 2.0;
    CHECK(std::abs(revealed - params.alpha() * total) <=
          5.0 * oracle::binomial_sd(total, params.alpha()));
    const double present = static_cast<double>(g.num_present());
    CHECK(std::abs(present - 0.3 * revealed) <= 5.0 * oracle::binomial_sd(revealed, 0.3));
  }
}

TEST_CASE("sample_graph statistics pass a chi-square test per pair type") {
  // Pooled over seeds: counts of (type, status) for revealed pairs, and the
  // revealed count versus the censored count.
  const ModelParams params{300, 0.7, 0.2, 0.4, 4.0};
  std::array<double, 3> present{};
  std::array<double, 3> revealed{};
  double revealed_total = 0.0;
  double pair_total = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Labeling labels = sample_labels(params.n, rng);
    const ObservedGraph g = sample_graph(params, labels, rng);
    for (const auto& p : g.pairs()) {
      const int type = labels[p.u] != labels[p.v] ? 2 : (labels[p.u] > 0 ? 0 : 1);
      revealed[type] += 1.0;
      present[type] += p.status == EdgeStatus::kPresent;
    }
    revealed_total += static_cast<double>(g.num_revealed());
    pair_total += 300.0 * 299.0 / 2.0;
  }
  const std::array<double, 3> rates = {params.p1, params.p2, params.q};
  double chi2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double e1 = revealed[k] * rates[k];
    const double e0 = revealed[k] * (1.0 - rates[k]);
    chi2 += std::pow(present[k] - e1, 2) / e1 +
            std::pow(revealed[k] - present[k] - e0, 2) / e0;
  }
  // Three independent 1-dof tests: chi2(3) upper 1e-3 quantile is 16.27.
  CHECK(chi2 < 16.27);
  const double a = params.alpha();
  const double reveal_chi2 =
      std::pow(revealed_total - a * pair_total, 2) / (a * pair_total) +
      std::pow(revealed_total - a * pair_total, 2) / ((1.0 - a) * pair_total);
  // chi2(1) upper 1e-3 quantile is 10.83.
  CHECK(reveal_chi2 < 10.83);
}

TEST_CASE("sample_graph is reproducible and structurally valid") {
  const auto params = ModelParams::symmetric(300, 0.8, 0.3, 3.0);
  Rng a(5);
  Rng b(5);
  const Labeling la = sample_labels(300, a);
  const Labeling lb = sample_labels(300, b);
  const ObservedGraph ga = sample_graph(params, la, a);
  const ObservedGraph gb = sample_graph(params, lb, b);
  CHECK(ga == gb);

  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& p : ga.pairs()) {
    CHECK(p.u < p.v);
    CHECK(seen.insert({p.u, p.v}).second);
  }
  std::size_t incidences = 0;
  for (Vertex u = 0; u < 300; ++u) {
    std::size_t present = 0;
    for (const Neighbor& nb : ga.neighbors(u)) {
      CHECK(nb.vertex != u);
      CHECK(seen.count({std::min(u, nb.vertex), std::max(u, nb.vertex)}) == 1);
      present += nb.status == EdgeStatus::kPresent;
    }
    CHECK(present == ga.present_degree(u));
    incidences += ga.num_neighbors(u);
  }
  CHECK(incidences == 2 * ga.num_revealed());
}

TEST_CASE("observed graph rejects invalid pair sets") {
  CHECK_THROWS_AS(ObservedGraph(3, {{1, 1, EdgeStatus::kPresent}}), ParameterError);
  CHECK_THROWS_AS(ObservedGraph(3, {{0, 3, EdgeStatus::kPresent}}), ParameterError);
  CHECK_THROWS_AS(ObservedGraph(3, {{0, 1, EdgeStatus::kPresent},
                                    {1, 0, EdgeStatus::kAbsent}}),
                  ParameterError);
}

TEST_CASE("graph file round trips") {
  SUBCASE("empty graph") {
    const ObservedGraph g(3, {});
    std::stringstream s;
    write_graph(g, s);
    CHECK(s.str() == "n 3\n");
    CHECK(read_graph(s) == g);
  }
  SUBCASE("single present pair") {
    const ObservedGraph g(2, {{0, 1, EdgeStatus::kPresent}});
    std::stringstream s;
    write_graph(g, s);
    CHECK(s.str() == "n 2\n0 1 1\n");
    CHECK(read_graph(s) == g);
  }
  SUBCASE("sampled graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      const auto params = ModelParams::symmetric(500, 0.7, 0.2, 4.0);
      const ObservedGraph g = sample_graph(params, sample_labels(500, rng), rng);
      std::stringstream s;
      write_graph(g, s);
      CHECK(read_graph(s) == g);
    }
  }
}

TEST_CASE("graph parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> long {
    std::istringstream in(text);
    try {
      read_graph(in);
    } catch (const ParseError& e) {
      return static_cast<long>(e.line());
    }
    return -1;
  };
  CHECK(line_of("") == 0);
  CHECK(line_of("m 3\n") == 1);
  CHECK(line_of("n 3\n0 1 1\n0 1 0\n") == 3);
  CHECK(line_of("n 3\n0 1 1\n\n2 2 1\n") == 4);
  CHECK(line_of("n 3\n0 3 1\n") == 2);
  CHECK(line_of("n 3\n0 1 2\n") == 2);
  CHECK(line_of("n 3\n0 1\n") == 2);
  CHECK(line_of("n 3\n1 0 1\n") == 2);
  CHECK(line_of("n 3\n0 1 1 7\n") == 2);
  CHECK(line_of("n 4\n0 1 1\n2 3 0\n") == -1);
}

TEST_CASE("label file round trip and errors") {
  const Labeling l({1, -1, -1, 1});
  std::stringstream s;
  write_labels(l, s);
  CHECK(s.str() == "0 +1\n1 -1\n2 -1\n3 +1\n");
  CHECK(read_labels(s) == l);
  std::istringstream bad("0 +1\n2 -1\n");
  CHECK_THROWS_AS(read_labels(bad), ParseError);
  std::istringstream zero("0 0\n");
  CHECK_THROWS_AS(read_labels(zero), ParseError);
}
