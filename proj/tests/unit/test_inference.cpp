/* Copyright (C) 2026 the mrftest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cmath>

#include "mrftest/errors.hpp"
#include "mrftest/inference.hpp"
#include "mrftest/rng.hpp"

using namespace mrftest;

namespace {

ModelParams basic_params(double coupling, double bias = 0.0) {
  ModelParams p;
  p.phi[EdgeClass::Default] = coupling;
  p.bias = bias;
  p.psi = {2.0, 1.0};
  return p;
}

// posterior null probability of an isolated node
double single_node_lis(double x, double bias, const EmissionParams& psi) {
  const double llr = log_emission(x, true, psi) - log_emission(x, false, psi);
  return 1.0 - logistic(bias + llr);
}

Graph random_forest(std::size_t m, RandomStream& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < m; ++v) {
    if (rng.uniform() < 0.2) continue;
    edges.push_back({rng.uniform_index(v), v, EdgeClass::Default});
  }
  return Graph::from_edges(m, std::move(edges));
}

}  // namespace

TEST_CASE("enumeration on a single node matches the two-term formula") {
  const Graph g = build_chain(1);
  const auto marg = enumerate_marginals(g, basic_params(0.0), {0.0});
  CHECK(marg.lis[0] == doctest::Approx(0.8807970779778824).epsilon(1e-9));
}

TEST_CASE("enumeration factorizes at zero coupling") {
  RandomStream rng(31);
  const Graph g = build_grid(2, 3);
  const ModelParams p = basic_params(0.0);
  StatVector x(g.node_count());
  for (auto& v : x) v = rng.normal(1.0, 1.5);
  const auto marg = enumerate_marginals(g, p, x);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(marg.lis[i] ==
          doctest::Approx(single_node_lis(x[i], 0.0, p.psi)).epsilon(1e-12));
}

TEST_CASE("enumeration respects exchangeable symmetry") {
  const Graph g = build_chain(2);
  const auto marg =
      enumerate_marginals(g, basic_params(std::log(4.0)), {0.0, 0.0});
  CHECK(marg.lis[0] == doctest::Approx(marg.lis[1]).epsilon(1e-14));
}

TEST_CASE("enumeration refuses oversized graphs") {
  const Graph g = build_chain(21);
  CHECK_THROWS_AS(enumerate_marginals(g, basic_params(0.0),
                                      StatVector(21, 0.0)),
                  size_error);
}

TEST_CASE("belief propagation matches enumeration on random acyclic graphs") {
  RandomStream rng(47);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + rng.uniform_index(11);
    const Graph g = random_forest(m, rng);
    ModelParams p;
    p.phi[EdgeClass::Default] = rng.uniform(-2.0, 2.0);
    p.bias = rng.uniform(-1.0, 1.0);
    p.psi = {rng.uniform(0.5, 3.0), rng.uniform(0.5, 2.0)};
    StatVector x(m);
    for (auto& v : x) v = rng.normal(0.5, 2.0);
    const auto en = enumerate_marginals(g, p, x);
    const auto bp = bp_marginals(g, p, x);
    for (std::size_t i = 0; i < m; ++i) {
      worst = std::max(worst, std::fabs(en.lis[i] - bp.lis[i]));
      CHECK(bp.pairwise.node_alt[i] ==
            doctest::Approx(1.0 - bp.lis[i]).epsilon(1e-12));
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      worst = std::max(worst, std::fabs(en.pairwise.edge_agree[e] -
                                        bp.pairwise.edge_agree[e]));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("belief propagation handles chains and trees from the examples") {
  // chain, independent case
  {
    const Graph g = build_chain(3);
    const ModelParams p = basic_params(0.0);
    const StatVector x{0.3, -1.0, 2.5};
    const auto marg = bp_marginals(g, p, x);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(marg.lis[i] ==
            doctest::Approx(single_node_lis(x[i], 0.0, p.psi)).epsilon(1e-12));
  }
  // chain m=5 with coupling, against enumeration
  {
    const Graph g = build_chain(5);
    const ModelParams p = basic_params(std::log(4.0));
    const StatVector x{1.2, -0.4, 0.9, 2.4, -1.7};
    const auto en = enumerate_marginals(g, p, x);
    const auto bp = bp_marginals(g, p, x);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(std::fabs(en.lis[i] - bp.lis[i]) <= 1e-10);
  }
  // tree of height 2, against enumeration
  {
    const Graph g = build_perfect_binary_tree(2);
    const ModelParams p = basic_params(std::log(4.0));
    RandomStream rng(5);
    StatVector x(g.node_count());
    for (auto& v : x) v = rng.normal(1.0, 1.0);
    const auto en = enumerate_marginals(g, p, x);
    const auto bp = bp_marginals(g, p, x);
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::fabs(en.lis[i] - bp.lis[i]) <= 1e-10);
  }
}

TEST_CASE("belief propagation rejects cyclic graphs") {
  const Graph g = build_grid(2, 2);
  CHECK_THROWS_AS(bp_marginals(g, basic_params(0.5), StatVector(4, 0.0)),
                  structure_error);
}

TEST_CASE("belief propagation stays stable on long chains") {
  const Graph g = build_chain(10000);
  RandomStream rng(8);
  StatVector x(g.node_count());
  for (auto& v : x) v = rng.normal();
  const auto marg = bp_marginals(g, basic_params(std::log(4.0), 0.3), x);
  for (const double v : marg.lis) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("gibbs conditional equals the joint log-density difference") {
  const Graph single = build_chain(1);
  CHECK(gibbs_conditional(0, {0}, 0.0, basic_params(0.0), single) ==
        doctest::Approx(0.11920292202211755).epsilon(1e-9));
  // bias-dominated limit
  CHECK(gibbs_conditional(0, {0}, 0.0, basic_params(0.0, 30.0), single) ==
        doctest::Approx(1.0).epsilon(1e-9));

  RandomStream rng(13);
  const Graph g = random_forest(5, rng);
  ModelParams p = basic_params(0.8, -0.3);
  StatVector x(5);
  for (auto& v : x) v = rng.normal();
  for (int trial = 0; trial < 50; ++trial) {
    LatentState theta(5);
    for (auto& b : theta) b = rng.bernoulli(0.5);
    const std::size_t i = rng.uniform_index(5);
    LatentState t1 = theta, t0 = theta;
    t1[i] = 1;
    t0[i] = 0;
    const double delta = log_joint_unnormalized(t1, x, p, g) -
                         log_joint_unnormalized(t0, x, p, g);
    CHECK(gibbs_conditional(i, theta, x[i], p, g) ==
          doctest::Approx(logistic(delta)).epsilon(1e-12));
  }
}

TEST_CASE("gibbs marginals approach exact values") {
  SUBCASE("independent chain") {
    const Graph g = build_chain(3);
    const ModelParams p = basic_params(0.0);
    const StatVector x{0.5, 1.8, -0.2};
    const auto approx = gibbs_marginals(g, p, x, {50000, 100, 99});
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::fabs(approx.lis[i] - single_node_lis(x[i], 0.0, p.psi)) <=
            0.01);
  }
  SUBCASE("three-cycle against enumeration") {
    const Graph g = Graph::from_edges(3, {{0, 1, EdgeClass::Default},
                                          {1, 2, EdgeClass::Default},
                                          {0, 2, EdgeClass::Default}});
    const ModelParams p = basic_params(std::log(4.0));
    const StatVector x{1.0, 0.2, -0.5};
    const auto exact = enumerate_marginals(g, p, x);
    const auto approx = gibbs_marginals(g, p, x, {200000, 100, 7});
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::fabs(approx.lis[i] - exact.lis[i]) <= 0.01);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      CHECK(std::fabs(approx.pairwise.edge_agree[e] -
                      exact.pairwise.edge_agree[e]) <= 0.01);
  }
}

TEST_CASE("gibbs marginals replay bit-identically under one seed") {
  const Graph g = build_grid(3, 3);
  const ModelParams p = basic_params(0.7, 0.1);
  RandomStream rng(3);
  StatVector x(g.node_count());
  for (auto& v : x) v = rng.normal();
  const McmcConfig cfg{2000, 50, 1234};
  const auto a = gibbs_marginals(g, p, x, cfg);
  const auto b = gibbs_marginals(g, p, x, cfg);
  CHECK(a.lis == b.lis);
  CHECK(a.pairwise.edge_agree == b.pairwise.edge_agree);
}

TEST_CASE("gibbs config requires sweeps beyond burn-in") {
  const Graph g = build_chain(2);
  CHECK_THROWS_AS(
      gibbs_marginals(g, basic_params(0.0), {0.0, 0.0}, {100, 100, 1}),
      domain_error);
}

TEST_CASE("single-node LIS decreases in the statistic when mu1 > 0") {
  const ModelParams p = basic_params(0.0);
  const Graph g = build_chain(1);
  double prev = 2.0;
  for (double x = -3.0; x <= 5.0; x += 0.5) {
    const auto marg = bp_marginals(g, p, {x});
    CHECK(marg.lis[0] < prev);
    prev = marg.lis[0];
  }
}
