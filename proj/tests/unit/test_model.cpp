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

#include <algorithm>
#include <cmath>

#include "mrftest/errors.hpp"
#include "mrftest/model.hpp"
#include "mrftest/rng.hpp"

using namespace mrftest;

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727;
}

TEST_CASE("matrix-to-coupling conversion") {
  CHECK(matrix_to_coupling(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(matrix_to_coupling(0.8) ==
        doctest::Approx(1.3862943611198906).epsilon(1e-12));
  for (double p = 0.2; p < 0.85; p += 0.1)
    CHECK(coupling_to_matrix(matrix_to_coupling(p)) ==
          doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS_AS(matrix_to_coupling(0.0), domain_error);
  CHECK_THROWS_AS(matrix_to_coupling(1.0), domain_error);
  CHECK_THROWS_AS(matrix_to_coupling(-0.1), domain_error);
}

TEST_CASE("log emission densities") {
  const EmissionParams psi{2.0, 1.0};
  CHECK(log_emission(0.0, false, psi) == doctest::Approx(-kHalfLog2Pi));
  CHECK(log_emission(2.0, true, psi) == doctest::Approx(-kHalfLog2Pi));
  const EmissionParams wide{2.0, 2.0};
  CHECK(log_emission(2.0, true, wide) ==
        doctest::Approx(-kHalfLog2Pi - std::log(2.0)));
}

TEST_CASE("unnormalized log prior") {
  const Graph pair = build_chain(2);
  ModelParams p;
  p.phi[EdgeClass::Default] = 1.0;
  CHECK(log_prior_unnormalized({1, 1}, p, pair) == doctest::Approx(1.0));
  CHECK(log_prior_unnormalized({0, 1}, p, pair) == doctest::Approx(0.0));

  const Graph chain3 = build_chain(3);
  ModelParams q;
  q.phi[EdgeClass::Default] = 2.0;
  q.bias = 0.5;
  CHECK(log_prior_unnormalized({1, 1, 0}, q, chain3) == doctest::Approx(3.0));

  ModelParams missing;  // no entry for class Default
  CHECK_THROWS_AS(log_prior_unnormalized({1, 1}, missing, pair),
                  missing_parameter_error);
}

TEST_CASE("unnormalized log joint") {
  const Graph single = build_chain(1);
  ModelParams p;
  p.phi[EdgeClass::Default] = 0.0;
  p.psi = {2.0, 1.0};
  CHECK(log_joint_unnormalized({0}, {0.0}, p, single) ==
        doctest::Approx(-kHalfLog2Pi).epsilon(1e-12));

  const Graph pair = build_chain(2);
  ModelParams q;
  q.phi[EdgeClass::Default] = std::log(4.0);
  q.psi = {2.0, 1.0};
  CHECK(log_joint_unnormalized({0, 0}, {0.0, 0.0}, q, pair) ==
        doctest::Approx(std::log(4.0) - 2 * kHalfLog2Pi).epsilon(1e-12));

  // additivity: joint = prior + sum of emissions, on random inputs
  RandomStream rng(3);
  const Graph g = build_grid(3, 4);
  ModelParams r;
  r.phi[EdgeClass::Default] = rng.uniform(-1.0, 1.0);
  r.bias = rng.uniform(-1.0, 1.0);
  r.psi = {1.5, 0.7};
  for (int trial = 0; trial < 20; ++trial) {
    LatentState theta(g.node_count());
    StatVector x(g.node_count());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta[i] = rng.bernoulli(0.5);
      x[i] = rng.normal();
    }
    double expect = log_prior_unnormalized(theta, r, g);
    for (std::size_t i = 0; i < theta.size(); ++i)
      expect += log_emission(x[i], theta[i] != 0, r.psi);
    CHECK(log_joint_unnormalized(theta, x, r, g) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("per-edge override reduces to the shared value when constant") {
  const Graph g = build_chain(6);
  ModelParams shared;
  shared.phi[EdgeClass::Default] = 0.7;
  ModelParams overridden = shared;
  overridden.edge_phi = std::vector<double>(g.edge_count(), 0.7);
  RandomStream rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    LatentState theta(g.node_count());
    for (auto& b : theta) b = rng.bernoulli(0.5);
    CHECK(log_prior_unnormalized(theta, shared, g) ==
          doctest::Approx(log_prior_unnormalized(theta, overridden, g))
              .epsilon(1e-14));
  }
}

TEST_CASE("per-node mu override changes only alternative emissions") {
  ModelParams p;
  p.psi = {2.0, 1.0};
  p.node_mu = std::vector<double>{3.0, 2.0};
  CHECK(log_emission_at(p, 0, 3.0, true) == doctest::Approx(-kHalfLog2Pi));
  CHECK(log_emission_at(p, 1, 2.0, true) == doctest::Approx(-kHalfLog2Pi));
  CHECK(log_emission_at(p, 0, 0.0, false) == doctest::Approx(-kHalfLog2Pi));
}

TEST_CASE("partition function is finite and positive for small graphs") {
  RandomStream rng(17);
  const Graph g = build_grid(3, 4);  // m = 12
  ModelParams p;
  p.phi[EdgeClass::Default] = 1.5;
  p.bias = -0.5;
  p.psi = {2.0, 1.0};
  StatVector x(g.node_count());
  for (auto& v : x) v = rng.normal();
  double total = 0.0;
  LatentState theta(g.node_count());
  for (std::size_t mask = 0; mask < (1u << g.node_count()); ++mask) {
    for (std::size_t i = 0; i < g.node_count(); ++i)
      theta[i] = (mask >> i) & 1u;
    total += std::exp(log_joint_unnormalized(theta, x, p, g));
  }
  CHECK(std::isfinite(total));
  CHECK(total > 0.0);
}

TEST_CASE("log joint is invariant under edge relabeling") {
  std::vector<Edge> edges{{0, 1, EdgeClass::Default},
                          {1, 2, EdgeClass::Default},
                          {2, 3, EdgeClass::Default},
                          {0, 3, EdgeClass::Default}};
  const Graph a = Graph::from_edges(4, edges);
  std::reverse(edges.begin(), edges.end());
  const Graph b = Graph::from_edges(4, edges);
  ModelParams p;
  p.phi[EdgeClass::Default] = 0.9;
  p.psi = {2.0, 1.0};
  RandomStream rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    LatentState theta(4);
    StatVector x(4);
    for (std::size_t i = 0; i < 4; ++i) {
      theta[i] = rng.bernoulli(0.5);
      x[i] = rng.normal();
    }
    CHECK(log_joint_unnormalized(theta, x, p, a) ==
          doctest::Approx(log_joint_unnormalized(theta, x, p, b))
              .epsilon(1e-12));
  }
}
