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
#include <string>

#include "mrftest/errors.hpp"
#include "mrftest/learning.hpp"
#include "mrftest/rng.hpp"
#include "mrftest/sampling.hpp"

using namespace mrftest;

TEST_CASE("sufficient statistics from posterior marginals") {
  const Graph g = build_chain(11);  // 10 edges
  SUBCASE("certain nulls with agreeing edges") {
    PairwiseMarginals pm;
    pm.node_alt.assign(11, 0.0);
    pm.edge_agree.assign(10, 1.0);
    const SufficientStats s = data_stats(pm, g);
    CHECK(s.alt_count == doctest::Approx(0.0));
    CHECK(s.agree.at(EdgeClass::Default) == doctest::Approx(10.0));
  }
  SUBCASE("uniform marginals") {
    PairwiseMarginals pm;
    pm.node_alt.assign(11, 0.5);
    pm.edge_agree.assign(10, 0.5);
    const SufficientStats s = data_stats(pm, g);
    CHECK(s.agree.at(EdgeClass::Default) == doctest::Approx(5.0));
    CHECK(s.alt_count == doctest::Approx(5.5));
  }
  SUBCASE("enumeration and bp produce the same statistics") {
    const Graph chain = build_chain(5);
    ModelParams p;
    p.phi[EdgeClass::Default] = std::log(4.0);
    p.psi = {2.0, 1.0};
    const StatVector x{0.1, 1.9, -0.8, 2.2, 0.5};
    const auto en = enumerate_marginals(chain, p, x);
    const auto bp = bp_marginals(chain, p, x);
    const SufficientStats a = data_stats(en.pairwise, chain);
    const SufficientStats b = data_stats(bp.pairwise, chain);
    CHECK(a.agree.at(EdgeClass::Default) ==
          doctest::Approx(b.agree.at(EdgeClass::Default)).epsilon(1e-10));
    CHECK(a.alt_count == doctest::Approx(b.alt_count).epsilon(1e-10));
  }
}

TEST_CASE("weighted emission update") {
  SUBCASE("unit weights give the plain sample moments") {
    const StatVector x{1.0, 2.0, 3.0, 6.0};
    const LisVector lis(4, 0.0);
    const EmissionParams psi = update_psi(x, lis);
    CHECK(psi.mu1 == doctest::Approx(3.0));
    CHECK(psi.sigma1 == doctest::Approx(std::sqrt(14.0 / 4.0)));
  }
  SUBCASE("single support point floors sigma") {
    const StatVector x{4.2, 0.0, 0.0};
    const LisVector lis{0.0, 1.0, 1.0};
    const EmissionParams psi = update_psi(x, lis);
    CHECK(psi.mu1 == doctest::Approx(4.2));
    CHECK(psi.sigma1 == doctest::Approx(0.1));
  }
  SUBCASE("two-point weighted moments") {
    const StatVector x{0.0, 4.0};
    const LisVector lis{0.5, 0.5};
    const EmissionParams psi = update_psi(x, lis);
    CHECK(psi.mu1 == doctest::Approx(2.0));
    CHECK(psi.sigma1 == doctest::Approx(2.0));
  }
  SUBCASE("no alternative mass is an error") {
    const StatVector x{1.0, 2.0};
    const LisVector lis{1.0, 1.0};
    CHECK_THROWS_AS(update_psi(x, lis), degenerate_posterior_error);
  }
  SUBCASE("permutation equivariance") {
    RandomStream rng(5);
    StatVector x(20);
    LisVector lis(20);
    for (std::size_t i = 0; i < 20; ++i) {
      x[i] = rng.normal(1.0, 2.0);
      lis[i] = rng.uniform();
    }
    const EmissionParams a = update_psi(x, lis);
    // rotate both vectors by the same shift
    StatVector xr(20);
    LisVector lr(20);
    for (std::size_t i = 0; i < 20; ++i) {
      xr[(i + 9) % 20] = x[i];
      lr[(i + 9) % 20] = lis[i];
    }
    const EmissionParams b = update_psi(xr, lr);
    CHECK(a.mu1 == doctest::Approx(b.mu1).epsilon(1e-12));
    CHECK(a.sigma1 == doctest::Approx(b.sigma1).epsilon(1e-12));
  }
}

TEST_CASE("pcd stays put when the target matches independence") {
  const Graph g = build_chain(500);
  SufficientStats target;
  target.agree[EdgeClass::Default] = static_cast<double>(g.edge_count()) / 2.0;
  target.alt_count = 250.0;
  PcdConfig cfg;
  cfg.max_updates = 200;
  const PriorParams fitted =
      pcd_fit(target, g, cfg, {{{EdgeClass::Default, 0.0}}, 0.0}, 31);
  CHECK(std::fabs(fitted.phi.at(EdgeClass::Default)) <= 0.05);
  CHECK(fitted.bias == 0.0);  // bias not learned by default
}

TEST_CASE("pcd recovers the chain coupling from exact prior statistics") {
  const Graph g = build_chain(3000);
  ModelParams truth;
  truth.phi[EdgeClass::Default] = std::log(4.0);
  const Marginals prior = bp_prior_marginals(g, truth);
  const SufficientStats target = data_stats(prior.pairwise, g);
  // the exact prior on a chain has agreement logistic(phi) per edge
  CHECK(target.agree.at(EdgeClass::Default) /
            static_cast<double>(g.edge_count()) ==
        doctest::Approx(0.8).epsilon(1e-10));

  const PriorParams fitted =
      pcd_fit(target, g, {}, {{{EdgeClass::Default, 0.0}}, 0.0}, 77);
  CHECK(std::fabs(fitted.phi.at(EdgeClass::Default) - std::log(4.0)) <= 0.05);
}

TEST_CASE("pcd trajectories replay under one seed") {
  const Graph g = build_chain(200);
  SufficientStats target;
  target.agree[EdgeClass::Default] = 0.75 * static_cast<double>(g.edge_count());
  target.alt_count = 100.0;
  PcdConfig cfg;
  cfg.max_updates = 60;
  cfg.min_updates = 60;
  const PriorParams a = pcd_fit(target, g, cfg, {{{EdgeClass::Default, 0.0}}, 0.0}, 11);
  const PriorParams b = pcd_fit(target, g, cfg, {{{EdgeClass::Default, 0.0}}, 0.0}, 11);
  CHECK(a.phi.at(EdgeClass::Default) == b.phi.at(EdgeClass::Default));
}

TEST_CASE("pcd learns a bias for sparse targets when asked") {
  const Graph g = build_chain(400);
  SufficientStats target;
  // independence stats for P(theta=1) = 0.2: agreement = p^2 + (1-p)^2
  target.alt_count = 0.2 * 400.0;
  target.agree[EdgeClass::Default] = (0.2 * 0.2 + 0.8 * 0.8) * 399.0;
  PcdConfig cfg;
  cfg.learn_bias = true;
  const PriorParams fitted =
      pcd_fit(target, g, cfg, {{{EdgeClass::Default, 0.0}}, 0.0}, 13);
  // logit(0.2) = -1.386; coupling stays near zero
  CHECK(std::fabs(fitted.bias - std::log(0.25)) <= 0.25);
  CHECK(std::fabs(fitted.phi.at(EdgeClass::Default)) <= 0.15);
}

TEST_CASE("em on an acyclic graph is deterministic and well-behaved") {
  const Graph g = build_chain(400);
  ModelParams truth;
  truth.phi[EdgeClass::Default] = matrix_to_coupling(0.8);
  truth.psi = {2.0, 1.0};
  PriorSampleConfig pc;
  pc.seed = 61;
  const LatentState theta = sample_prior(g, truth, pc);
  const StatVector x = sample_observations(theta, truth.psi, nullptr, 62);

  EmConfig cfg;
  cfg.seed = 63;
  cfg.param_tolerance = 0.01;
  cfg.max_iters = 30;
  const EmResult a = em_fit(g, x, cfg);
  const EmResult b = em_fit(g, x, cfg);

  CHECK(a.used_bp);
  CHECK(a.params.phi.at(EdgeClass::Default) ==
        b.params.phi.at(EdgeClass::Default));
  CHECK(a.params.psi.mu1 == b.params.psi.mu1);
  CHECK(a.lis == b.lis);
  for (const double v : a.lis) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(a.params.psi.sigma1 > 0.0);
  // recovery sanity at modest scale
  CHECK(std::fabs(coupling_to_matrix(a.params.phi.at(EdgeClass::Default)) -
                  0.8) <= 0.1);
  CHECK(std::fabs(a.params.psi.mu1 - 2.0) <= 0.35);
  CHECK(a.trace.size() == a.iterations);

  // declared convergence implies bounded oscillation across the window
  if (a.converged && a.trace.size() >= 5) {
    const auto& tail = a.trace;
    double lo = tail.back().psi.mu1, hi = lo;
    for (std::size_t k = tail.size() - 5; k < tail.size(); ++k) {
      lo = std::min(lo, tail[k].psi.mu1);
      hi = std::max(hi, tail[k].psi.mu1);
    }
    CHECK(hi - lo <= 2 * cfg.param_tolerance);
  }
}

TEST_CASE("em propagates a divergence with its iteration index") {
  const Graph g = build_chain(30);
  const StatVector x(30, 0.0);
  EmConfig cfg;
  cfg.pcd.initial_rate = 1e308;  // guaranteed blow-up
  cfg.pcd.min_updates = 1;
  bool thrown = false;
  try {
    em_fit(g, x, cfg);
  } catch (const divergence_error& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("em_fit iteration") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("em config validation") {
  const Graph g = build_chain(3);
  const StatVector x(3, 0.0);
  EmConfig cfg;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(em_fit(g, x, cfg), domain_error);
  EmConfig bad_len;
  CHECK_THROWS_AS(em_fit(g, StatVector(2, 0.0), bad_len), invalid_size_error);
}
