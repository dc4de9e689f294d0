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
#include "mrftest/sampling.hpp"

#include <array>
#include <cmath>

#include "mrftest/errors.hpp"
#include "mrftest/inference.hpp"
#include "mrftest/rng.hpp"

namespace mrftest {

namespace {

using LogPair = std::array<double, 2>;

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Exact ancestral draw over a forest. The conditional at a child must
// include the child's whole downstream subtree, carried by the prior-only
// upward messages; with bias = 0 those messages are uniform and the
// conditional reduces to exp(c * I(equal) + bias * state) alone.
LatentState sample_prior_exact(const Graph& g, const ModelParams& p,
                               RandomStream& rng) {
  if (!g.is_acyclic())
    throw structure_error("sample_prior: exact method requires an acyclic graph");
  const std::size_t m = g.node_count();
  const auto phi = edge_couplings(p, g);
  const TreeOrder order = tree_order(g);

  // upward pass: prod_up[v] accumulates children's messages, up[v] is the
  // message v sends to its parent (renormalized)
  std::vector<LogPair> up(m, {0.0, 0.0});
  std::vector<LogPair> prod_up(m, {0.0, 0.0});
  for (std::size_t idx = order.order.size(); idx-- > 0;) {
    const std::size_t v = order.order[idx];
    if (order.parent[v] < 0) continue;
    const double c = phi[static_cast<std::size_t>(order.parent_edge[v])];
    const LogPair bel{prod_up[v][0], p.bias + prod_up[v][1]};
    LogPair msg{log_add(bel[0] + c, bel[1]), log_add(bel[0], bel[1] + c)};
    const double mx = std::max(msg[0], msg[1]);
    msg[0] -= mx;
    msg[1] -= mx;
    up[v] = msg;
    const auto parent = static_cast<std::size_t>(order.parent[v]);
    prod_up[parent][0] += msg[0];
    prod_up[parent][1] += msg[1];
  }

  LatentState theta(m, 0);
  for (const std::size_t v : order.order) {
    double l0, l1;
    if (order.parent[v] < 0) {
      l0 = prod_up[v][0];
      l1 = p.bias + prod_up[v][1];
    } else {
      const double c = phi[static_cast<std::size_t>(order.parent_edge[v])];
      const auto parent_state = theta[static_cast<std::size_t>(order.parent[v])];
      l0 = prod_up[v][0] + (parent_state == 0 ? c : 0.0);
      l1 = p.bias + prod_up[v][1] + (parent_state == 1 ? c : 0.0);
    }
    const double p1 = 1.0 / (1.0 + std::exp(l0 - l1));
    theta[v] = rng.bernoulli(p1) ? 1 : 0;
  }
  return theta;
}

}  // namespace

LatentState sample_prior(const Graph& g, const ModelParams& p,
                         const PriorSampleConfig& cfg) {
  RandomStream rng(cfg.seed);
  if (cfg.method == PriorSampleMethod::Exact)
    return sample_prior_exact(g, p, rng);
  GibbsSampler sampler(g, p, nullptr);
  LatentState theta = sampler.initial_state(rng);
  sampler.sweeps(theta, rng, cfg.sweeps);
  return theta;
}

StatVector sample_observations(const LatentState& theta,
                               const EmissionParams& psi,
                               const std::vector<double>* mu_override,
                               std::uint64_t seed) {
  if (mu_override && mu_override->size() != theta.size())
    throw invalid_size_error("sample_observations: override length mismatch");
  RandomStream rng(seed);
  StatVector x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i]) {
      const double mu = mu_override ? (*mu_override)[i] : psi.mu1;
      x[i] = rng.normal(mu, psi.sigma1);
    } else {
      x[i] = rng.normal();
    }
  }
  return x;
}

}  // namespace mrftest
