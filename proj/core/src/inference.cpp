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
#include "mrftest/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mrftest/errors.hpp"

namespace mrftest {

namespace {

using LogPair = std::array<double, 2>;

inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

inline void renorm(LogPair& m) {
  const double mx = std::max(m[0], m[1]);
  m[0] -= mx;
  m[1] -= mx;
}

// Node log potentials: bias + emission (or bias only for the prior).
std::vector<LogPair> node_log_potentials(const Graph& g, const ModelParams& p,
                                         const StatVector* x) {
  std::vector<LogPair> pot(g.node_count());
  for (std::size_t i = 0; i < pot.size(); ++i) {
    pot[i][0] = x ? log_emission_at(p, i, (*x)[i], false) : 0.0;
    pot[i][1] = p.bias + (x ? log_emission_at(p, i, (*x)[i], true) : 0.0);
  }
  return pot;
}

// Sum-product in log space over a forest. Messages are renormalized per
// message; chains of length ~1e4 stay comfortably in range.
Marginals bp_forest(const Graph& g, const ModelParams& p,
                    const StatVector* x) {
  if (!g.is_acyclic())
    throw structure_error(
        "bp_marginals: graph has cycles; use gibbs_marginals");
  const std::size_t m = g.node_count();
  const auto pot = node_log_potentials(g, p, x);
  const auto phi = edge_couplings(p, g);
  const TreeOrder order = tree_order(g);

  // up[v]: message from v to its parent, indexed by the parent's state
  std::vector<LogPair> up(m, {0.0, 0.0});
  // down[v]: message from the parent of v to v, indexed by v's state
  std::vector<LogPair> down(m, {0.0, 0.0});
  // prod_up[v]: sum of up-messages from all children of v
  std::vector<LogPair> prod_up(m, {0.0, 0.0});

  // upward pass: leaves toward roots
  for (std::size_t idx = order.order.size(); idx-- > 0;) {
    const std::size_t v = order.order[idx];
    if (order.parent[v] < 0) continue;
    const double c = phi[static_cast<std::size_t>(order.parent_edge[v])];
    LogPair bel{pot[v][0] + prod_up[v][0], pot[v][1] + prod_up[v][1]};
    LogPair msg;
    msg[0] = log_add(bel[0] + c, bel[1]);  // parent state 0
    msg[1] = log_add(bel[0], bel[1] + c);  // parent state 1
    renorm(msg);
    up[v] = msg;
    const auto parent = static_cast<std::size_t>(order.parent[v]);
    prod_up[parent][0] += msg[0];
    prod_up[parent][1] += msg[1];
  }

  // downward pass: roots toward leaves
  for (const std::size_t v : order.order) {
    if (order.parent[v] < 0) continue;
    const auto parent = static_cast<std::size_t>(order.parent[v]);
    const double c = phi[static_cast<std::size_t>(order.parent_edge[v])];
    // parent belief excluding the up-message from v
    LogPair rest{pot[parent][0] + down[parent][0] + prod_up[parent][0] - up[v][0],
                 pot[parent][1] + down[parent][1] + prod_up[parent][1] - up[v][1]};
    LogPair msg;
    msg[0] = log_add(rest[0] + c, rest[1]);
    msg[1] = log_add(rest[0], rest[1] + c);
    renorm(msg);
    down[v] = msg;
  }

  Marginals out;
  out.lis.resize(m);
  out.pairwise.node_alt.resize(m);
  out.pairwise.edge_agree.resize(g.edge_count());
  for (std::size_t v = 0; v < m; ++v) {
    const double b0 = pot[v][0] + down[v][0] + prod_up[v][0];
    const double b1 = pot[v][1] + down[v][1] + prod_up[v][1];
    const double p1 = 1.0 / (1.0 + std::exp(b0 - b1));
    out.pairwise.node_alt[v] = p1;
    out.lis[v] = 1.0 - p1;
  }
  // pairwise beliefs on the spanning edges (= all edges, forest)
  for (std::size_t v = 0; v < m; ++v) {
    if (order.parent[v] < 0) continue;
    const auto parent = static_cast<std::size_t>(order.parent[v]);
    const auto e = static_cast<std::size_t>(order.parent_edge[v]);
    const double c = phi[e];
    const LogPair child_side{pot[v][0] + prod_up[v][0],
                             pot[v][1] + prod_up[v][1]};
    const LogPair parent_side{
        pot[parent][0] + down[parent][0] + prod_up[parent][0] - up[v][0],
        pot[parent][1] + down[parent][1] + prod_up[parent][1] - up[v][1]};
    // joint over (parent state, child state)
    double j00 = parent_side[0] + child_side[0] + c;
    double j01 = parent_side[0] + child_side[1];
    double j10 = parent_side[1] + child_side[0];
    double j11 = parent_side[1] + child_side[1] + c;
    const double mx = std::max(std::max(j00, j01), std::max(j10, j11));
    const double e00 = std::exp(j00 - mx), e01 = std::exp(j01 - mx);
    const double e10 = std::exp(j10 - mx), e11 = std::exp(j11 - mx);
    out.pairwise.edge_agree[e] = (e00 + e11) / (e00 + e01 + e10 + e11);
  }
  return out;
}

}  // namespace

Marginals enumerate_marginals(const Graph& g, const ModelParams& p,
                              const StatVector& x) {
  const std::size_t m = g.node_count();
  if (m > 20)
    throw size_error("enumerate_marginals: m = " + std::to_string(m) +
                     " exceeds the enumeration limit of 20");
  if (x.size() != m)
    throw invalid_size_error("enumerate_marginals: statistic length mismatch");

  const std::size_t total = std::size_t{1} << m;
  std::vector<double> logw(total);
  double mx = -std::numeric_limits<double>::infinity();
  LatentState theta(m, 0);
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < m; ++i) theta[i] = (mask >> i) & 1u;
    logw[mask] = log_joint_unnormalized(theta, x, p, g);
    mx = std::max(mx, logw[mask]);
  }
  double z = 0.0;
  std::vector<double> node_alt(m, 0.0);
  std::vector<double> agree(g.edge_count(), 0.0);
  for (std::size_t mask = 0; mask < total; ++mask) {
    const double w = std::exp(logw[mask] - mx);
    z += w;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1u) node_alt[i] += w;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edges()[e];
      if (((mask >> ed.i) & 1u) == ((mask >> ed.j) & 1u)) agree[e] += w;
    }
  }
  Marginals out;
  out.lis.resize(m);
  out.pairwise.node_alt.resize(m);
  out.pairwise.edge_agree.resize(g.edge_count());
  for (std::size_t i = 0; i < m; ++i) {
    out.pairwise.node_alt[i] = node_alt[i] / z;
    out.lis[i] = 1.0 - out.pairwise.node_alt[i];
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out.pairwise.edge_agree[e] = agree[e] / z;
  return out;
}

Marginals bp_marginals(const Graph& g, const ModelParams& p,
                       const StatVector& x) {
  if (x.size() != g.node_count())
    throw invalid_size_error("bp_marginals: statistic length mismatch");
  return bp_forest(g, p, &x);
}

Marginals bp_prior_marginals(const Graph& g, const ModelParams& p) {
  return bp_forest(g, p, nullptr);
}

double gibbs_conditional(std::size_t i, const LatentState& theta, double x_i,
                         const ModelParams& p, const Graph& g) {
  if (theta.size() != g.node_count())
    throw invalid_size_error("gibbs_conditional: state length mismatch");
  double delta = p.bias + log_emission_at(p, i, x_i, true) -
                 log_emission_at(p, i, x_i, false);
  for (const auto& [nbr, eidx] : g.adjacency()[i]) {
    const double c = coupling_for_edge(p, g, eidx);
    delta += theta[nbr] ? c : -c;
  }
  return logistic(delta);
}

GibbsSampler::GibbsSampler(const Graph& g, const ModelParams& p,
                           const StatVector* x)
    : g_(&g), bias_(p.bias) {
  const std::size_t m = g.node_count();
  if (x) {
    if (x->size() != m)
      throw invalid_size_error("GibbsSampler: statistic length mismatch");
    llr_.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      llr_[i] = log_emission_at(p, i, (*x)[i], true) -
                log_emission_at(p, i, (*x)[i], false);
  }
  const auto phi = edge_couplings(p, g);
  off_.assign(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i)
    off_[i + 1] = off_[i] + g.adjacency()[i].size();
  nbr_.resize(off_[m]);
  nbr_phi_.resize(off_[m]);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t k = off_[i];
    for (const auto& [nbr, eidx] : g.adjacency()[i]) {
      nbr_[k] = nbr;
      nbr_phi_[k] = phi[eidx];
      ++k;
    }
  }
}

void GibbsSampler::set_prior_params(const ModelParams& p) {
  bias_ = p.bias;
  const auto phi = edge_couplings(p, *g_);
  const std::size_t m = g_->node_count();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t k = off_[i];
    for (const auto& [nbr, eidx] : g_->adjacency()[i]) {
      (void)nbr;
      nbr_phi_[k] = phi[eidx];
      ++k;
    }
  }
}

LatentState GibbsSampler::initial_state(RandomStream& rng) const {
  const std::size_t m = g_->node_count();
  LatentState theta(m);
  if (!llr_.empty()) {
    for (std::size_t i = 0; i < m; ++i) theta[i] = llr_[i] > 0.0 ? 1 : 0;
  } else {
    const double p1 = logistic(bias_);
    for (std::size_t i = 0; i < m; ++i) theta[i] = rng.bernoulli(p1) ? 1 : 0;
  }
  return theta;
}

void GibbsSampler::sweep(LatentState& theta, RandomStream& rng) const {
  const std::size_t m = g_->node_count();
  for (std::size_t i = 0; i < m; ++i) {
    double delta = bias_ + (llr_.empty() ? 0.0 : llr_[i]);
    for (std::size_t k = off_[i]; k < off_[i + 1]; ++k)
      delta += theta[nbr_[k]] ? nbr_phi_[k] : -nbr_phi_[k];
    const double p1 = 1.0 / (1.0 + std::exp(-delta));
    theta[i] = rng.uniform() < p1 ? 1 : 0;
  }
}

void GibbsSampler::sweeps(LatentState& theta, RandomStream& rng,
                          std::size_t n) const {
  for (std::size_t t = 0; t < n; ++t) sweep(theta, rng);
}

Marginals gibbs_marginals(const Graph& g, const ModelParams& p,
                          const StatVector& x, const McmcConfig& cfg) {
  if (!(cfg.sweeps > cfg.burn_in))
    throw domain_error("gibbs_marginals: sweeps must exceed burn_in");
  const std::size_t m = g.node_count();
  GibbsSampler sampler(g, p, &x);
  RandomStream rng(cfg.seed);
  LatentState theta = sampler.initial_state(rng);

  std::vector<std::size_t> alt_count(m, 0);
  std::vector<std::size_t> agree_count(g.edge_count(), 0);
  for (std::size_t t = 0; t < cfg.sweeps; ++t) {
    sampler.sweep(theta, rng);
    if (t < cfg.burn_in) continue;
    for (std::size_t i = 0; i < m; ++i) alt_count[i] += theta[i];
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edges()[e];
      agree_count[e] += theta[ed.i] == theta[ed.j] ? 1u : 0u;
    }
  }
  const auto kept = static_cast<double>(cfg.sweeps - cfg.burn_in);
  Marginals out;
  out.lis.resize(m);
  out.pairwise.node_alt.resize(m);
  out.pairwise.edge_agree.resize(g.edge_count());
  for (std::size_t i = 0; i < m; ++i) {
    out.pairwise.node_alt[i] = static_cast<double>(alt_count[i]) / kept;
    out.lis[i] = 1.0 - out.pairwise.node_alt[i];
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out.pairwise.edge_agree[e] = static_cast<double>(agree_count[e]) / kept;
  return out;
}

}  // namespace mrftest
