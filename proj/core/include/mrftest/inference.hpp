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
#ifndef MRFTEST_INFERENCE_HPP
#define MRFTEST_INFERENCE_HPP

#include <cstdint>
#include <vector>

#include "mrftest/graph.hpp"
#include "mrftest/model.hpp"
#include "mrftest/rng.hpp"

namespace mrftest {

/// Local index of significance: lis[i] = P(theta_i = 0 | x).
using LisVector = std::vector<double>;

/// Posterior moments consumed by the learning gradient: per-node
/// alternative probabilities and per-edge agreement probabilities.
/// node_alt[i] = 1 - lis[i] always holds.
struct PairwiseMarginals {
  std::vector<double> node_alt;    // P(theta_i = 1 | x)
  std::vector<double> edge_agree;  // P(theta_i = theta_j | x), per edge
};

struct Marginals {
  LisVector lis;
  PairwiseMarginals pairwise;
};

struct McmcConfig {
  std::size_t sweeps = 20000;
  std::size_t burn_in = 100;
  std::uint64_t seed = 0;
};

/// Exact marginals by summing the unnormalized joint over all 2^m
/// configurations. The brute-force oracle; m must be <= 20.
Marginals enumerate_marginals(const Graph& g, const ModelParams& p,
                              const StatVector& x);

/// Exact marginals on an acyclic graph by sum-product message passing
/// (two passes per tree). On chains this is forward-backward, on trees
/// upward-downward. Throws structure_error on cyclic graphs.
Marginals bp_marginals(const Graph& g, const ModelParams& p,
                       const StatVector& x);

/// Same message passing with uniform emissions: marginals of the prior
/// P(theta) alone. Used for prior sampling and learning targets.
Marginals bp_prior_marginals(const Graph& g, const ModelParams& p);

/// Full conditional P(theta_i = 1 | theta_{-i}, x_i). Equals
/// logistic(d) with d = log_joint(theta_i=1) - log_joint(theta_i=0).
double gibbs_conditional(std::size_t i, const LatentState& theta, double x_i,
                         const ModelParams& p, const Graph& g);

/// Approximate marginals by systematic-scan Gibbs sampling: lis[i] is the
/// fraction of post-burn-in sweeps with theta_i = 0, edge_agree[e] the
/// fraction with equal endpoints. Deterministic given cfg.seed.
Marginals gibbs_marginals(const Graph& g, const ModelParams& p,
                          const StatVector& x, const McmcConfig& cfg);

/// Systematic-scan Gibbs kernel over the joint (or over the prior when
/// constructed without statistics). Precomputes the per-node evidence
/// log-likelihood ratios and a flat adjacency so a sweep is allocation
/// free. One chain is strictly sequential; run several instances with
/// distinct seeds for parallel chains.
class GibbsSampler {
 public:
  GibbsSampler(const Graph& g, const ModelParams& p, const StatVector* x);

  /// theta_i = 1 iff the evidence favors the alternative (f1 > f0);
  /// prior-only chains start from iid Bernoulli(logistic(bias)) draws.
  LatentState initial_state(RandomStream& rng) const;

  void sweep(LatentState& theta, RandomStream& rng) const;
  void sweeps(LatentState& theta, RandomStream& rng, std::size_t n) const;

  const Graph& graph() const { return *g_; }

  /// Replace couplings/bias in place (particle learning advances the
  /// same chains under moving parameters).
  void set_prior_params(const ModelParams& p);

 private:
  const Graph* g_;
  double bias_;
  std::vector<double> llr_;        // log f1(x_i) - log f0(x_i); empty => prior
  std::vector<std::size_t> off_;   // CSR adjacency offsets
  std::vector<std::size_t> nbr_;
  std::vector<double> nbr_phi_;
};

}  // namespace mrftest

#endif  // MRFTEST_INFERENCE_HPP
