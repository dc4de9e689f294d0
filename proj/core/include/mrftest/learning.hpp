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
#ifndef MRFTEST_LEARNING_HPP
#define MRFTEST_LEARNING_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mrftest/graph.hpp"
#include "mrftest/inference.hpp"
#include "mrftest/model.hpp"

namespace mrftest {

/// Moments matched by the prior-likelihood gradient: expected edge
/// agreement counts per class and the expected alternative count.
struct SufficientStats {
  std::map<EdgeClass, double> agree;
  double alt_count = 0.0;
};

/// Reduce posterior marginals to sufficient statistics.
SufficientStats data_stats(const PairwiseMarginals& pm, const Graph& g);

/// MRF side of the parameter set (what persistent contrastive divergence
/// estimates).
struct PriorParams {
  ClassCouplings phi;
  double bias = 0.0;
};

struct PcdConfig {
  std::size_t particles = 100;
  std::size_t inner_steps = 5;  // the n of PCD-n
  double initial_rate = 0.05;
  double decay = 0.002;         // rate_t = initial_rate / (1 + decay * t)
  std::size_t max_updates = 3000;
  std::size_t min_updates = 10;
  double tolerance = 1e-3;      // on the per-edge normalized gradient
  bool learn_bias = false;
};

/// Stochastic ascent of the prior log-likelihood by persistent
/// contrastive divergence. The particles live in the optimizer and
/// persist across fit() calls, so one instance serves a whole EM run.
class PcdOptimizer {
 public:
  PcdOptimizer(const Graph& g, const PcdConfig& cfg, std::uint64_t seed);

  /// Ascend from `start` until the smoothed normalized gradient drops
  /// below tolerance or max_updates is hit. The gradient is
  /// target - model_stats with model_stats averaged over the particles;
  /// each component's step is preconditioned by the particle variance of
  /// its statistic (Fisher scoring), which makes the rate scale-free in
  /// the edge count. Every update advances each particle inner_steps
  /// prior-Gibbs sweeps.
  PriorParams fit(const SufficientStats& target, const PriorParams& start);

  std::size_t last_update_count() const { return last_updates_; }
  std::size_t total_updates() const { return total_updates_; }

 private:
  const Graph* g_;
  PcdConfig cfg_;
  RandomStream rng_;
  std::vector<LatentState> particles_;
  std::size_t last_updates_ = 0;
  std::size_t total_updates_ = 0;
};

/// One-shot convenience wrapper around PcdOptimizer.
PriorParams pcd_fit(const SufficientStats& target, const Graph& g,
                    const PcdConfig& cfg, const PriorParams& start,
                    std::uint64_t seed);

/// Weighted maximum-likelihood update of the emission parameters with
/// weights 1 - lis. sigma1 is floored; throws degenerate_posterior_error
/// when the total weight falls below min_weight_total.
EmissionParams update_psi(const StatVector& x, const LisVector& lis,
                          double sigma_floor = 0.1,
                          double min_weight_total = 1e-6);

struct EmConfig {
  std::size_t max_iters = 50;
  double param_tolerance = 1e-3;
  /// Convergence is declared when every parameter's range over this many
  /// trailing iterations is within param_tolerance.
  std::size_t window = 5;
  McmcConfig e_step;  // used when the graph has cycles
  PcdConfig pcd;
  ModelParams init;   // missing couplings are filled with 0
  bool learn_bias = false;
  /// When false, sigma1 stays at its initial value and only mu1 is
  /// estimated (the basic-simulation protocol, where the alternative
  /// standard deviation is known to be 1).
  bool learn_sigma = true;
  double sigma_floor = 0.1;
  std::uint64_t seed = 0;
};

struct EmTraceRow {
  std::size_t iter = 0;
  ClassCouplings phi;
  double bias = 0.0;
  EmissionParams psi;
  double max_change = 0.0;
};

struct EmResult {
  ModelParams params;
  LisVector lis;  // posterior under the final parameters
  std::vector<EmTraceRow> trace;
  bool converged = false;
  std::size_t iterations = 0;
  bool used_bp = false;  // exact E-step (acyclic graph) vs Gibbs
};

/// EM for the full parameter set from one observed statistic vector:
/// E-step by exact BP on acyclic graphs or Gibbs MCMC otherwise, M-step
/// by PCD for (phi, bias) and weighted MLE for psi.
EmResult em_fit(const Graph& g, const StatVector& x, const EmConfig& cfg);

}  // namespace mrftest

#endif  // MRFTEST_LEARNING_HPP
