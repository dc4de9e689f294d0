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
#include "mrftest/learning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mrftest/errors.hpp"
#include "mrftest/rng.hpp"

namespace mrftest {

SufficientStats data_stats(const PairwiseMarginals& pm, const Graph& g) {
  if (pm.edge_agree.size() != g.edge_count() ||
      pm.node_alt.size() != g.node_count())
    throw invalid_size_error("data_stats: marginals do not match the graph");
  SufficientStats s;
  for (const EdgeClass c : g.classes_present()) s.agree[c] = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    s.agree[g.edges()[e].cls] += pm.edge_agree[e];
  for (const double a : pm.node_alt) s.alt_count += a;
  return s;
}

PcdOptimizer::PcdOptimizer(const Graph& g, const PcdConfig& cfg,
                           std::uint64_t seed)
    : g_(&g), cfg_(cfg), rng_(seed) {
  if (cfg.particles == 0 || cfg.inner_steps == 0 || !(cfg.initial_rate > 0.0))
    throw domain_error("PcdOptimizer: invalid configuration");
  particles_.assign(cfg.particles, LatentState(g.node_count(), 0));
  for (auto& particle : particles_)
    for (auto& bit : particle) bit = rng_.bernoulli(0.5) ? 1 : 0;
}

PriorParams PcdOptimizer::fit(const SufficientStats& target,
                              const PriorParams& start) {
  PriorParams params = start;
  for (const EdgeClass c : g_->classes_present())
    if (params.phi.find(c) == params.phi.end()) params.phi[c] = 0.0;

  ModelParams prior;
  prior.phi = params.phi;
  prior.bias = params.bias;
  GibbsSampler sampler(*g_, prior, nullptr);

  const auto m = static_cast<double>(g_->node_count());
  const auto n_particles = static_cast<double>(particles_.size());
  const std::vector<EdgeClass> classes = g_->classes_present();

  // smoothed normalized gradient (per-edge / per-node scale)
  std::map<EdgeClass, double> ema;
  for (const EdgeClass c : classes) ema[c] = 0.0;
  double ema_bias = 0.0;
  constexpr double kSmooth = 0.9;

  // slot lookup: EdgeClass value -> position in `classes`
  std::array<std::size_t, kEdgeClassCount> slot{};
  for (std::size_t k = 0; k < classes.size(); ++k)
    slot[static_cast<std::size_t>(classes[k])] = k;

  last_updates_ = 0;
  const std::size_t n_stats = classes.size() + 1;  // agreements + alt count
  std::vector<double> per_particle(n_stats);
  std::vector<double> mean(n_stats), sq(n_stats);
  for (std::size_t t = 0; t < cfg_.max_updates; ++t) {
    for (auto& particle : particles_)
      sampler.sweeps(particle, rng_, cfg_.inner_steps);

    // model expectations and variances of the sufficient statistics,
    // estimated over the particles
    std::fill(mean.begin(), mean.end(), 0.0);
    std::fill(sq.begin(), sq.end(), 0.0);
    for (const auto& particle : particles_) {
      std::fill(per_particle.begin(), per_particle.end(), 0.0);
      for (std::size_t e = 0; e < g_->edge_count(); ++e) {
        const auto& ed = g_->edges()[e];
        if (particle[ed.i] == particle[ed.j])
          per_particle[slot[static_cast<std::size_t>(ed.cls)]] += 1.0;
      }
      for (const auto bit : particle) per_particle[n_stats - 1] += bit;
      for (std::size_t k = 0; k < n_stats; ++k) {
        mean[k] += per_particle[k];
        sq[k] += per_particle[k] * per_particle[k];
      }
    }
    for (std::size_t k = 0; k < n_stats; ++k) {
      mean[k] /= n_particles;
      sq[k] = sq[k] / n_particles - mean[k] * mean[k];
    }

    const double rate =
        cfg_.initial_rate / (1.0 + cfg_.decay * static_cast<double>(t));

    // zero-init EMA debiasing, so the convergence check is meaningful
    // after only a few updates
    const double ema_scale =
        1.0 / (1.0 - std::pow(kSmooth, static_cast<double>(t + 1)));

    double max_grad = 0.0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const EdgeClass c = classes[k];
      const auto count = static_cast<double>(g_->class_edge_count(c));
      const double gap = target.agree.at(c) - mean[k];
      // Fisher-scoring step: the statistic's model variance is its
      // curvature; floor it so saturated couplings cannot blow up
      const double precond = std::max(sq[k], 0.02 * count);
      params.phi[c] += rate * gap / precond;
      if (!std::isfinite(params.phi[c]))
        throw divergence_error("pcd_fit: coupling diverged for class " +
                               std::string(to_string(c)));
      ema[c] = kSmooth * ema[c] + (1.0 - kSmooth) * gap / count;
      max_grad = std::max(max_grad, std::fabs(ema[c]) * ema_scale);
    }
    if (cfg_.learn_bias) {
      const double gap = target.alt_count - mean[n_stats - 1];
      const double precond = std::max(sq[n_stats - 1], 0.02 * m);
      params.bias += rate * gap / precond;
      if (!std::isfinite(params.bias))
        throw divergence_error("pcd_fit: bias diverged");
      ema_bias = kSmooth * ema_bias + (1.0 - kSmooth) * gap / m;
      max_grad = std::max(max_grad, std::fabs(ema_bias) * ema_scale);
    }

    prior.phi = params.phi;
    prior.bias = params.bias;
    sampler.set_prior_params(prior);

    ++last_updates_;
    ++total_updates_;
    if (t + 1 >= cfg_.min_updates && max_grad <= cfg_.tolerance) break;
  }
  return params;
}

PriorParams pcd_fit(const SufficientStats& target, const Graph& g,
                    const PcdConfig& cfg, const PriorParams& start,
                    std::uint64_t seed) {
  PcdOptimizer opt(g, cfg, seed);
  return opt.fit(target, start);
}

EmissionParams update_psi(const StatVector& x, const LisVector& lis,
                          double sigma_floor, double min_weight_total) {
  if (x.size() != lis.size())
    throw invalid_size_error("update_psi: length mismatch");
  double w_total = 0.0, wx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = 1.0 - lis[i];
    w_total += w;
    wx += w * x[i];
  }
  if (!(w_total > min_weight_total))
    throw degenerate_posterior_error(
        "update_psi: posterior carries no alternative mass");
  const double mu = wx / w_total;
  double wss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    wss += (1.0 - lis[i]) * (x[i] - mu) * (x[i] - mu);
  EmissionParams psi;
  psi.mu1 = mu;
  psi.sigma1 = std::max(std::sqrt(wss / w_total), sigma_floor);
  return psi;
}

namespace {

std::vector<double> param_vector(const ModelParams& p,
                                 const std::vector<EdgeClass>& classes) {
  std::vector<double> v;
  v.reserve(classes.size() + 3);
  for (const EdgeClass c : classes) v.push_back(p.phi.at(c));
  v.push_back(p.bias);
  v.push_back(p.psi.mu1);
  v.push_back(p.psi.sigma1);
  return v;
}

}  // namespace

EmResult em_fit(const Graph& g, const StatVector& x, const EmConfig& cfg) {
  if (x.size() != g.node_count())
    throw invalid_size_error("em_fit: statistic length mismatch");
  if (cfg.max_iters == 0 || !(cfg.param_tolerance > 0.0))
    throw domain_error("em_fit: invalid configuration");

  EmResult result;
  result.used_bp = g.is_acyclic();

  ModelParams params = cfg.init;
  const std::vector<EdgeClass> classes = g.classes_present();
  for (const EdgeClass c : classes)
    if (params.phi.find(c) == params.phi.end()) params.phi[c] = 0.0;
  params.edge_phi.reset();  // the data-driven fit is homogeneous per class
  params.node_mu.reset();

  PcdConfig pcd_cfg = cfg.pcd;
  pcd_cfg.learn_bias = cfg.learn_bias;
  PcdOptimizer pcd(g, pcd_cfg, hash64(cfg.seed, "pcd"));

  auto e_step = [&](const ModelParams& cur, std::size_t iter) {
    if (result.used_bp) return bp_marginals(g, cur, x);
    McmcConfig mc = cfg.e_step;
    mc.seed = hash64(cfg.seed, "estep", iter);
    return gibbs_marginals(g, cur, x, mc);
  };

  std::vector<std::vector<double>> history;
  history.push_back(param_vector(params, classes));

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    const Marginals marg = e_step(params, iter);
    const SufficientStats target = data_stats(marg.pairwise, g);
    try {
      const PriorParams prior = pcd.fit(target, {params.phi, params.bias});
      params.phi = prior.phi;
      if (cfg.learn_bias) params.bias = prior.bias;
      const EmissionParams est = update_psi(x, marg.lis, cfg.sigma_floor);
      params.psi.mu1 = est.mu1;
      if (cfg.learn_sigma) params.psi.sigma1 = est.sigma1;
    } catch (const divergence_error& e) {
      throw divergence_error("em_fit iteration " + std::to_string(iter) +
                             ": " + e.what());
    } catch (const degenerate_posterior_error& e) {
      throw degenerate_posterior_error("em_fit iteration " +
                                       std::to_string(iter) + ": " + e.what());
    }

    const std::vector<double> cur = param_vector(params, classes);
    const std::vector<double>& prev = history.back();
    double max_change = 0.0;
    for (std::size_t j = 0; j < cur.size(); ++j)
      max_change = std::max(max_change, std::fabs(cur[j] - prev[j]));
    history.push_back(cur);

    EmTraceRow row;
    row.iter = iter;
    row.phi = params.phi;
    row.bias = params.bias;
    row.psi = params.psi;
    row.max_change = max_change;
    result.trace.push_back(row);
    result.iterations = iter + 1;

    // converged once every parameter is stable across the trailing window
    if (history.size() > cfg.window) {
      double range = 0.0;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        double lo = cur[j], hi = cur[j];
        for (std::size_t w = history.size() - cfg.window;
             w < history.size(); ++w) {
          lo = std::min(lo, history[w][j]);
          hi = std::max(hi, history[w][j]);
        }
        range = std::max(range, hi - lo);
      }
      if (range <= cfg.param_tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  result.lis = e_step(params, cfg.max_iters).lis;
  result.params = params;
  return result;
}

}  // namespace mrftest
