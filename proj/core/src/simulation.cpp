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
#include "mrftest/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrftest/errors.hpp"
#include "mrftest/io.hpp"
#include "mrftest/rng.hpp"
#include "mrftest/sampling.hpp"
#include "mrftest/threading.hpp"

namespace mrftest {

const char* to_string(ProcedureKind p) {
  switch (p) {
    case ProcedureKind::Oracle: return "or";
    case ProcedureKind::Lis: return "lis";
    case ProcedureKind::Bh: return "bh";
    case ProcedureKind::AdaptiveP: return "ap";
    case ProcedureKind::LocalFdr: return "lfdr";
  }
  return "?";
}

void validate(const Scenario& sc) {
  if (!(sc.alpha > 0.0 && sc.alpha < 1.0))
    throw config_error("scenario: alpha must lie in (0,1)");
  if (sc.replications == 0)
    throw config_error("scenario: replications must be >= 1");
  if (sc.procedures.empty())
    throw config_error("scenario: no procedures requested");
  const double lo = sc.phi_center - sc.phi_delta / 2.0;
  const double hi = sc.phi_center + sc.phi_delta / 2.0;
  if (!(lo > 0.0 && hi < 1.0))
    throw config_error("scenario: phi band must stay inside (0,1)");
  if (!(sc.sigma1 > 0.0)) throw config_error("scenario: sigma1 must be > 0");
  if (sc.asymptotic && sc.genetic)
    throw config_error("scenario: asymptotic and genetic blocks are exclusive");
  if (sc.asymptotic && sc.asymptotic->n < 4)
    throw config_error("scenario: asymptotic sample size too small");
  if (sc.genetic) {
    const auto& gb = *sc.genetic;
    if (std::find(sc.procedures.begin(), sc.procedures.end(),
                  ProcedureKind::Oracle) != sc.procedures.end())
      throw config_error(
          "scenario: the oracle procedure is unavailable in genetic mode "
          "(no ground-truth parameters exist)");
    if (gb.causal == 0 || gb.causal > sc.m)
      throw config_error("scenario: genetic causal count out of range");
    if (!(gb.t > 0.0 && gb.t < 1.0))
      throw config_error("scenario: genetic t must lie in (0,1)");
    if (gb.cases == 0 || gb.controls == 0)
      throw config_error("scenario: genetic case/control counts must be > 0");
    if (!(gb.rr > 0.0)) throw config_error("scenario: relative risk must be > 0");
    if (!(gb.prevalence > 0.0 && gb.prevalence < 1.0))
      throw config_error("scenario: prevalence must lie in (0,1)");
    if (!(gb.rho_min > 0.0 && gb.rho_min <= gb.rho_max && gb.rho_max < 1.0))
      throw config_error("scenario: genetic rho range invalid");
    if (!(gb.maf_min > 0.0 && gb.maf_min <= gb.maf_max && gb.maf_max <= 0.5))
      throw config_error("scenario: genetic maf range invalid");
  }
  if (sc.kind == StructureKind::EdgeList && sc.edge_path.empty() && !sc.genetic)
    throw config_error("scenario: edgelist structure requires structure.path");
}

namespace {

Graph build_structure(const Scenario& sc) {
  switch (sc.kind) {
    case StructureKind::Chain: return build_chain(sc.m);
    case StructureKind::Tree: return build_perfect_binary_tree(sc.height);
    case StructureKind::Grid: return build_grid(sc.rows, sc.cols);
    case StructureKind::EdgeList: {
      const auto records = read_edge_list(sc.edge_path);
      std::size_t m = 0;
      for (const auto& r : records) m = std::max({m, r.i + 1, r.j + 1});
      return graph_from_edge_records(records, m);
    }
  }
  throw config_error("scenario: unknown structure kind");
}

// True generative parameters for a basic (non-genetic) replication,
// including heterogeneous per-edge / per-node draws when bands are open.
ModelParams draw_truth_params(const Scenario& sc, const Graph& g,
                              std::uint64_t rep_seed) {
  ModelParams truth;
  for (const EdgeClass c : g.classes_present())
    truth.phi[c] = matrix_to_coupling(sc.phi_center);
  truth.bias = sc.bias;
  truth.psi = {sc.mu_center, sc.sigma1};
  if (sc.phi_delta > 0.0) {
    RandomStream rng(hash64(rep_seed, "phi-band"));
    std::vector<double> edge_phi(g.edge_count());
    for (auto& v : edge_phi)
      v = matrix_to_coupling(rng.uniform(sc.phi_center - sc.phi_delta / 2.0,
                                         sc.phi_center + sc.phi_delta / 2.0));
    truth.edge_phi = std::move(edge_phi);
  }
  if (sc.mu_delta > 0.0) {
    RandomStream rng(hash64(rep_seed, "mu-band"));
    std::vector<double> node_mu(g.node_count());
    for (auto& v : node_mu)
      v = rng.uniform(sc.mu_center - sc.mu_delta / 2.0,
                      sc.mu_center + sc.mu_delta / 2.0);
    truth.node_mu = std::move(node_mu);
  }
  return truth;
}

// z statistics from the asymptotic two-proportion test. The effect on
// heads probability is sized so the limiting mean of z is block.mu.
StatVector draw_asymptotic_stats(const AsymptoticBlock& block,
                                 const LatentState& theta,
                                 std::uint64_t seed) {
  RandomStream rng(seed);
  const std::size_t n_pos = block.n / 2;
  const std::size_t n_neg = block.n - n_pos;
  const double spread =
      std::sqrt(block.base * (1.0 - block.base) *
                (1.0 / static_cast<double>(n_pos) +
                 1.0 / static_cast<double>(n_neg)));
  const double p_alt = std::min(0.999, block.base + block.mu * spread);
  StatVector x(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double p_pos = theta[i] ? p_alt : block.base;
    const std::size_t heads_pos = rng.binomial(n_pos, p_pos);
    const std::size_t heads_neg = rng.binomial(n_neg, block.base);
    x[i] = two_proportion_z(heads_pos, n_pos, heads_neg, n_neg);
  }
  return x;
}

Marginals infer(const Graph& g, const ModelParams& params, const StatVector& x,
                const McmcConfig& mcmc, std::uint64_t seed) {
  if (g.is_acyclic()) return bp_marginals(g, params, x);
  McmcConfig cfg = mcmc;
  cfg.seed = seed;
  return gibbs_marginals(g, params, x, cfg);
}

EmConfig em_config(const Scenario& sc, std::uint64_t rep_seed) {
  EmConfig cfg;
  cfg.max_iters = sc.em_max_iters;
  cfg.param_tolerance = sc.em_tolerance;
  cfg.window = sc.em_window;
  cfg.e_step = sc.mcmc;
  cfg.pcd = sc.pcd;
  cfg.learn_bias = sc.genetic.has_value();
  // basic simulations treat the alternative spread as known; only the
  // genetic scenario estimates the full psi = (mu1, sigma1)
  cfg.learn_sigma = sc.genetic.has_value();
  cfg.init.psi = {2.0, sc.asymptotic || sc.genetic ? 1.0 : sc.sigma1};
  cfg.seed = hash64(rep_seed, "em");
  return cfg;
}

struct GeneticRelativeRisk {
  double het = 1.0;
  double hom = 1.0;
};

GeneticRelativeRisk genotype_risk(const GeneticBlock& gb) {
  switch (gb.model) {
    case GeneticModel::Additive: return {(1.0 + gb.rr) / 2.0, gb.rr};
    case GeneticModel::Dominant: return {gb.rr, gb.rr};
    case GeneticModel::Recessive: return {1.0, gb.rr};
  }
  throw config_error("genetic: unknown relative-risk model");
}

// LD layout fixed across replications: block boundaries, per-block
// haplotype correlation, minor-allele frequency, and the jittered
// within-block r2 table used for both the graph and the truth labels.
struct LdLayout {
  std::vector<std::size_t> block_of;
  std::vector<std::size_t> pos_in_block;
  std::vector<std::size_t> block_start;
  std::vector<std::size_t> block_size;
  std::vector<double> rho;
  std::vector<double> maf;
  // pair_r2[b] holds r2 for in-block pairs (a,c), a < c, row-major over
  // the s*(s-1)/2 combinations
  std::vector<std::vector<double>> pair_r2;
};

LdLayout make_ld_layout(const Scenario& sc) {
  const auto& gb = *sc.genetic;
  RandomStream rng(hash64(sc.seed, "ld-layout"));
  LdLayout ld;
  ld.block_of.resize(sc.m);
  ld.pos_in_block.resize(sc.m);
  const double p_stop = 1.0 / std::max(1.0, gb.block_mean);
  std::size_t i = 0;
  while (i < sc.m) {
    // geometric block size with the configured mean
    std::size_t size = 1;
    while (i + size < sc.m && !rng.bernoulli(p_stop)) ++size;
    const std::size_t b = ld.block_start.size();
    ld.block_start.push_back(i);
    ld.block_size.push_back(size);
    ld.rho.push_back(rng.uniform(gb.rho_min, gb.rho_max));
    ld.maf.push_back(rng.uniform(gb.maf_min, gb.maf_max));
    for (std::size_t k = 0; k < size; ++k) {
      ld.block_of[i + k] = b;
      ld.pos_in_block[i + k] = k;
    }
    ld.pair_r2.emplace_back();
    auto& pairs = ld.pair_r2.back();
    pairs.reserve(size * (size - 1) / 2);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t c = a + 1; c < size; ++c) {
        const auto dist = static_cast<double>(c - a);
        const double noise =
            gb.r2_jitter > 0.0 ? std::exp(rng.uniform(-gb.r2_jitter,
                                                      gb.r2_jitter))
                               : 1.0;
        pairs.push_back(std::min(0.999, std::pow(ld.rho[b], 2.0 * dist) * noise));
      }
    i += size;
  }
  return ld;
}

double r2_between(const LdLayout& ld, std::size_t a, std::size_t b) {
  if (a == b) return 1.0;
  if (ld.block_of[a] != ld.block_of[b]) return 0.0;
  const std::size_t blk = ld.block_of[a];
  std::size_t lo = ld.pos_in_block[a], hi = ld.pos_in_block[b];
  if (lo > hi) std::swap(lo, hi);
  const std::size_t s = ld.block_size[blk];
  // row-major index of the (lo, hi) combination
  const std::size_t idx = lo * s - lo * (lo + 1) / 2 + (hi - lo - 1);
  return ld.pair_r2[blk][idx];
}

// One haplotype: first-order Markov chain within each block with
// stationary maf and adjacent correlation rho; independent across blocks.
void draw_haplotype(const LdLayout& ld, RandomStream& rng,
                    std::vector<std::uint8_t>& h) {
  const std::size_t m = ld.block_of.size();
  for (std::size_t b = 0; b < ld.block_start.size(); ++b) {
    const double p = ld.maf[b];
    const double rho = ld.rho[b];
    const std::size_t start = ld.block_start[b];
    const std::size_t size = ld.block_size[b];
    h[start] = rng.bernoulli(p) ? 1 : 0;
    for (std::size_t k = 1; k < size; ++k) {
      const double p1 = h[start + k - 1] ? p + rho * (1.0 - p)
                                         : p * (1.0 - rho);
      h[start + k] = rng.bernoulli(p1) ? 1 : 0;
    }
  }
  (void)m;
}

}  // namespace

GeneticData genetic_scenario_data(const Scenario& sc, std::uint64_t rep_seed) {
  if (!sc.genetic) throw config_error("genetic_scenario_data: no genetic block");
  const auto& gb = *sc.genetic;
  const LdLayout ld = make_ld_layout(sc);

  // causal SNP selection (without replacement)
  RandomStream causal_rng(hash64(rep_seed, "causal"));
  std::vector<std::size_t> ids(sc.m);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  for (std::size_t k = 0; k < gb.causal; ++k) {
    const std::size_t j = k + causal_rng.uniform_index(sc.m - k);
    std::swap(ids[k], ids[j]);
  }
  std::vector<std::size_t> causal(ids.begin(),
                                  ids.begin() + static_cast<std::ptrdiff_t>(gb.causal));
  std::sort(causal.begin(), causal.end());

  GeneticData data;
  data.truth.assign(sc.m, 0);
  for (std::size_t i = 0; i < sc.m; ++i)
    for (const std::size_t c : causal)
      if (r2_between(ld, i, c) > gb.t) {
        data.truth[i] = 1;
        break;
      }

  // retrospective sampling: draw individuals until both groups are full
  const GeneticRelativeRisk risk = genotype_risk(gb);
  RandomStream rng(hash64(rep_seed, "genotypes"));
  data.tables.assign(sc.m, GenotypeCounts{});
  std::vector<std::uint8_t> h1(sc.m), h2(sc.m);
  std::vector<std::uint8_t> genotype(sc.m);
  std::size_t need_cases = gb.cases, need_controls = gb.controls;
  const std::size_t max_attempts = 500 * (gb.cases + gb.controls) + 10000;
  std::size_t attempts = 0;
  while ((need_cases > 0 || need_controls > 0) && attempts < max_attempts) {
    ++attempts;
    draw_haplotype(ld, rng, h1);
    draw_haplotype(ld, rng, h2);
    for (std::size_t i = 0; i < sc.m; ++i) genotype[i] = h1[i] + h2[i];
    double p_disease = gb.prevalence;
    for (const std::size_t c : causal) {
      if (genotype[c] == 1) p_disease *= risk.het;
      else if (genotype[c] == 2) p_disease *= risk.hom;
    }
    p_disease = std::min(p_disease, 1.0);
    const bool diseased = rng.bernoulli(p_disease);
    if (diseased) {
      if (need_cases == 0) continue;
      --need_cases;
      for (std::size_t i = 0; i < sc.m; ++i) ++data.tables[i].cases[genotype[i]];
    } else {
      if (need_controls == 0) continue;
      --need_controls;
      for (std::size_t i = 0; i < sc.m; ++i)
        ++data.tables[i].controls[genotype[i]];
    }
  }
  if (need_cases > 0 || need_controls > 0)
    throw config_error(
        "genetic_scenario_data: could not fill case/control groups; "
        "raise prevalence or lower group sizes");

  data.stats.resize(sc.m);
  for (std::size_t i = 0; i < sc.m; ++i) {
    const auto& tab = data.tables[i];
    if (gb.stat == GeneticStat::Catt) {
      try {
        data.stats[i] = catt(tab);
      } catch (const domain_error&) {
        data.stats[i] = 0.0;  // monomorphic in this sample: no evidence
      }
    } else {
      const std::size_t heads_pos = tab.cases[1] + 2 * tab.cases[2];
      const std::size_t heads_neg = tab.controls[1] + 2 * tab.controls[2];
      data.stats[i] = two_proportion_z(heads_pos, 2 * gb.cases, heads_neg,
                                       2 * gb.controls);
    }
  }

  // dependence graph from the synthetic r2 records via the max-r2 rule
  std::vector<R2Record> records;
  for (std::size_t b = 0; b < ld.block_start.size(); ++b) {
    const std::size_t start = ld.block_start[b], size = ld.block_size[b];
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t c = a + 1; c < size; ++c)
        records.push_back(
            {start + a, start + c, r2_between(ld, start + a, start + c)});
  }
  data.graph = build_max_r2_graph(records, sc.m, gb.thresholds);
  return data;
}

ReplicationResult run_replication(const Scenario& sc, std::uint64_t rep_seed) {
  ReplicationResult result;
  try {
    Graph g;
    LatentState truth;
    StatVector x;
    ModelParams oracle_params;  // meaningful only in basic mode
    EmissionParams endow_psi;   // what AP/localFDR are endowed with
    double endow_pi0 = 0.5;

    if (sc.genetic) {
      GeneticData data = genetic_scenario_data(sc, rep_seed);
      g = std::move(data.graph);
      truth = std::move(data.truth);
      x = std::move(data.stats);
    } else {
      g = build_structure(sc);
      oracle_params = draw_truth_params(sc, g, rep_seed);
      PriorSampleConfig prior_cfg;
      prior_cfg.method = g.is_acyclic() ? PriorSampleMethod::Exact
                                        : PriorSampleMethod::Gibbs;
      prior_cfg.sweeps = sc.prior_sweeps;
      prior_cfg.burn_in = sc.prior_burn_in;
      prior_cfg.seed = hash64(rep_seed, "theta");
      truth = sample_prior(g, oracle_params, prior_cfg);
      if (sc.asymptotic) {
        x = draw_asymptotic_stats(*sc.asymptotic, truth,
                                  hash64(rep_seed, "x"));
        oracle_params.psi = {sc.asymptotic->mu, 1.0};
        oracle_params.node_mu.reset();
      } else {
        x = sample_observations(truth, oracle_params.psi,
                                oracle_params.node_mu
                                    ? &*oracle_params.node_mu
                                    : nullptr,
                                hash64(rep_seed, "x"));
      }
      endow_psi = oracle_params.psi;
      endow_pi0 = logistic(-sc.bias);
    }
    result.truth = truth;

    // the data-driven fit is shared by LIS and, in genetic mode, by the
    // baselines that need an estimated null proportion and psi
    std::optional<EmResult> fit;
    auto fitted = [&]() -> const EmResult& {
      if (!fit) fit = em_fit(g, x, em_config(sc, rep_seed));
      return *fit;
    };
    if (sc.genetic) {
      const EmResult& em = fitted();
      double mean_lis = 0.0;
      for (const double v : em.lis) mean_lis += v;
      endow_pi0 = std::clamp(mean_lis / static_cast<double>(em.lis.size()),
                             1e-6, 1.0);
      endow_psi = em.params.psi;
    }

    std::vector<double> pvals;
    auto pvalues = [&]() -> const std::vector<double>& {
      if (pvals.empty()) {
        pvals.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
          pvals[i] = z_to_pvalue(x[i], Sidedness::OneSidedUpper);
      }
      return pvals;
    };

    for (const ProcedureKind proc : sc.procedures) {
      ProcedureOutput out;
      out.proc = proc;
      switch (proc) {
        case ProcedureKind::Oracle: {
          const Marginals marg = infer(g, oracle_params, x, sc.mcmc,
                                       hash64(rep_seed, "oracle-gibbs"));
          out.scores = marg.lis;
          out.decision = lis_stepup(out.scores, sc.alpha);
          break;
        }
        case ProcedureKind::Lis: {
          out.scores = fitted().lis;
          out.decision = lis_stepup(out.scores, sc.alpha);
          break;
        }
        case ProcedureKind::Bh: {
          out.scores = pvalues();
          out.decision = bh(out.scores, sc.alpha);
          break;
        }
        case ProcedureKind::AdaptiveP: {
          out.scores = pvalues();
          out.decision = adaptive_p(out.scores, sc.alpha, endow_pi0);
          break;
        }
        case ProcedureKind::LocalFdr: {
          out.scores = local_fdr_scores(x, endow_pi0, endow_psi);
          out.decision = lis_stepup(out.scores, sc.alpha);
          break;
        }
      }
      out.counts = counts_from_truth(truth, out.decision);
      result.procedures.push_back(std::move(out));
    }
  } catch (const error& e) {
    result.failed = true;
    result.error = e.what();
    result.procedures.clear();
  }
  return result;
}

MetricsReport metrics_from_runs(const std::vector<ReplicationResult>& runs,
                                double alpha) {
  MetricsReport report;
  report.alpha = alpha;
  std::vector<const ReplicationResult*> ok;
  for (const auto& r : runs) {
    if (r.failed) ++report.failed;
    else ok.push_back(&r);
  }
  report.replications = ok.size();
  if (ok.empty()) return report;

  const std::size_t n_procs = ok.front()->procedures.size();
  const auto n = static_cast<double>(ok.size());
  for (std::size_t pi = 0; pi < n_procs; ++pi) {
    std::vector<double> fdp, fnp, tps;
    fdp.reserve(ok.size());
    for (const auto* r : ok) {
      const CountsTable& t = r->procedures[pi].counts;
      fdp.push_back(static_cast<double>(t.n10) /
                    static_cast<double>(std::max<std::size_t>(t.rejected(), 1)));
      fnp.push_back(static_cast<double>(t.n01) /
                    static_cast<double>(std::max<std::size_t>(t.not_rejected(), 1)));
      tps.push_back(static_cast<double>(t.n11));
    }
    auto mean_se = [n](const std::vector<double>& v) {
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
      double ss = 0.0;
      for (const double a : v) ss += (a - mean) * (a - mean);
      const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
      return std::pair<double, double>{mean, se};
    };
    ProcedureMetrics pm;
    pm.proc = ok.front()->procedures[pi].proc;
    std::tie(pm.fdr, pm.fdr_se) = mean_se(fdp);
    std::tie(pm.fnr, pm.fnr_se) = mean_se(fnp);
    std::tie(pm.atp, pm.atp_se) = mean_se(tps);
    pm.tp = pm.atp;
    report.procedures.push_back(pm);
  }
  return report;
}

ScenarioRun run_scenario_full(const Scenario& sc) {
  validate(sc);
  ScenarioRun run;
  run.replications.resize(sc.replications);
  parallel_for(sc.replications, sc.threads, [&](std::size_t rep) {
    run.replications[rep] = run_replication(sc, hash64(sc.seed, "rep", rep));
  });
  run.report = metrics_from_runs(run.replications, sc.alpha);
  if (run.report.replications == 0) {
    std::string first;
    for (const auto& r : run.replications)
      if (r.failed) { first = r.error; break; }
    throw error("run_scenario: all replications failed: " + first);
  }
  return run;
}

MetricsReport run_scenario(const Scenario& sc) {
  return run_scenario_full(sc).report;
}

namespace {

// One replication's ROC/PR vertices from a threshold sweep over the
// distinct score values (smaller score = more significant).
struct SweepCurves {
  std::vector<std::pair<double, double>> roc;  // (fpr, tpr), monotone
  std::vector<std::pair<double, double>> pr;   // (recall, precision)
};

SweepCurves sweep_curves(const std::vector<double>& scores,
                         const LatentState& truth) {
  const std::size_t m = scores.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  std::size_t pos_total = 0;
  for (const auto b : truth) pos_total += b;
  const std::size_t neg_total = m - pos_total;

  SweepCurves out;
  out.roc.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && scores[idx[j]] == scores[idx[i]]) {
      if (truth[idx[j]]) ++tp; else ++fp;
      ++j;
    }
    i = j;
    const double tpr = pos_total ? static_cast<double>(tp) / pos_total : 0.0;
    const double fpr = neg_total ? static_cast<double>(fp) / neg_total : 0.0;
    out.roc.push_back({fpr, tpr});
    const double recall = tpr;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    out.pr.push_back({recall, precision});
  }
  return out;
}

double interp_roc(const std::vector<std::pair<double, double>>& roc,
                  double fpr) {
  // piecewise-linear in fpr; vertical segments resolve to the upper value
  for (std::size_t k = 1; k < roc.size(); ++k) {
    if (roc[k].first >= fpr) {
      const auto& [x0, y0] = roc[k - 1];
      const auto& [x1, y1] = roc[k];
      if (x1 == x0) return std::max(y0, y1);
      if (fpr <= x0) return y0;
      return y0 + (y1 - y0) * (fpr - x0) / (x1 - x0);
    }
  }
  return roc.back().second;
}

double interp_pr(const std::vector<std::pair<double, double>>& pr,
                 double recall) {
  // precision of the smallest prefix whose recall reaches the grid point
  for (const auto& [r, p] : pr)
    if (r >= recall) return p;
  return pr.back().second;
}

}  // namespace

CurvePoints roc_pr_points(const std::vector<std::vector<double>>& score_runs,
                          const std::vector<LatentState>& truths) {
  if (score_runs.empty() || score_runs.size() != truths.size())
    throw invalid_size_error("roc_pr_points: need matched score/truth runs");
  std::vector<SweepCurves> curves;
  for (std::size_t r = 0; r < score_runs.size(); ++r) {
    std::size_t pos = 0, neg = 0;
    for (const auto b : truths[r]) b ? ++pos : ++neg;
    if (pos == 0 || neg == 0) continue;  // rates undefined for this run
    curves.push_back(sweep_curves(score_runs[r], truths[r]));
  }
  CurvePoints out;
  if (curves.empty()) {
    out.pr_defined = false;
    return out;
  }
  const auto n = static_cast<double>(curves.size());
  for (int gi = 0; gi <= 100; ++gi) {
    const double grid = gi / 100.0;
    double tpr = 0.0, prec = 0.0;
    for (const auto& c : curves) {
      tpr += interp_roc(c.roc, grid);
      prec += interp_pr(c.pr, grid);
    }
    out.roc.push_back({grid, tpr / n});
    out.pr.push_back({grid, prec / n});
  }
  return out;
}

}  // namespace mrftest
