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
#ifndef MRFTEST_SIMULATION_HPP
#define MRFTEST_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrftest/graph.hpp"
#include "mrftest/inference.hpp"
#include "mrftest/learning.hpp"
#include "mrftest/model.hpp"
#include "mrftest/procedures.hpp"

namespace mrftest {

enum class StructureKind { Chain, Tree, Grid, EdgeList };

enum class ProcedureKind { Oracle, Lis, Bh, AdaptiveP, LocalFdr };
const char* to_string(ProcedureKind p);

enum class GeneticModel { Additive, Dominant, Recessive };
enum class GeneticStat { TwoProportionZ, Catt };

/// Asymptotic individual tests: z statistics from a two-proportion test
/// on Bernoulli attributes instead of exact Gaussian draws. The effect
/// size is chosen so the limiting alternative mean of z equals `mu`.
struct AsymptoticBlock {
  std::size_t n = 50;   // total samples; half positive, half negative
  double base = 0.5;    // heads probability for non-relevant attributes
  double mu = 2.0;      // limiting mean of z under the alternative
};

/// Synthetic linkage-disequilibrium scenario: SNPs in blocks with
/// geometrically decaying within-block r2, case/control genotypes under
/// a relative-risk disease model, per-SNP trend or z statistics, and the
/// dependence graph built by the max-r2 rule.
struct GeneticBlock {
  std::size_t causal = 10;
  double t = 0.25;  // r2 threshold defining the associated (non-null) set
  GeneticModel model = GeneticModel::Additive;
  double rr = 1.3;  // homozygous relative risk
  std::size_t cases = 250;
  std::size_t controls = 250;
  double prevalence = 0.05;
  double block_mean = 8.0;  // mean LD block size
  double rho_min = 0.5;     // adjacent-locus haplotype correlation range
  double rho_max = 0.98;
  double maf_min = 0.1;
  double maf_max = 0.5;
  /// Log-scale noise on the within-block r2 decay, mimicking the
  /// irregularity of real LD (also lets the max-r2 graph form cycles).
  double r2_jitter = 0.3;
  GeneticStat stat = GeneticStat::TwoProportionZ;
  R2Thresholds thresholds;
};

struct Scenario {
  StructureKind kind = StructureKind::Chain;
  std::size_t m = 500;
  std::size_t height = 8;
  std::size_t rows = 30;
  std::size_t cols = 30;
  std::string edge_path;

  double phi_center = 0.8;  // matrix-scale coupling
  double phi_delta = 0.0;   // width of the uniform band around the center
  double mu_center = 2.0;
  double mu_delta = 0.0;
  double sigma1 = 1.0;
  double bias = 0.0;

  double alpha = 0.10;
  std::size_t replications = 100;
  std::vector<ProcedureKind> procedures = {
      ProcedureKind::Oracle, ProcedureKind::Lis, ProcedureKind::Bh,
      ProcedureKind::AdaptiveP, ProcedureKind::LocalFdr};
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0 = hardware concurrency

  std::size_t prior_sweeps = 1000;  // ground-truth sampling on cyclic graphs
  std::size_t prior_burn_in = 500;
  McmcConfig mcmc;  // loopy-graph inference (oracle and E-step)
  PcdConfig pcd;
  std::size_t em_max_iters = 50;
  double em_tolerance = 1e-3;
  std::size_t em_window = 5;

  std::optional<AsymptoticBlock> asymptotic;
  std::optional<GeneticBlock> genetic;
};

/// Throws config_error when fields are inconsistent.
void validate(const Scenario& sc);

struct ProcedureOutput {
  ProcedureKind proc{};
  Decision decision;
  CountsTable counts;
  std::vector<double> scores;  // ranking scores, smaller = more significant
};

struct ReplicationResult {
  std::vector<ProcedureOutput> procedures;
  LatentState truth;
  bool failed = false;
  std::string error;
};

/// One replication: draw ground truth and statistics, run every requested
/// procedure, classify against the truth. Learning errors mark the
/// replication failed instead of propagating.
ReplicationResult run_replication(const Scenario& sc, std::uint64_t rep_seed);

struct ProcedureMetrics {
  ProcedureKind proc{};
  double fdr = 0.0, fnr = 0.0, atp = 0.0, tp = 0.0;
  double fdr_se = 0.0, fnr_se = 0.0, atp_se = 0.0;
};

struct MetricsReport {
  std::vector<ProcedureMetrics> procedures;
  std::size_t replications = 0;  // successful
  std::size_t failed = 0;
  double alpha = 0.0;
};

/// FDR = mean(N10 / max(R,1)), FNR = mean(N01 / max(S,1)), ATP = mean(N11)
/// over successful replications; standard errors over replications.
MetricsReport metrics_from_runs(const std::vector<ReplicationResult>& runs,
                                double alpha);

struct ScenarioRun {
  MetricsReport report;
  std::vector<ReplicationResult> replications;
};

/// Run all replications (concurrently when allowed; per-replication seeds
/// derive from (scenario seed, index), so results do not depend on the
/// thread count) and aggregate. Throws when every replication failed.
ScenarioRun run_scenario_full(const Scenario& sc);
MetricsReport run_scenario(const Scenario& sc);

struct GeneticData {
  Graph graph;
  LatentState truth;  // associated mask per SNP
  std::vector<GenotypeCounts> tables;
  StatVector stats;
};

/// Synthesize one genetic replication: LD layout (fixed per scenario
/// seed), causal SNP choice, retrospective case/control genotypes,
/// per-SNP statistics and the max-r2 dependence graph.
GeneticData genetic_scenario_data(const Scenario& sc, std::uint64_t rep_seed);

struct CurvePoints {
  std::vector<std::pair<double, double>> roc;  // (fpr, tpr)
  std::vector<std::pair<double, double>> pr;   // (recall, precision)
  bool pr_defined = true;
};

/// Threshold sweeps per replication (smaller score ranks first),
/// vertically averaged on fixed fpr / recall grids.
CurvePoints roc_pr_points(const std::vector<std::vector<double>>& score_runs,
                          const std::vector<LatentState>& truths);

}  // namespace mrftest

#endif  // MRFTEST_SIMULATION_HPP
