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
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "mrftest/errors.hpp"
#include "mrftest/io.hpp"
#include "mrftest/rng.hpp"
#include "mrftest/version.hpp"

namespace fs = std::filesystem;
using namespace mrftest;

namespace {

struct CommonArgs {
  std::string out_dir;
  std::uint64_t seed = 1;
};

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory '" + dir + "'");
}

// Load an edge-list file plus statistics and assemble the working graph.
// The statistics file fixes m; every edge endpoint must stay below it.
struct LoadedInputs {
  Graph graph;
  StatsFile stats;
};

LoadedInputs load_inputs(const std::string& edges_path,
                         const std::string& stats_path) {
  LoadedInputs in;
  in.stats = read_stats_file(stats_path);
  const std::size_t m = in.stats.x.size();
  const auto records = read_edge_list(edges_path);
  for (const auto& r : records)
    if (r.i >= m || r.j >= m)
      throw config_error("edge (" + std::to_string(r.i) + "," +
                         std::to_string(r.j) +
                         ") references a node without a statistic (m=" +
                         std::to_string(m) + ")");
  in.graph = graph_from_edge_records(records, m);
  return in;
}

Marginals infer_by_shape(const Graph& g, const ModelParams& params,
                         const StatVector& x, std::uint64_t seed) {
  if (g.is_acyclic()) return bp_marginals(g, params, x);
  McmcConfig cfg;
  cfg.seed = hash64(seed, "gibbs");
  return gibbs_marginals(g, params, x, cfg);
}

// Couplings for classes present in the graph must exist; fill Default
// with 0 only if the file omitted it entirely and no edges need it.
void check_params_cover(const ModelParams& params, const Graph& g) {
  for (const EdgeClass c : g.classes_present())
    if (params.phi.find(c) == params.phi.end())
      throw config_error(std::string("params file lacks a coupling for edge class '") +
                         to_string(c) + "' present in the graph");
}

int cmd_simulate(const std::string& scenario_path, const CommonArgs& args,
                 std::optional<std::uint64_t> seed_flag,
                 std::optional<std::size_t> threads_flag, bool svg) {
  Scenario sc = read_scenario_file(scenario_path);
  if (seed_flag) sc.seed = *seed_flag;
  if (threads_flag) sc.threads = *threads_flag;

  const std::string resolved = scenario_to_text(sc);
  const std::uint64_t config_hash = fnv1a64(resolved);
  const std::string header = file_header("simulate", sc.seed, config_hash);

  const ScenarioRun run = run_scenario_full(sc);

  ensure_out_dir(args.out_dir);
  const fs::path out(args.out_dir);

  std::ostringstream manifest;
  manifest << header << resolved;
  manifest << "# replications.ok = " << run.report.replications << '\n';
  manifest << "# replications.failed = " << run.report.failed << '\n';
  for (const auto& rep : run.replications)
    if (rep.failed) manifest << "# failure: " << rep.error << '\n';
  write_text_file((out / "manifest.txt").string(), manifest.str());

  write_metrics_csv((out / "metrics.csv").string(), run.report, header);

  // per-replication score dumps feed the report subcommand
  ensure_out_dir((out / "scores").string());
  for (std::size_t r = 0; r < run.replications.size(); ++r) {
    const auto& rep = run.replications[r];
    if (rep.failed) continue;
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    for (const auto& p : rep.procedures)
      cols.push_back({to_string(p.proc), p.scores});
    char name[32];
    std::snprintf(name, sizeof(name), "rep_%05zu.tsv", r);
    write_scores_tsv((out / "scores" / name).string(), rep.truth, cols, header);
  }

  // vertically averaged curves per procedure
  NamedCurves curves;
  for (std::size_t pi = 0; pi < sc.procedures.size(); ++pi) {
    std::vector<std::vector<double>> score_runs;
    std::vector<LatentState> truths;
    for (const auto& rep : run.replications) {
      if (rep.failed) continue;
      score_runs.push_back(rep.procedures[pi].scores);
      truths.push_back(rep.truth);
    }
    curves.push_back(
        {to_string(sc.procedures[pi]), roc_pr_points(score_runs, truths)});
  }
  write_curves_csv((out / "curves.csv").string(), curves, header);
  if (svg) {
    write_svg_curves((out / "curves_roc.svg").string(), "ROC (vertical average)",
                     "false positive rate", "true positive rate", curves,
                     false);
    write_svg_curves((out / "curves_pr.svg").string(), "PR (vertical average)",
                     "recall", "precision", curves, true);
  }

  std::cout << "simulate: " << run.report.replications << " replications";
  if (run.report.failed) std::cout << " (" << run.report.failed << " failed)";
  std::cout << ", metrics in " << (out / "metrics.csv").string() << '\n';
  return 0;
}

int cmd_learn(const std::string& edges_path, const std::string& stats_path,
              const CommonArgs& args) {
  LoadedInputs in = load_inputs(edges_path, stats_path);

  EmConfig cfg;
  cfg.seed = args.seed;
  // r2-classed graphs come from correlation metadata where alternatives
  // are sparse; learn the bias there, keep it frozen for plain graphs
  const auto classes = in.graph.classes_present();
  cfg.learn_bias =
      !classes.empty() &&
      !(classes.size() == 1 && classes.front() == EdgeClass::Default);
  cfg.e_step.seed = hash64(args.seed, "estep");

  const EmResult result = em_fit(in.graph, in.stats.x, cfg);

  std::ostringstream cfgtext;
  cfgtext << "edges=" << edges_path << "\nstats=" << stats_path
          << "\nseed=" << args.seed << '\n';
  const std::string header =
      file_header("learn", args.seed, fnv1a64(cfgtext.str()));

  ensure_out_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_params_file((out / "params.txt").string(), result.params, header);

  std::ostringstream trace;
  trace << header;
  trace << "# e_step=" << (result.used_bp ? "bp" : "gibbs") << '\n';
  trace << "iteration";
  for (const EdgeClass c : classes) trace << ",phi." << to_string(c);
  trace << ",bias,mu1,sigma1,max_change\n";
  for (const auto& row : result.trace) {
    trace << row.iter;
    for (const EdgeClass c : classes)
      trace << ',' << format_double(row.phi.at(c));
    trace << ',' << format_double(row.bias) << ','
          << format_double(row.psi.mu1) << ',' << format_double(row.psi.sigma1)
          << ',' << format_double(row.max_change) << '\n';
  }
  write_text_file((out / "em_trace.csv").string(), trace.str());

  std::cout << "learn: " << (result.converged ? "converged" : "stopped")
            << " after " << result.iterations << " iterations ("
            << (result.used_bp ? "bp" : "gibbs") << " e-step), params in "
            << (out / "params.txt").string() << '\n';
  return 0;
}

int cmd_score(const std::string& edges_path, const std::string& stats_path,
              const std::string& params_path, const CommonArgs& args) {
  LoadedInputs in = load_inputs(edges_path, stats_path);
  const ModelParams params = read_params_file(params_path);
  check_params_cover(params, in.graph);

  const Marginals marg = infer_by_shape(in.graph, params, in.stats.x, args.seed);

  std::ostringstream cfgtext;
  cfgtext << "edges=" << edges_path << "\nstats=" << stats_path
          << "\nparams=" << params_path << "\nseed=" << args.seed << '\n';
  const std::string header =
      file_header("score", args.seed, fnv1a64(cfgtext.str()));

  ensure_out_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_lis_file((out / "lis.tsv").string(), marg.lis, header);
  std::cout << "score: wrote " << marg.lis.size() << " LIS values to "
            << (out / "lis.tsv").string() << '\n';
  return 0;
}

int cmd_decide(const std::string& edges_path, const std::string& stats_path,
               const std::string& params_path, double alpha,
               const CommonArgs& args) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw config_error("decide: alpha must lie in [0,1]");
  LoadedInputs in = load_inputs(edges_path, stats_path);
  const ModelParams params = read_params_file(params_path);
  check_params_cover(params, in.graph);

  const Marginals marg = infer_by_shape(in.graph, params, in.stats.x, args.seed);
  const Decision decision = lis_stepup(marg.lis, alpha);

  std::ostringstream cfgtext;
  cfgtext << "edges=" << edges_path << "\nstats=" << stats_path
          << "\nparams=" << params_path << "\nalpha=" << format_double(alpha)
          << "\nseed=" << args.seed << '\n';
  std::string header = file_header("decide", args.seed, fnv1a64(cfgtext.str()));
  std::ostringstream summary;
  summary << "k=" << decision.k << " alpha=" << format_double(alpha)
          << " procedure=lis-stepup m=" << marg.lis.size();
  header += "# " + summary.str() + "\n";

  ensure_out_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_decision_file((out / "decision.tsv").string(), marg.lis, decision,
                      header);
  std::cout << summary.str() << '\n';
  return 0;
}

int cmd_report(const std::string& run_dir, const CommonArgs& args, bool svg) {
  const fs::path scores_dir = fs::path(run_dir) / "scores";
  if (!fs::is_directory(scores_dir))
    throw io_error("report: '" + scores_dir.string() + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(scores_dir))
    if (entry.path().extension() == ".tsv") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw io_error("report: no score files in " + scores_dir.string());

  std::vector<std::string> proc_names;
  std::vector<std::vector<std::vector<double>>> score_runs;  // proc -> rep
  std::vector<LatentState> truths;
  for (const auto& f : files) {
    const ScoresTsv rep = read_scores_tsv(f);
    if (proc_names.empty()) {
      for (const auto& [name, v] : rep.scores) proc_names.push_back(name);
      score_runs.resize(proc_names.size());
    }
    if (rep.scores.size() != proc_names.size())
      throw io_error("report: inconsistent procedure columns in " + f);
    truths.push_back(rep.truth);
    for (std::size_t k = 0; k < rep.scores.size(); ++k)
      score_runs[k].push_back(rep.scores[k].second);
  }

  std::ostringstream cfgtext;
  cfgtext << "run=" << run_dir << '\n';
  const std::string header =
      file_header("report", args.seed, fnv1a64(cfgtext.str()));

  NamedCurves curves;
  for (std::size_t k = 0; k < proc_names.size(); ++k)
    curves.push_back({proc_names[k], roc_pr_points(score_runs[k], truths)});

  ensure_out_dir(args.out_dir);
  const fs::path out(args.out_dir);
  write_curves_csv((out / "curves.csv").string(), curves, header);
  if (svg) {
    write_svg_curves((out / "curves_roc.svg").string(), "ROC (vertical average)",
                     "false positive rate", "true positive rate", curves, false);
    write_svg_curves((out / "curves_pr.svg").string(), "PR (vertical average)",
                     "recall", "precision", curves, true);
  }
  std::cout << "report: curves from " << truths.size() << " replications in "
            << (out / "curves.csv").string() << '\n';
  return 0;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const divergence_error& e) {
    std::cerr << "mrftest: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const degenerate_posterior_error& e) {
    std::cerr << "mrftest: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const error& e) {
    std::cerr << "mrftest: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mrftest: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependence-aware multiple testing with MRF-coupled mixtures"};
  app.set_version_flag("--version", std::string("mrftest ") + kVersion);
  app.require_subcommand(1);

  std::string scenario_path, edges_path, stats_path, params_path, run_dir;
  CommonArgs args;
  double alpha = 0.1;
  bool svg = false;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::size_t> threads_flag;
  std::uint64_t seed_value = 1;
  std::size_t threads_value = 0;

  auto* simulate = app.add_subcommand("simulate", "Run a simulation scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", args.out_dir, "Output directory")->required();
  simulate->add_option("--seed", seed_value, "Override the scenario seed");
  simulate->add_option("--threads", threads_value, "Worker thread cap");
  simulate->add_flag("--svg", svg, "Also write SVG curve plots");

  auto* learn = app.add_subcommand("learn", "Fit parameters by EM from files");
  learn->add_option("--edges", edges_path, "Edge-list file")
      ->required()
      ->check(CLI::ExistingFile);
  learn->add_option("--stats", stats_path, "Statistics file")
      ->required()
      ->check(CLI::ExistingFile);
  learn->add_option("--out", args.out_dir, "Output directory")->required();
  learn->add_option("--seed", args.seed, "Random seed");

  auto* score = app.add_subcommand("score", "Emit LIS values only");
  score->add_option("--edges", edges_path, "Edge-list file")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--stats", stats_path, "Statistics file")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--params", params_path, "Parameters file")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--out", args.out_dir, "Output directory")->required();
  score->add_option("--seed", args.seed, "Random seed");

  auto* decide = app.add_subcommand("decide", "Score and apply the step-up rule");
  decide->add_option("--edges", edges_path, "Edge-list file")
      ->required()
      ->check(CLI::ExistingFile);
  decide->add_option("--stats", stats_path, "Statistics file")
      ->required()
      ->check(CLI::ExistingFile);
  decide->add_option("--params", params_path, "Parameters file")
      ->required()
      ->check(CLI::ExistingFile);
  decide->add_option("--alpha", alpha, "Nominal FDR level")->required();
  decide->add_option("--out", args.out_dir, "Output directory")->required();
  decide->add_option("--seed", args.seed, "Random seed");

  auto* report = app.add_subcommand("report", "Curves from stored replications");
  report->add_option("--run", run_dir, "simulate output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  report->add_option("--out", args.out_dir, "Output directory")->required();
  report->add_flag("--svg", svg, "Also write SVG curve plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (simulate->count("--seed")) seed_flag = seed_value;
  if (simulate->count("--threads")) threads_flag = threads_value;

  if (simulate->parsed())
    return guarded([&] {
      return cmd_simulate(scenario_path, args, seed_flag, threads_flag, svg);
    });
  if (learn->parsed())
    return guarded([&] { return cmd_learn(edges_path, stats_path, args); });
  if (score->parsed())
    return guarded(
        [&] { return cmd_score(edges_path, stats_path, params_path, args); });
  if (decide->parsed())
    return guarded([&] {
      return cmd_decide(edges_path, stats_path, params_path, alpha, args);
    });
  if (report->parsed())
    return guarded([&] { return cmd_report(run_dir, args, svg); });
  return 2;
}
