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
#ifndef MRFTEST_IO_HPP
#define MRFTEST_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrftest/graph.hpp"
#include "mrftest/learning.hpp"
#include "mrftest/model.hpp"
#include "mrftest/procedures.hpp"
#include "mrftest/simulation.hpp"

namespace mrftest {

/// Shortest-form decimal that still round-trips; used by every writer so
/// identical runs produce identical bytes.
std::string format_double(double v);

/// Comment header every output file starts with:
/// "# mrftest <version> subcommand=<s> seed=<n> config=<hex hash>"
std::string file_header(const std::string& subcommand, std::uint64_t seed,
                        std::uint64_t config_hash);

std::uint64_t fnv1a64(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Edge-list file: tab-separated `i<TAB>j[<TAB>r2]` lines, 0-based ids,
/// `#` comments and an optional non-numeric header line are skipped.
/// Missing r2 is recorded as -1 (class Default downstream).
std::vector<R2Record> read_edge_list(const std::string& path);
void write_edge_list(const std::string& path,
                     const std::vector<R2Record>& records,
                     const std::string& header);

/// Statistics file: `id<TAB>x[<TAB>truth]`, 0-based ids; every id in
/// 0..m-1 must appear exactly once.
struct StatsFile {
  StatVector x;
  std::optional<LatentState> truth;
};
StatsFile read_stats_file(const std::string& path);
void write_stats_file(const std::string& path, const StatVector& x,
                      const LatentState* truth, const std::string& header);

/// Learned parameters as `key = value` lines: phi.high, phi.medium,
/// phi.low, phi.default (present classes only), bias, mu1, sigma1.
ModelParams read_params_file(const std::string& path);
void write_params_file(const std::string& path, const ModelParams& params,
                       const std::string& header);

/// Scenario files: line-oriented `key = value` with dotted keys.
Scenario parse_scenario_text(const std::string& text);
Scenario read_scenario_file(const std::string& path);
/// Fully resolved key = value dump; parse(scenario_to_text(sc)) == sc.
std::string scenario_to_text(const Scenario& sc);

void write_metrics_csv(const std::string& path, const MetricsReport& report,
                       const std::string& header);

using NamedCurves = std::vector<std::pair<std::string, CurvePoints>>;
void write_curves_csv(const std::string& path, const NamedCurves& curves,
                      const std::string& header);

/// Decision output: `id<TAB>score<TAB>rank<TAB>rejected` (rank 1-based in
/// ascending score order, ties by id).
void write_decision_file(const std::string& path,
                         const std::vector<double>& scores, const Decision& d,
                         const std::string& header);

void write_lis_file(const std::string& path, const LisVector& lis,
                    const std::string& header);

/// Per-replication score dump consumed by the report subcommand:
/// columns id, truth, then one score column per procedure.
void write_scores_tsv(const std::string& path, const LatentState& truth,
                      const std::vector<std::pair<std::string,
                                                  std::vector<double>>>& scores,
                      const std::string& header);
struct ScoresTsv {
  LatentState truth;
  std::vector<std::pair<std::string, std::vector<double>>> scores;
};
ScoresTsv read_scores_tsv(const std::string& path);

/// Minimal SVG line plot (one polyline per named curve).
void write_svg_curves(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const NamedCurves& curves, bool use_pr);

}  // namespace mrftest

#endif  // MRFTEST_IO_HPP
