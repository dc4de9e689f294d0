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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mrftest/errors.hpp"
#include "mrftest/io.hpp"

using namespace mrftest;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mrftest_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("edge list round trip with comments and header") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("edges.tsv"));
    out << "# comment line\n";
    out << "i\tj\tr2\n";          // header line
    out << "0\t1\t0.9\n";
    out << "\n";
    out << "2\t1\n";              // no r2 column
  }
  const auto records = read_edge_list(tmp.file("edges.tsv"));
  REQUIRE(records.size() == 2);
  CHECK(records[0].i == 0);
  CHECK(records[0].r2 == doctest::Approx(0.9));
  CHECK(records[1].r2 == -1.0);

  write_edge_list(tmp.file("copy.tsv"), records, "# hdr\n");
  const auto again = read_edge_list(tmp.file("copy.tsv"));
  REQUIRE(again.size() == 2);
  CHECK(again[1].i == 2);
  CHECK(again[1].j == 1);

  CHECK_THROWS_AS(read_edge_list(tmp.file("missing.tsv")), io_error);
}

TEST_CASE("statistics files") {
  TempDir tmp;
  SUBCASE("plain round trip") {
    const StatVector x{0.5, -1.25, 3.0};
    write_stats_file(tmp.file("stats.tsv"), x, nullptr, "# s\n");
    const StatsFile f = read_stats_file(tmp.file("stats.tsv"));
    CHECK(f.x == x);
    CHECK_FALSE(f.truth.has_value());
  }
  SUBCASE("with truth column") {
    const StatVector x{0.5, 2.5};
    const LatentState truth{0, 1};
    write_stats_file(tmp.file("stats.tsv"), x, &truth, "# s\n");
    const StatsFile f = read_stats_file(tmp.file("stats.tsv"));
    REQUIRE(f.truth.has_value());
    CHECK(*f.truth == truth);
  }
  SUBCASE("ids out of order are accepted, gaps are not") {
    {
      std::ofstream out(tmp.file("ok.tsv"));
      out << "1\t2.0\n0\t1.0\n";
    }
    CHECK(read_stats_file(tmp.file("ok.tsv")).x == StatVector{1.0, 2.0});
    {
      std::ofstream out(tmp.file("gap.tsv"));
      out << "0\t1.0\n2\t2.0\n";
    }
    CHECK_THROWS_AS(read_stats_file(tmp.file("gap.tsv")), io_error);
    {
      std::ofstream out(tmp.file("dup.tsv"));
      out << "0\t1.0\n0\t2.0\n";
    }
    CHECK_THROWS_AS(read_stats_file(tmp.file("dup.tsv")), io_error);
    {
      std::ofstream out(tmp.file("empty.tsv"));
      out << "# nothing\n";
    }
    CHECK_THROWS_AS(read_stats_file(tmp.file("empty.tsv")), io_error);
  }
}

TEST_CASE("parameter files") {
  TempDir tmp;
  ModelParams p;
  p.phi[EdgeClass::High] = 1.25;
  p.phi[EdgeClass::Low] = -0.5;
  p.bias = -2.0;
  p.psi = {1.75, 0.9};
  write_params_file(tmp.file("params.txt"), p, "# header\n");
  const ModelParams q = read_params_file(tmp.file("params.txt"));
  CHECK(q.phi.at(EdgeClass::High) == 1.25);
  CHECK(q.phi.at(EdgeClass::Low) == -0.5);
  CHECK(q.phi.count(EdgeClass::Medium) == 0);
  CHECK(q.bias == -2.0);
  CHECK(q.psi.mu1 == 1.75);
  CHECK(q.psi.sigma1 == 0.9);

  {
    std::ofstream out(tmp.file("bad.txt"));
    out << "phi.purple = 1\n";
  }
  CHECK_THROWS_AS(read_params_file(tmp.file("bad.txt")), config_error);
}

TEST_CASE("scenario text round trip") {
  Scenario sc;
  sc.kind = StructureKind::Grid;
  sc.rows = 12;
  sc.cols = 9;
  sc.phi_center = 0.7;
  sc.mu_delta = 1.5;
  sc.replications = 4;
  sc.procedures = {ProcedureKind::Lis, ProcedureKind::Bh};
  sc.genetic = GeneticBlock{};
  sc.genetic->stat = GeneticStat::Catt;
  const std::string text = scenario_to_text(sc);
  const Scenario back = parse_scenario_text(text);
  CHECK(scenario_to_text(back) == text);

  CHECK_THROWS_AS(parse_scenario_text("nonsense.key = 3\n"), config_error);
  CHECK_THROWS_AS(parse_scenario_text("alpha 0.1\n"), config_error);
  CHECK_THROWS_AS(parse_scenario_text("alpha = banana\n"), config_error);
}

TEST_CASE("decision file layout") {
  TempDir tmp;
  const std::vector<double> scores{0.5, 0.1, 0.9};
  Decision d;
  d.rejected = {0, 1, 0};
  d.k = 1;
  write_decision_file(tmp.file("decision.tsv"), scores, d, "# h\n");
  std::ifstream in(tmp.file("decision.tsv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "# h");
  std::getline(in, line);
  CHECK(line == "0\t0.5\t2\t0");
  std::getline(in, line);
  CHECK(line == "1\t0.1\t1\t1");
  std::getline(in, line);
  CHECK(line == "2\t0.9\t3\t0");
}

TEST_CASE("scores tsv round trip") {
  TempDir tmp;
  const LatentState truth{1, 0, 1};
  const std::vector<std::pair<std::string, std::vector<double>>> cols{
      {"lis", {0.1, 0.9, 0.2}}, {"bh", {0.01, 0.6, 0.05}}};
  write_scores_tsv(tmp.file("rep.tsv"), truth, cols, "# h\n");
  const ScoresTsv back = read_scores_tsv(tmp.file("rep.tsv"));
  CHECK(back.truth == truth);
  REQUIRE(back.scores.size() == 2);
  CHECK(back.scores[0].first == "lis");
  CHECK(back.scores[1].second == cols[1].second);
}

TEST_CASE("format_double round trips") {
  for (const double v : {0.1, 1.0 / 3.0, 123456.789, 1e-17, -0.0, 2.5}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("file headers carry tool, seed and config hash") {
  const std::string h = file_header("simulate", 42, 0xabcdef);
  CHECK(h.find("# mrftest") == 0);
  CHECK(h.find("subcommand=simulate") != std::string::npos);
  CHECK(h.find("seed=42") != std::string::npos);
  CHECK(h.find("config=abcdef") != std::string::npos);
}
