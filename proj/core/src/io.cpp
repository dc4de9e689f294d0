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
#include "mrftest/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "mrftest/errors.hpp"
#include "mrftest/version.hpp"

namespace mrftest {

std::string format_double(double v) {
  char buf[64];
  // try ascending precision until the decimal round-trips
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

std::uint64_t fnv1a64(std::string_view text) { return detail::fnv1a64(text); }

std::string file_header(const std::string& subcommand, std::uint64_t seed,
                        std::uint64_t config_hash) {
  std::ostringstream os;
  os << "# mrftest " << kVersion << " subcommand=" << subcommand
     << " seed=" << seed << " config=" << std::hex << config_hash << "\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("write failed for '" + path + "'");
}

namespace {

// split a data line into whitespace/tab separated fields
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string f;
  while (is >> f) out.push_back(f);
  return out;
}

bool is_comment_or_blank(const std::string& line) {
  for (const char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool parse_size(const std::string& s, std::size_t& out) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 0) return false;
    out = static_cast<std::size_t>(v);
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_real(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

std::vector<R2Record> read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open edge list '" + path + "'");
  std::vector<R2Record> records;
  std::string line;
  std::size_t lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto fields = split_fields(line);
    R2Record rec;
    if (fields.size() < 2 || !parse_size(fields[0], rec.i) ||
        !parse_size(fields[1], rec.j)) {
      // tolerate one non-numeric header line before any data
      if (!saw_data) continue;
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": expected `i<TAB>j[<TAB>r2]`");
    }
    rec.r2 = -1.0;
    if (fields.size() >= 3 && !parse_real(fields[2], rec.r2))
      throw io_error(path + ":" + std::to_string(lineno) + ": bad r2 value");
    records.push_back(rec);
    saw_data = true;
  }
  return records;
}

void write_edge_list(const std::string& path,
                     const std::vector<R2Record>& records,
                     const std::string& header) {
  std::ostringstream os;
  os << header;
  for (const auto& r : records) {
    os << r.i << '\t' << r.j;
    if (r.r2 >= 0.0) os << '\t' << format_double(r.r2);
    os << '\n';
  }
  write_text_file(path, os.str());
}

StatsFile read_stats_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open statistics file '" + path + "'");
  std::map<std::size_t, std::pair<double, int>> rows;  // id -> (x, truth)
  bool any_truth = false;
  std::string line;
  std::size_t lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto fields = split_fields(line);
    std::size_t id = 0;
    double x = 0.0;
    if (fields.size() < 2 || !parse_size(fields[0], id) ||
        !parse_real(fields[1], x)) {
      if (!saw_data) continue;  // optional header line
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": expected `id<TAB>x[<TAB>truth]`");
    }
    if (!std::isfinite(x))
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": statistic is not finite");
    int truth = -1;
    if (fields.size() >= 3) {
      std::size_t t = 0;
      if (!parse_size(fields[2], t) || t > 1)
        throw io_error(path + ":" + std::to_string(lineno) +
                       ": truth column must be 0 or 1");
      truth = static_cast<int>(t);
      any_truth = true;
    }
    if (!rows.insert({id, {x, truth}}).second)
      throw io_error(path + ":" + std::to_string(lineno) + ": duplicate id " +
                     std::to_string(id));
    saw_data = true;
  }
  if (rows.empty()) throw io_error(path + ": no statistics found");
  const std::size_t m = rows.rbegin()->first + 1;
  if (rows.size() != m)
    throw io_error(path + ": ids must cover 0.." + std::to_string(m - 1) +
                   " exactly once");
  StatsFile out;
  out.x.resize(m);
  if (any_truth) out.truth = LatentState(m, 0);
  for (const auto& [id, row] : rows) {
    out.x[id] = row.first;
    if (any_truth) {
      if (row.second < 0)
        throw io_error(path + ": truth column present only for some rows");
      (*out.truth)[id] = static_cast<std::uint8_t>(row.second);
    }
  }
  return out;
}

void write_stats_file(const std::string& path, const StatVector& x,
                      const LatentState* truth, const std::string& header) {
  std::ostringstream os;
  os << header;
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << i << '\t' << format_double(x[i]);
    if (truth) os << '\t' << static_cast<int>((*truth)[i]);
    os << '\n';
  }
  write_text_file(path, os.str());
}

namespace {

const std::pair<const char*, EdgeClass> kClassKeys[] = {
    {"phi.high", EdgeClass::High},
    {"phi.medium", EdgeClass::Medium},
    {"phi.low", EdgeClass::Low},
    {"phi.default", EdgeClass::Default},
};

// parse `key = value` lines into an ordered map, rejecting junk
std::vector<std::pair<std::string, std::string>> parse_kv_lines(
    const std::string& text, const std::string& what) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(what + ":" + std::to_string(lineno) +
                         ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error(what + ":" + std::to_string(lineno) +
                         ": empty key or value");
    out.push_back({key, value});
  }
  return out;
}

}  // namespace

ModelParams read_params_file(const std::string& path) {
  const auto kv = parse_kv_lines(read_text_file(path), path);
  ModelParams p;
  for (const auto& [key, value] : kv) {
    double v = 0.0;
    if (!parse_real(value, v))
      throw config_error(path + ": value for '" + key + "' is not a number");
    bool matched = false;
    for (const auto& [name, cls] : kClassKeys)
      if (key == name) {
        p.phi[cls] = v;
        matched = true;
      }
    if (matched) continue;
    if (key == "bias") p.bias = v;
    else if (key == "mu1") p.psi.mu1 = v;
    else if (key == "sigma1") p.psi.sigma1 = v;
    else throw config_error(path + ": unknown parameter key '" + key + "'");
  }
  if (!(p.psi.sigma1 > 0.0))
    throw config_error(path + ": sigma1 must be positive");
  return p;
}

void write_params_file(const std::string& path, const ModelParams& params,
                       const std::string& header) {
  std::ostringstream os;
  os << header;
  for (const auto& [name, cls] : kClassKeys) {
    const auto it = params.phi.find(cls);
    if (it != params.phi.end())
      os << name << " = " << format_double(it->second) << '\n';
  }
  os << "bias = " << format_double(params.bias) << '\n';
  os << "mu1 = " << format_double(params.psi.mu1) << '\n';
  os << "sigma1 = " << format_double(params.psi.sigma1) << '\n';
  write_text_file(path, os.str());
}

void write_metrics_csv(const std::string& path, const MetricsReport& report,
                       const std::string& header) {
  std::ostringstream os;
  os << header;
  os << "procedure,alpha,fdr,fnr,atp,tp\n";
  for (const auto& p : report.procedures)
    os << to_string(p.proc) << ',' << format_double(report.alpha) << ','
       << format_double(p.fdr) << ',' << format_double(p.fnr) << ','
       << format_double(p.atp) << ',' << format_double(p.tp) << '\n';
  write_text_file(path, os.str());
}

void write_curves_csv(const std::string& path, const NamedCurves& curves,
                      const std::string& header) {
  std::ostringstream os;
  os << header;
  os << "procedure,curve,x,y\n";
  for (const auto& [name, c] : curves) {
    for (const auto& [x, y] : c.roc)
      os << name << ",roc," << format_double(x) << ',' << format_double(y)
         << '\n';
    if (c.pr_defined)
      for (const auto& [x, y] : c.pr)
        os << name << ",pr," << format_double(x) << ',' << format_double(y)
           << '\n';
  }
  write_text_file(path, os.str());
}

void write_decision_file(const std::string& path,
                         const std::vector<double>& scores, const Decision& d,
                         const std::string& header) {
  if (scores.size() != d.rejected.size())
    throw invalid_size_error("write_decision_file: length mismatch");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  std::vector<std::size_t> rank(scores.size());
  for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = r + 1;
  std::ostringstream os;
  os << header;
  for (std::size_t i = 0; i < scores.size(); ++i)
    os << i << '\t' << format_double(scores[i]) << '\t' << rank[i] << '\t'
       << static_cast<int>(d.rejected[i]) << '\n';
  write_text_file(path, os.str());
}

void write_lis_file(const std::string& path, const LisVector& lis,
                    const std::string& header) {
  std::ostringstream os;
  os << header;
  for (std::size_t i = 0; i < lis.size(); ++i)
    os << i << '\t' << format_double(lis[i]) << '\n';
  write_text_file(path, os.str());
}

void write_scores_tsv(
    const std::string& path, const LatentState& truth,
    const std::vector<std::pair<std::string, std::vector<double>>>& scores,
    const std::string& header) {
  std::ostringstream os;
  os << header;
  os << "id\ttruth";
  for (const auto& [name, v] : scores) os << '\t' << name;
  os << '\n';
  for (std::size_t i = 0; i < truth.size(); ++i) {
    os << i << '\t' << static_cast<int>(truth[i]);
    for (const auto& [name, v] : scores) os << '\t' << format_double(v[i]);
    os << '\n';
  }
  write_text_file(path, os.str());
}

ScoresTsv read_scores_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scores file '" + path + "'");
  ScoresTsv out;
  std::string line;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    if (is_comment_or_blank(line)) continue;
    const auto fields = split_fields(line);
    if (names.empty()) {
      if (fields.size() < 3 || fields[0] != "id" || fields[1] != "truth")
        throw io_error(path + ": malformed scores header");
      names.assign(fields.begin() + 2, fields.end());
      out.scores.resize(names.size());
      for (std::size_t k = 0; k < names.size(); ++k)
        out.scores[k].first = names[k];
      continue;
    }
    if (fields.size() != names.size() + 2)
      throw io_error(path + ": wrong column count");
    std::size_t id = 0, truth = 0;
    if (!parse_size(fields[0], id) || !parse_size(fields[1], truth) ||
        truth > 1 || id != out.truth.size())
      throw io_error(path + ": ids must be consecutive from 0");
    out.truth.push_back(static_cast<std::uint8_t>(truth));
    for (std::size_t k = 0; k < names.size(); ++k) {
      double v = 0.0;
      if (!parse_real(fields[k + 2], v))
        throw io_error(path + ": bad score value");
      out.scores[k].second.push_back(v);
    }
  }
  if (out.truth.empty()) throw io_error(path + ": no score rows");
  return out;
}

}  // namespace mrftest
