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
#include <sstream>

#include "mrftest/errors.hpp"
#include "mrftest/io.hpp"

namespace mrftest {

namespace {

std::size_t to_size(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size() || v < 0) throw config_error("");
    return static_cast<std::size_t>(v);
  } catch (...) {
    throw config_error("scenario: '" + key + "' expects a nonnegative integer, got '" +
                       value + "'");
  }
}

double to_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw config_error("");
    return v;
  } catch (...) {
    throw config_error("scenario: '" + key + "' expects a number, got '" +
                       value + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw config_error("");
    return v;
  } catch (...) {
    throw config_error("scenario: '" + key + "' expects an unsigned integer, got '" +
                       value + "'");
  }
}

std::vector<ProcedureKind> parse_procedures(const std::string& value) {
  std::vector<ProcedureKind> out;
  std::istringstream is(value);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    item = item.substr(a, b - a + 1);
    if (item == "or") out.push_back(ProcedureKind::Oracle);
    else if (item == "lis") out.push_back(ProcedureKind::Lis);
    else if (item == "bh") out.push_back(ProcedureKind::Bh);
    else if (item == "ap") out.push_back(ProcedureKind::AdaptiveP);
    else if (item == "lfdr") out.push_back(ProcedureKind::LocalFdr);
    else throw config_error("scenario: unknown procedure '" + item + "'");
  }
  if (out.empty()) throw config_error("scenario: empty procedure list");
  return out;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto genetic = [&]() -> GeneticBlock& {
    if (!sc.genetic) sc.genetic = GeneticBlock{};
    return *sc.genetic;
  };
  auto asymptotic = [&]() -> AsymptoticBlock& {
    if (!sc.asymptotic) sc.asymptotic = AsymptoticBlock{};
    return *sc.asymptotic;
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("scenario line " + std::to_string(lineno) +
                         ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("scenario line " + std::to_string(lineno) +
                         ": empty key or value");

    if (key == "structure.kind") {
      if (value == "chain") sc.kind = StructureKind::Chain;
      else if (value == "tree") sc.kind = StructureKind::Tree;
      else if (value == "grid") sc.kind = StructureKind::Grid;
      else if (value == "edgelist") sc.kind = StructureKind::EdgeList;
      else throw config_error("scenario: unknown structure.kind '" + value + "'");
    } else if (key == "structure.m") sc.m = to_size(key, value);
    else if (key == "structure.height") sc.height = to_size(key, value);
    else if (key == "structure.rows") sc.rows = to_size(key, value);
    else if (key == "structure.cols") sc.cols = to_size(key, value);
    else if (key == "structure.path") sc.edge_path = value;
    else if (key == "phi.center") sc.phi_center = to_real(key, value);
    else if (key == "phi.delta") sc.phi_delta = to_real(key, value);
    else if (key == "mu.center") sc.mu_center = to_real(key, value);
    else if (key == "mu.delta") sc.mu_delta = to_real(key, value);
    else if (key == "sigma1") sc.sigma1 = to_real(key, value);
    else if (key == "bias") sc.bias = to_real(key, value);
    else if (key == "alpha") sc.alpha = to_real(key, value);
    else if (key == "replications") sc.replications = to_size(key, value);
    else if (key == "procedures") sc.procedures = parse_procedures(value);
    else if (key == "seed") sc.seed = to_u64(key, value);
    else if (key == "threads") sc.threads = to_size(key, value);
    else if (key == "prior.sweeps") sc.prior_sweeps = to_size(key, value);
    else if (key == "prior.burnin") sc.prior_burn_in = to_size(key, value);
    else if (key == "mcmc.sweeps") sc.mcmc.sweeps = to_size(key, value);
    else if (key == "mcmc.burnin") sc.mcmc.burn_in = to_size(key, value);
    else if (key == "pcd.particles") sc.pcd.particles = to_size(key, value);
    else if (key == "pcd.inner_steps") sc.pcd.inner_steps = to_size(key, value);
    else if (key == "pcd.rate") sc.pcd.initial_rate = to_real(key, value);
    else if (key == "pcd.decay") sc.pcd.decay = to_real(key, value);
    else if (key == "pcd.max_updates") sc.pcd.max_updates = to_size(key, value);
    else if (key == "pcd.min_updates") sc.pcd.min_updates = to_size(key, value);
    else if (key == "pcd.tolerance") sc.pcd.tolerance = to_real(key, value);
    else if (key == "em.max_iters") sc.em_max_iters = to_size(key, value);
    else if (key == "em.tolerance") sc.em_tolerance = to_real(key, value);
    else if (key == "em.window") sc.em_window = to_size(key, value);
    else if (key == "asymptotic.n") asymptotic().n = to_size(key, value);
    else if (key == "asymptotic.base") asymptotic().base = to_real(key, value);
    else if (key == "asymptotic.mu") asymptotic().mu = to_real(key, value);
    else if (key == "genetic.causal") genetic().causal = to_size(key, value);
    else if (key == "genetic.t") genetic().t = to_real(key, value);
    else if (key == "genetic.model") {
      if (value == "additive") genetic().model = GeneticModel::Additive;
      else if (value == "dominant") genetic().model = GeneticModel::Dominant;
      else if (value == "recessive") genetic().model = GeneticModel::Recessive;
      else throw config_error("scenario: unknown genetic.model '" + value + "'");
    } else if (key == "genetic.rr") genetic().rr = to_real(key, value);
    else if (key == "genetic.cases") genetic().cases = to_size(key, value);
    else if (key == "genetic.controls") genetic().controls = to_size(key, value);
    else if (key == "genetic.prevalence") genetic().prevalence = to_real(key, value);
    else if (key == "genetic.block_mean") genetic().block_mean = to_real(key, value);
    else if (key == "genetic.rho_min") genetic().rho_min = to_real(key, value);
    else if (key == "genetic.rho_max") genetic().rho_max = to_real(key, value);
    else if (key == "genetic.maf_min") genetic().maf_min = to_real(key, value);
    else if (key == "genetic.maf_max") genetic().maf_max = to_real(key, value);
    else if (key == "genetic.stat") {
      if (value == "ztest") genetic().stat = GeneticStat::TwoProportionZ;
      else if (value == "catt") genetic().stat = GeneticStat::Catt;
      else throw config_error("scenario: unknown genetic.stat '" + value + "'");
    } else if (key == "genetic.t_low") genetic().thresholds.low = to_real(key, value);
    else if (key == "genetic.t_mid") genetic().thresholds.mid = to_real(key, value);
    else if (key == "genetic.t_high") genetic().thresholds.high = to_real(key, value);
    else throw config_error("scenario line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
  }
  validate(sc);
  return sc;
}

Scenario read_scenario_file(const std::string& path) {
  return parse_scenario_text(read_text_file(path));
}

std::string scenario_to_text(const Scenario& sc) {
  std::ostringstream os;
  const char* kind = "chain";
  if (sc.kind == StructureKind::Tree) kind = "tree";
  else if (sc.kind == StructureKind::Grid) kind = "grid";
  else if (sc.kind == StructureKind::EdgeList) kind = "edgelist";
  os << "structure.kind = " << kind << '\n';
  os << "structure.m = " << sc.m << '\n';
  os << "structure.height = " << sc.height << '\n';
  os << "structure.rows = " << sc.rows << '\n';
  os << "structure.cols = " << sc.cols << '\n';
  if (!sc.edge_path.empty()) os << "structure.path = " << sc.edge_path << '\n';
  os << "phi.center = " << format_double(sc.phi_center) << '\n';
  os << "phi.delta = " << format_double(sc.phi_delta) << '\n';
  os << "mu.center = " << format_double(sc.mu_center) << '\n';
  os << "mu.delta = " << format_double(sc.mu_delta) << '\n';
  os << "sigma1 = " << format_double(sc.sigma1) << '\n';
  os << "bias = " << format_double(sc.bias) << '\n';
  os << "alpha = " << format_double(sc.alpha) << '\n';
  os << "replications = " << sc.replications << '\n';
  os << "procedures = ";
  for (std::size_t i = 0; i < sc.procedures.size(); ++i)
    os << (i ? "," : "") << to_string(sc.procedures[i]);
  os << '\n';
  os << "seed = " << sc.seed << '\n';
  os << "threads = " << sc.threads << '\n';
  os << "prior.sweeps = " << sc.prior_sweeps << '\n';
  os << "prior.burnin = " << sc.prior_burn_in << '\n';
  os << "mcmc.sweeps = " << sc.mcmc.sweeps << '\n';
  os << "mcmc.burnin = " << sc.mcmc.burn_in << '\n';
  os << "pcd.particles = " << sc.pcd.particles << '\n';
  os << "pcd.inner_steps = " << sc.pcd.inner_steps << '\n';
  os << "pcd.rate = " << format_double(sc.pcd.initial_rate) << '\n';
  os << "pcd.decay = " << format_double(sc.pcd.decay) << '\n';
  os << "pcd.max_updates = " << sc.pcd.max_updates << '\n';
  os << "pcd.min_updates = " << sc.pcd.min_updates << '\n';
  os << "pcd.tolerance = " << format_double(sc.pcd.tolerance) << '\n';
  os << "em.max_iters = " << sc.em_max_iters << '\n';
  os << "em.tolerance = " << format_double(sc.em_tolerance) << '\n';
  os << "em.window = " << sc.em_window << '\n';
  if (sc.asymptotic) {
    os << "asymptotic.n = " << sc.asymptotic->n << '\n';
    os << "asymptotic.base = " << format_double(sc.asymptotic->base) << '\n';
    os << "asymptotic.mu = " << format_double(sc.asymptotic->mu) << '\n';
  }
  if (sc.genetic) {
    const auto& gb = *sc.genetic;
    os << "genetic.causal = " << gb.causal << '\n';
    os << "genetic.t = " << format_double(gb.t) << '\n';
    const char* model = gb.model == GeneticModel::Additive ? "additive"
                        : gb.model == GeneticModel::Dominant ? "dominant"
                                                             : "recessive";
    os << "genetic.model = " << model << '\n';
    os << "genetic.rr = " << format_double(gb.rr) << '\n';
    os << "genetic.cases = " << gb.cases << '\n';
    os << "genetic.controls = " << gb.controls << '\n';
    os << "genetic.prevalence = " << format_double(gb.prevalence) << '\n';
    os << "genetic.block_mean = " << format_double(gb.block_mean) << '\n';
    os << "genetic.rho_min = " << format_double(gb.rho_min) << '\n';
    os << "genetic.rho_max = " << format_double(gb.rho_max) << '\n';
    os << "genetic.maf_min = " << format_double(gb.maf_min) << '\n';
    os << "genetic.maf_max = " << format_double(gb.maf_max) << '\n';
    os << "genetic.stat = "
       << (gb.stat == GeneticStat::Catt ? "catt" : "ztest") << '\n';
    os << "genetic.t_low = " << format_double(gb.thresholds.low) << '\n';
    os << "genetic.t_mid = " << format_double(gb.thresholds.mid) << '\n';
    os << "genetic.t_high = " << format_double(gb.thresholds.high) << '\n';
  }
  return os.str();
}

}  // namespace mrftest
