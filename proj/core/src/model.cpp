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
#include "mrftest/model.hpp"

#include <cmath>
#include <string>

#include "mrftest/errors.hpp"

namespace mrftest {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)
}

double matrix_to_coupling(double phi_matrix) {
  if (!(phi_matrix > 0.0 && phi_matrix < 1.0))
    throw domain_error("matrix_to_coupling: argument must lie in (0,1)");
  return std::log(phi_matrix / (1.0 - phi_matrix));
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double coupling_to_matrix(double coupling) { return logistic(coupling); }

double log_emission(double x, bool alt, const EmissionParams& psi) {
  if (alt) {
    const double z = (x - psi.mu1) / psi.sigma1;
    return -0.5 * kLog2Pi - std::log(psi.sigma1) - 0.5 * z * z;
  }
  return -0.5 * kLog2Pi - 0.5 * x * x;
}

double log_emission_at(const ModelParams& p, std::size_t node, double x,
                       bool alt) {
  if (alt && p.node_mu) {
    const double z = (x - (*p.node_mu)[node]) / p.psi.sigma1;
    return -0.5 * kLog2Pi - std::log(p.psi.sigma1) - 0.5 * z * z;
  }
  return log_emission(x, alt, p.psi);
}

double coupling_for_edge(const ModelParams& p, const Graph& g,
                         std::size_t edge_index) {
  if (p.edge_phi) return (*p.edge_phi)[edge_index];
  const EdgeClass cls = g.edges()[edge_index].cls;
  const auto it = p.phi.find(cls);
  if (it == p.phi.end())
    throw missing_parameter_error(std::string("no coupling for edge class '") +
                                  to_string(cls) + "'");
  return it->second;
}

std::vector<double> edge_couplings(const ModelParams& p, const Graph& g) {
  std::vector<double> out(g.edge_count());
  for (std::size_t e = 0; e < out.size(); ++e)
    out[e] = coupling_for_edge(p, g, e);
  return out;
}

double log_prior_unnormalized(const LatentState& theta, const ModelParams& p,
                              const Graph& g) {
  if (theta.size() != g.node_count())
    throw invalid_size_error("log_prior_unnormalized: state length mismatch");
  double value = 0.0;
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (theta[edges[e].i] == theta[edges[e].j])
      value += coupling_for_edge(p, g, e);
  if (p.bias != 0.0) {
    std::size_t alt = 0;
    for (auto b : theta) alt += b;
    value += p.bias * static_cast<double>(alt);
  }
  return value;
}

double log_joint_unnormalized(const LatentState& theta, const StatVector& x,
                              const ModelParams& p, const Graph& g) {
  if (theta.size() != x.size())
    throw invalid_size_error("log_joint_unnormalized: length mismatch");
  double value = log_prior_unnormalized(theta, p, g);
  for (std::size_t i = 0; i < x.size(); ++i)
    value += log_emission_at(p, i, x[i], theta[i] != 0);
  return value;
}

}  // namespace mrftest
