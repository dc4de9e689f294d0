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
#ifndef MRFTEST_MODEL_HPP
#define MRFTEST_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mrftest/graph.hpp"

namespace mrftest {

/// Two-group emission: the null density is fixed at N(0,1); the
/// alternative is N(mu1, sigma1^2).
struct EmissionParams {
  double mu1 = 2.0;
  double sigma1 = 1.0;
};

/// Binary ground-truth vector over the m hypotheses.
using LatentState = std::vector<std::uint8_t>;

/// Observed test statistics, one per hypothesis.
using StatVector = std::vector<double>;

using ClassCouplings = std::map<EdgeClass, double>;

/// Full parameter set of the MRF-coupled mixture.
///
/// The prior over the latent state is
///   P(theta) proportional to exp( sum_e phi_class(e) * I(theta_i = theta_j)
///                                 + bias * sum_i theta_i ).
/// Couplings are stored on the exponential scale; matrix_to_coupling
/// converts the symmetric potential-matrix parameterization into it.
/// The optional overrides give every edge (or node) its own coupling
/// (or alternative mean) for heterogeneous-parameter scenarios; when
/// present they take precedence over phi / psi.mu1.
struct ModelParams {
  ClassCouplings phi;
  double bias = 0.0;
  EmissionParams psi;
  std::optional<std::vector<double>> edge_phi;  // aligned with Graph::edges()
  std::optional<std::vector<double>> node_mu;   // length m
};

/// ln(p / (1-p)): the coupling whose edge potential matrix has diagonal p
/// and off-diagonal 1-p (up to scale). Inverse of the logistic function.
double matrix_to_coupling(double phi_matrix);

/// logistic(c) = 1 / (1 + exp(-c)); inverse of matrix_to_coupling.
double coupling_to_matrix(double coupling);

double logistic(double t);

/// Log density of x under the null (alt=false, standard normal) or the
/// alternative (alt=true, N(mu1, sigma1^2)).
double log_emission(double x, bool alt, const EmissionParams& psi);

/// Node-aware emission honoring the per-node mu override.
double log_emission_at(const ModelParams& p, std::size_t node, double x,
                       bool alt);

/// Coupling of one edge: per-edge override when present, else the class
/// entry. Throws missing_parameter_error for an absent class entry.
double coupling_for_edge(const ModelParams& p, const Graph& g,
                         std::size_t edge_index);

/// All edge couplings resolved into a dense vector aligned with edges().
std::vector<double> edge_couplings(const ModelParams& p, const Graph& g);

/// Log of the unnormalized prior:
/// sum_e phi_e * I(theta_i = theta_j) + bias * sum_i theta_i.
double log_prior_unnormalized(const LatentState& theta, const ModelParams& p,
                              const Graph& g);

/// log_prior_unnormalized plus the sum of per-node emission log densities.
double log_joint_unnormalized(const LatentState& theta, const StatVector& x,
                              const ModelParams& p, const Graph& g);

}  // namespace mrftest

#endif  // MRFTEST_MODEL_HPP
