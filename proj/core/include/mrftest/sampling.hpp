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
#ifndef MRFTEST_SAMPLING_HPP
#define MRFTEST_SAMPLING_HPP

#include <cstdint>

#include "mrftest/graph.hpp"
#include "mrftest/model.hpp"

namespace mrftest {

enum class PriorSampleMethod { Exact, Gibbs };

struct PriorSampleConfig {
  PriorSampleMethod method = PriorSampleMethod::Exact;
  std::size_t sweeps = 1000;    // Gibbs only
  std::size_t burn_in = 500;    // Gibbs only
  std::uint64_t seed = 0;
};

/// Draw one latent state from the MRF prior P(theta; phi, bias).
///
/// Exact (acyclic graphs only): roots are drawn from their exact prior
/// marginals, then children by ancestral sampling down each tree, using
/// the conditional implied by the edge coupling, the child's bias term
/// and the child's upward subtree message. Gibbs: prior-only sweeps of
/// a systematic-scan chain, returning the final state.
LatentState sample_prior(const Graph& g, const ModelParams& p,
                         const PriorSampleConfig& cfg);

/// Draw x given theta: x_i ~ N(0,1) when theta_i = 0, else
/// N(mu_i, sigma1^2) with mu_i = mu_override[i] when provided.
StatVector sample_observations(const LatentState& theta,
                               const EmissionParams& psi,
                               const std::vector<double>* mu_override,
                               std::uint64_t seed);

}  // namespace mrftest

#endif  // MRFTEST_SAMPLING_HPP
