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
#ifndef MRFTEST_PROCEDURES_HPP
#define MRFTEST_PROCEDURES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "mrftest/inference.hpp"
#include "mrftest/model.hpp"

namespace mrftest {

/// Outcome of a thresholding procedure: which hypotheses are rejected
/// and how many (the k of the step-up rule).
struct Decision {
  std::vector<std::uint8_t> rejected;
  std::size_t k = 0;
};

/// Step-up rule on ascending scores: k is the largest prefix of the
/// sorted scores whose running mean stays at or below alpha; the k
/// hypotheses holding the smallest scores are rejected. Ties are sorted
/// stably by (score, id); a tie block straddling position k is rejected
/// in full only if that keeps the prefix mean within alpha, else not at
/// all.
Decision lis_stepup(const LisVector& scores, double alpha);

/// Benjamini-Hochberg: k = max{ i : p_(i) <= i * alpha / m }, with the
/// same tie-block rule as lis_stepup.
Decision bh(const std::vector<double>& pvals, double alpha);

/// BH at level alpha / pi0 (capped at 1). pi0 must be positive.
Decision adaptive_p(const std::vector<double>& pvals, double alpha,
                    double pi0);

/// Two-group posterior null probabilities under independence:
/// pi0 f0(x) / (pi0 f0(x) + (1-pi0) f1(x)); thresholded downstream by
/// lis_stepup.
LisVector local_fdr_scores(const StatVector& x, double pi0,
                           const EmissionParams& psi);

enum class Sidedness { OneSidedUpper, TwoSided };

double normal_cdf(double z);
double z_to_pvalue(double z, Sidedness sided);

/// Pooled two-proportion z statistic; returns 0 when the pooled
/// proportion is degenerate (all heads or all tails).
double two_proportion_z(std::size_t heads_pos, std::size_t n_pos,
                        std::size_t heads_neg, std::size_t n_neg);

/// Case/control counts by genotype dosage 0/1/2.
struct GenotypeCounts {
  std::array<std::size_t, 3> cases{};
  std::array<std::size_t, 3> controls{};
};

/// Cochran-Armitage trend statistic with scores (0,1,2), standardized by
/// the conditional (margins-fixed) variance, which carries the
/// N/(N-1) finite-sample factor. Asymptotically N(0,1) under the null.
double catt(const GenotypeCounts& counts);

/// Classification of tested hypotheses against the ground truth.
struct CountsTable {
  std::size_t n00 = 0;  // null, not rejected
  std::size_t n10 = 0;  // null, rejected (false positives)
  std::size_t n01 = 0;  // non-null, not rejected (false negatives)
  std::size_t n11 = 0;  // non-null, rejected (true positives)

  std::size_t rejected() const { return n10 + n11; }      // R
  std::size_t not_rejected() const { return n00 + n01; }  // S
  std::size_t nulls() const { return n00 + n10; }         // m0
  std::size_t non_nulls() const { return n01 + n11; }     // m1
  std::size_t total() const { return n00 + n10 + n01 + n11; }
};

CountsTable counts_from_truth(const LatentState& truth, const Decision& d);

}  // namespace mrftest

#endif  // MRFTEST_PROCEDURES_HPP
