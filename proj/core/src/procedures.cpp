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
#include "mrftest/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrftest/errors.hpp"

namespace mrftest {

namespace {

// Shared step-up machinery: sort ids stably by (score, id), find the
// largest prefix k passing `ok(prefix index)`, then resolve a tie block
// straddling the cut by excluding it entirely (including it would have
// produced a larger valid prefix).
template <typename PrefixOk>
Decision stepup_on_scores(const std::vector<double>& scores, PrefixOk&& ok) {
  const std::size_t m = scores.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  std::size_t k = 0;
  for (std::size_t i = 1; i <= m; ++i)
    if (ok(i, scores[idx[i - 1]])) k = i;

  if (k > 0 && k < m && scores[idx[k - 1]] == scores[idx[k]]) {
    const double tied = scores[idx[k - 1]];
    while (k > 0 && scores[idx[k - 1]] == tied) --k;
  }

  Decision d;
  d.rejected.assign(m, 0);
  d.k = k;
  for (std::size_t i = 0; i < k; ++i) d.rejected[idx[i]] = 1;
  return d;
}

}  // namespace

Decision lis_stepup(const LisVector& scores, double alpha) {
  double running = 0.0;
  std::size_t count = 0;
  return stepup_on_scores(scores, [&](std::size_t i, double score) {
    // prefix means are evaluated in sorted order, i is the prefix length
    (void)i;
    running += score;
    ++count;
    return running <= alpha * static_cast<double>(count);
  });
}

Decision bh(const std::vector<double>& pvals, double alpha) {
  const auto m = static_cast<double>(pvals.size());
  return stepup_on_scores(pvals, [&](std::size_t i, double p) {
    return p <= static_cast<double>(i) * alpha / m;
  });
}

Decision adaptive_p(const std::vector<double>& pvals, double alpha,
                    double pi0) {
  if (!(pi0 > 0.0))
    throw domain_error("adaptive_p: pi0 must be positive");
  return bh(pvals, std::min(1.0, alpha / pi0));
}

LisVector local_fdr_scores(const StatVector& x, double pi0,
                           const EmissionParams& psi) {
  LisVector scores(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // work with the log likelihood ratio for stability in the tails
    const double llr = log_emission(x[i], true, psi) -
                       log_emission(x[i], false, psi);
    scores[i] = 1.0 / (1.0 + std::exp(std::log1p(-pi0) - std::log(pi0) + llr));
  }
  return scores;
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / 1.4142135623730950488);
}

double z_to_pvalue(double z, Sidedness sided) {
  if (sided == Sidedness::OneSidedUpper)
    return 0.5 * std::erfc(z / 1.4142135623730950488);
  return std::erfc(std::fabs(z) / 1.4142135623730950488);
}

double two_proportion_z(std::size_t heads_pos, std::size_t n_pos,
                        std::size_t heads_neg, std::size_t n_neg) {
  if (n_pos == 0 || n_neg == 0)
    throw domain_error("two_proportion_z: group sizes must be positive");
  if (heads_pos > n_pos || heads_neg > n_neg)
    throw domain_error("two_proportion_z: heads exceed group size");
  const double p_pos = static_cast<double>(heads_pos) / static_cast<double>(n_pos);
  const double p_neg = static_cast<double>(heads_neg) / static_cast<double>(n_neg);
  const double pooled = static_cast<double>(heads_pos + heads_neg) /
                        static_cast<double>(n_pos + n_neg);
  if (pooled <= 0.0 || pooled >= 1.0) return 0.0;
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n_pos) +
                               1.0 / static_cast<double>(n_neg)));
  return (p_pos - p_neg) / se;
}

double catt(const GenotypeCounts& counts) {
  double r = 0.0, n = 0.0;     // cases, totals
  double sr = 0.0, sn = 0.0;   // score-weighted cases / totals
  double s2n = 0.0;            // squared-score-weighted totals
  for (std::size_t j = 0; j < 3; ++j) {
    const auto s = static_cast<double>(j);
    const auto rj = static_cast<double>(counts.cases[j]);
    const auto nj = static_cast<double>(counts.cases[j] + counts.controls[j]);
    r += rj;
    n += nj;
    sr += s * rj;
    sn += s * nj;
    s2n += s * s * nj;
  }
  if (n <= 1.0) throw domain_error("catt: table is empty");
  if (r <= 0.0 || r >= n)
    throw domain_error("catt: one of the case/control groups is empty");
  const double u = sr - sn * r / n;
  const double score_var = s2n / n - (sn / n) * (sn / n);
  const double var = (r * (n - r) / n) * score_var * (n / (n - 1.0));
  if (!(var > 0.0))
    throw domain_error("catt: degenerate table, trend variance is zero");
  return u / std::sqrt(var);
}

CountsTable counts_from_truth(const LatentState& truth, const Decision& d) {
  if (truth.size() != d.rejected.size())
    throw invalid_size_error("counts_from_truth: length mismatch");
  CountsTable t;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      if (d.rejected[i]) ++t.n11; else ++t.n01;
    } else {
      if (d.rejected[i]) ++t.n10; else ++t.n00;
    }
  }
  return t;
}

}  // namespace mrftest
