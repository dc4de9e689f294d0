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
#include <benchmark/benchmark.h>

#include "mrftest/inference.hpp"
#include "mrftest/learning.hpp"
#include "mrftest/procedures.hpp"
#include "mrftest/sampling.hpp"

using namespace mrftest;

namespace {

ModelParams default_params() {
  ModelParams p;
  p.phi[EdgeClass::Default] = matrix_to_coupling(0.8);
  p.psi = {2.0, 1.0};
  return p;
}

StatVector random_stats(std::size_t m, std::uint64_t seed) {
  RandomStream rng(seed);
  StatVector x(m);
  for (auto& v : x) v = rng.normal();
  return x;
}

void BM_BpChain(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Graph g = build_chain(m);
  const ModelParams p = default_params();
  const StatVector x = random_stats(m, 7);
  for (auto _ : state) {
    auto marg = bp_marginals(g, p, x);
    benchmark::DoNotOptimize(marg.lis.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BpChain)->Range(256, 16384)->Complexity();

void BM_GibbsSweepGrid(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Graph g = build_grid(side, side);
  const ModelParams p = default_params();
  const StatVector x = random_stats(g.node_count(), 11);
  GibbsSampler sampler(g, p, &x);
  RandomStream rng(3);
  LatentState theta = sampler.initial_state(rng);
  for (auto _ : state) {
    sampler.sweep(theta, rng);
    benchmark::DoNotOptimize(theta.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_GibbsSweepGrid)->Arg(16)->Arg(32)->Arg(64);

void BM_PcdUpdate(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Graph g = build_chain(m);
  ModelParams p = default_params();
  const Marginals prior = bp_prior_marginals(g, p);
  const SufficientStats target = data_stats(prior.pairwise, g);
  PcdConfig cfg;
  cfg.max_updates = 1;
  cfg.min_updates = 1;
  PcdOptimizer opt(g, cfg, 5);
  PriorParams start{{{EdgeClass::Default, 0.0}}, 0.0};
  for (auto _ : state) {
    auto fitted = opt.fit(target, start);
    benchmark::DoNotOptimize(fitted.bias);
  }
}
BENCHMARK(BM_PcdUpdate)->Arg(500)->Arg(3000);

void BM_LisStepup(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  RandomStream rng(13);
  LisVector lis(m);
  for (auto& v : lis) v = rng.uniform();
  for (auto _ : state) {
    auto d = lis_stepup(lis, 0.1);
    benchmark::DoNotOptimize(d.k);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LisStepup)->Range(1024, 262144)->Complexity();

void BM_EnumerateMarginals(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Graph g = build_chain(m);
  const ModelParams p = default_params();
  const StatVector x = random_stats(m, 17);
  for (auto _ : state) {
    auto marg = enumerate_marginals(g, p, x);
    benchmark::DoNotOptimize(marg.lis.data());
  }
}
BENCHMARK(BM_EnumerateMarginals)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
