// Copyright 2026 The alpha-bandits Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "alpha_bandits/posterior.hpp"
#include "alpha_bandits/random.hpp"
#include "alpha_bandits/reward_models.hpp"

using namespace alpha_bandits;

static void BM_Uniform(benchmark::State& state) {
  RandomStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_Uniform);

static void BM_Normal(benchmark::State& state) {
  RandomStream rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_Normal);

static void BM_Gamma(benchmark::State& state) {
  RandomStream rng(3);
  const double shape = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(rng.gamma(shape));
}
BENCHMARK(BM_Gamma)->Arg(3)->Arg(10)->Arg(100)->Arg(10000);

static void BM_Poisson(benchmark::State& state) {
  RandomStream rng(4);
  const double rate = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rng.poisson(rate));
}
BENCHMARK(BM_Poisson)->Arg(1)->Arg(10)->Arg(100);

static void BM_BetaPosteriorDraw(benchmark::State& state) {
  RandomStream rng(5);
  const TemperedPosterior post(BetaBernoulli{40.5, 12.0}, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mean(post, rng));
}
BENCHMARK(BM_BetaPosteriorDraw);

static void BM_DirichletPosteriorDraw(benchmark::State& state) {
  RandomStream rng(6);
  const TemperedPosterior post(
      DirichletCategorical{std::vector<double>(static_cast<std::size_t>(state.range(0)), 3.0), {}},
      0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mean(post, rng));
}
BENCHMARK(BM_DirichletPosteriorDraw)->Arg(3)->Arg(10);

BENCHMARK_MAIN();
