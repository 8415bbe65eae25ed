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

#include "alpha_bandits/analysis.hpp"
#include "alpha_bandits/reward_models.hpp"

using namespace alpha_bandits;

static void BM_RenyiClosedForm(benchmark::State& state) {
  const auto a = RewardModel::gaussian(0.4, 1.2);
  const auto b = RewardModel::gaussian(-0.3, 0.9);
  const DivergenceOrder order(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(renyi_divergence(a, b, order));
}
BENCHMARK(BM_RenyiClosedForm);

static void BM_RenyiQuadrature(benchmark::State& state) {
  const auto a = RewardModel::gaussian(0.4, 1.2);
  const auto b = RewardModel::gaussian(-0.3, 0.9);
  const DivergenceOrder order(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(renyi_quadrature_oracle(a, b, order));
}
BENCHMARK(BM_RenyiQuadrature);

static void BM_PriorMassBeta(benchmark::State& state) {
  const PriorSpec prior = PriorSpec::beta(2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_prior_mass_b1(prior, 0.4, 0.5, 0.2, 100).lhs);
  }
}
BENCHMARK(BM_PriorMassBeta)->Unit(benchmark::kMicrosecond);

static void BM_PriorMassGaussian(benchmark::State& state) {
  const PriorSpec prior = PriorSpec::gaussian(0, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_prior_mass_b1(prior, 0.0, 0.5, 0.1, 100).lhs);
  }
}
BENCHMARK(BM_PriorMassGaussian)->Unit(benchmark::kMicrosecond);

static void BM_Concentration(benchmark::State& state) {
  const MonteCarloSettings mc{100, 1000, 1, 1};
  const PriorSpec prior = PriorSpec::beta(1, 1);
  const auto truth = RewardModel::bernoulli(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_concentration(prior, truth, 0.5, 0.2, 200, mc).empirical);
  }
}
BENCHMARK(BM_Concentration)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
