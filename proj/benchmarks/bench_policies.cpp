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

#include <vector>

#include "alpha_bandits/policies.hpp"
#include "alpha_bandits/simulator.hpp"

using namespace alpha_bandits;

namespace {

Policy warmed(PolicyKind kind, std::size_t arms) {
  Policy p = Policy::ucb1(arms);
  switch (kind) {
    case PolicyKind::kAlphaTS:
      p = Policy::alpha_ts(std::vector<PriorSpec>(arms, PriorSpec::beta(1, 1)), 0.8);
      break;
    case PolicyKind::kUCB1: break;
    case PolicyKind::kUCBV: p = Policy::ucbv(arms); break;
    case PolicyKind::kMOSS: p = Policy::moss(arms, 10000); break;
  }
  for (std::size_t k = 0; k < arms; ++k) {
    p = record_reward(std::move(p), k, 1.0);
    p = record_reward(std::move(p), k, 0.0);
  }
  return p;
}

}  // namespace

static void BM_ChooseArm(benchmark::State& state) {
  const auto kind = static_cast<PolicyKind>(state.range(0));
  const Policy p = warmed(kind, static_cast<std::size_t>(state.range(1)));
  RandomStream rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(choose_arm(p, rng).arm_index);
}
BENCHMARK(BM_ChooseArm)->ArgsProduct({{0, 1, 2, 3}, {2, 8, 64}});

static void BM_RecordReward(benchmark::State& state) {
  Policy p = warmed(PolicyKind::kAlphaTS, 8);
  std::size_t arm = 0;
  for (auto _ : state) {
    p = record_reward(std::move(p), arm, 1.0);
    arm = (arm + 1) % 8;
  }
}
BENCHMARK(BM_RecordReward);

static void BM_Replicate(benchmark::State& state) {
  ExperimentConfig c;
  for (int i = 1; i <= 8; ++i) c.arms.push_back(RewardModel::bernoulli(0.1 * i));
  c.horizon = static_cast<std::uint64_t>(state.range(0));
  c.policies = {PolicySpec::alpha_ts(0.8)};
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_replicate(c, 0, r++).cum_regret.back());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Replicate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
