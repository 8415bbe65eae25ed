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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

#include "alpha_bandits/simulator.hpp"

using namespace alpha_bandits;

namespace {

struct FixedArm {
  std::size_t arm;
  std::size_t observed = 0;
  std::size_t choose(RandomStream&) const { return arm; }
  void observe(std::size_t, double) { ++observed; }
};

std::vector<RewardModel> bernoulli_arms(std::initializer_list<double> ps) {
  std::vector<RewardModel> arms;
  for (double p : ps) arms.push_back(RewardModel::bernoulli(p));
  return arms;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.arms = bernoulli_arms({0.9, 0.8, 0.5, 0.3});
  c.horizon = 300;
  c.replicates = 3;
  c.init_pulls = 2;
  c.policies = {PolicySpec::alpha_ts(0.5), PolicySpec::thompson(), PolicySpec::ucb1(),
                PolicySpec::ucbv(), PolicySpec::moss()};
  c.base_seed = 20240611;
  return c;
}

bool same_traces(const std::vector<RegretTrace>& a, const std::vector<RegretTrace>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].cum_regret != b[i].cum_regret || a[i].pulls != b[i].pulls ||
        a[i].chosen_arms != b[i].chosen_arms || a[i].seed != b[i].seed ||
        a[i].algorithm != b[i].algorithm || a[i].alpha != b[i].alpha ||
        a[i].replicate_id != b[i].replicate_id || a[i].policy_index != b[i].policy_index) {
      return false;
    }
  }
  return true;
}

RegretTrace constant_trace(double value, std::uint64_t horizon) {
  RegretTrace t;
  t.algorithm = "alpha_ts";
  t.alpha = 0.5;
  t.cum_regret.assign(horizon, value);
  return t;
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_ERROR_CODE(BanditInstance(bernoulli_arms({0.5})), ErrorCode::kInvalidInstance);
  CHECK_ERROR_CODE(BanditInstance(bernoulli_arms({0.6, 0.6})), ErrorCode::kInvalidInstance);
  CHECK_ERROR_CODE(BanditInstance({RewardModel::bernoulli(0.5), RewardModel::poisson(0.5)}),
                   ErrorCode::kMixedFamilies);
  const BanditInstance inst(bernoulli_arms({0.6, 0.9, 0.3}));
  CHECK(inst.best_arm() == 1);
  CHECK(inst.gaps()[0] == doctest::Approx(0.3));
  CHECK(inst.gaps()[1] == 0.0);
  CHECK(inst.max_gap() == doctest::Approx(0.6));
  const BanditInstance ties(bernoulli_arms({0.6, 0.6}), true);
  CHECK(ties.gaps()[1] == 0.0);
}

TEST_CASE("config validation") {
  ExperimentConfig c = small_config();
  c.horizon = 0;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::kInvalidArgument);
  c = small_config();
  c.replicates = 0;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::kInvalidArgument);
  c = small_config();
  c.init_pulls = 0;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::kInvalidArgument);
  c = small_config();
  c.policies.clear();
  CHECK_ERROR_CODE(c.validate(), ErrorCode::kInvalidArgument);
  CHECK_ERROR_CODE(PolicySpec::alpha_ts(1.5), ErrorCode::kInvalidAlpha);
  c = small_config();
  c.policies[0].alpha = 0.0;
  CHECK_ERROR_CODE(c.validate(), ErrorCode::kInvalidAlpha);
}

TEST_CASE("run_replicate examples") {
  SUBCASE("identical arms give zero regret") {
    ExperimentConfig c;
    c.arms = bernoulli_arms({0.5, 0.5, 0.5});
    c.allow_ties = true;
    c.horizon = 1000;
    c.policies = {PolicySpec::alpha_ts(0.7), PolicySpec::ucb1(), PolicySpec::moss()};
    for (std::size_t p = 0; p < c.policies.size(); ++p) {
      const RegretTrace t = run_replicate(c, p, 0);
      CHECK(t.cum_regret.size() == 1000);
      CHECK(std::all_of(t.cum_regret.begin(), t.cum_regret.end(), [](double x) { return x == 0.0; }));
    }
  }
  const BanditInstance inst(bernoulli_arms({0.9, 0.6}));
  SUBCASE("best-arm oracle") {
    FixedArm oracle{0};
    RandomStream rng(1);
    const RegretTrace t = run_selector(inst, oracle, 100, 1, rng);
    CHECK(std::all_of(t.cum_regret.begin(), t.cum_regret.end(), [](double x) { return x == 0.0; }));
    CHECK(oracle.observed == 102);
  }
  SUBCASE("adversarial stub") {
    FixedArm worst{1};
    RandomStream rng(1);
    const RegretTrace t = run_selector(inst, worst, 5, 1, rng);
    const std::vector<double> expected{0.3, 0.6, 0.9, 1.2, 1.5};
    REQUIRE(t.cum_regret.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.cum_regret[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(t.warm_start_regret == doctest::Approx(0.3));
    CHECK(t.pulls == std::vector<std::uint64_t>{1, 6});
  }
}

TEST_CASE("run_experiment determinism") {
  const ExperimentConfig c = small_config();
  const auto a = run_experiment(c, 1);
  const auto b = run_experiment(c, 1);
  CHECK(a.size() == 15);
  CHECK(same_traces(a, b));
  const auto parallel = run_experiment(c, 4);
  CHECK(same_traces(a, parallel));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].policy_index == i / 3);
    CHECK(a[i].replicate_id == i % 3);
    CHECK(a[i].seed == replicate_seed(c.base_seed, i / 3, i % 3));
  }
  ExperimentConfig other = c;
  other.base_seed += 1;
  CHECK_FALSE(same_traces(a, run_experiment(other, 1)));
}

TEST_CASE("labels") {
  const auto traces = run_experiment(small_config(), 1);
  CHECK(traces[0].algorithm == "alpha_ts");
  CHECK(traces[0].alpha == 0.5);
  CHECK(traces[3].algorithm == "ts");
  CHECK(traces[3].alpha == 1.0);
  CHECK(traces[6].algorithm == "ucb1");
  CHECK_FALSE(traces[6].alpha.has_value());
  CHECK(traces[9].algorithm == "ucbv");
  CHECK(traces[12].algorithm == "moss");
}

TEST_CASE("trace invariants across families") {
  std::vector<ExperimentConfig> configs;
  configs.push_back(small_config());
  ExperimentConfig g = small_config();
  g.arms = {RewardModel::gaussian(0.5, 1.0), RewardModel::gaussian(0.1, 0.5),
            RewardModel::gaussian(-0.3, 2.0)};
  configs.push_back(g);
  ExperimentConfig p = small_config();
  p.arms = {RewardModel::poisson(1.0), RewardModel::poisson(2.0), RewardModel::poisson(1.5)};
  configs.push_back(p);
  ExperimentConfig cat = small_config();
  cat.arms = {RewardModel::categorical({0.2, 0.3, 0.5}, {0.0, 0.5, 1.0}),
              RewardModel::categorical({0.5, 0.3, 0.2}, {0.0, 0.5, 1.0})};
  configs.push_back(cat);

  for (const ExperimentConfig& c : configs) {
    const BanditInstance inst = c.instance();
    const auto traces = run_experiment(c, 1);
    for (std::size_t p = 0; p < c.policies.size(); ++p) {
      double mean_final = 0.0;
      double mean_pull_regret = 0.0;
      for (const RegretTrace& t : traces) {
        if (t.policy_index != p) continue;
        CHECK(t.horizon() == c.horizon);
        CHECK(std::is_sorted(t.cum_regret.begin(), t.cum_regret.end()));
        double recomputed = 0.0;
        for (std::size_t s = 0; s < t.chosen_arms.size(); ++s) {
          recomputed += inst.gaps()[t.chosen_arms[s]];
          CHECK(t.cum_regret[s] == recomputed);
          CHECK(t.cum_regret[s] <= static_cast<double>(s + 1) * inst.max_gap() + 1e-12);
        }
        const std::uint64_t total = std::accumulate(t.pulls.begin(), t.pulls.end(), std::uint64_t{0});
        CHECK(total == c.horizon + c.init_pulls * inst.num_arms());
        for (std::uint64_t n : t.pulls) CHECK(n >= c.init_pulls);
        mean_final += t.cum_regret.back();
        for (std::size_t k = 0; k < inst.num_arms(); ++k) {
          mean_pull_regret += inst.gaps()[k] * static_cast<double>(t.pulls[k] - c.init_pulls);
        }
      }
      CHECK(std::abs(mean_final - mean_pull_regret) / static_cast<double>(c.replicates) <= 1e-9);
    }
  }
}

TEST_CASE("fold_warm_start adds the warm-start regret") {
  ExperimentConfig c = small_config();
  const auto plain = run_experiment(c, 1);
  c.fold_warm_start = true;
  const auto folded = run_experiment(c, 1);
  const double warm = 2.0 * (0.1 + 0.4 + 0.6);
  for (std::size_t i = 0; i < plain.size(); ++i) {
    CHECK(plain[i].warm_start_regret == doctest::Approx(warm));
    for (std::size_t s = 0; s < plain[i].cum_regret.size(); ++s) {
      CHECK(folded[i].cum_regret[s] == doctest::Approx(plain[i].cum_regret[s] + warm));
    }
  }
}

TEST_CASE("nearest-rank percentile") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  CHECK(nearest_rank_percentile(v, 50) == 3);
  CHECK(nearest_rank_percentile(v, 90) == 5);
  CHECK(nearest_rank_percentile(v, 10) == 1);
  CHECK(nearest_rank_percentile(v, 20) == 1);
  CHECK(nearest_rank_percentile(v, 21) == 2);
  CHECK(nearest_rank_percentile(v, 100) == 5);
  CHECK_ERROR_CODE(nearest_rank_percentile(v, 0), ErrorCode::kInvalidArgument);
  CHECK_ERROR_CODE(nearest_rank_percentile(std::vector<double>{}, 50), ErrorCode::kInvalidArgument);
}

TEST_CASE("aggregate examples") {
  const std::vector<double> median{50};
  SUBCASE("one trace") {
    RegretTrace t = constant_trace(0, 4);
    t.cum_regret = {0.1, 0.5, 0.5, 2.0};
    const auto groups = aggregate(std::vector<RegretTrace>{t}, median);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].curves[0] == t.cum_regret);
  }
  SUBCASE("five constant traces") {
    std::vector<RegretTrace> traces;
    for (double v : {4.0, 1.0, 5.0, 3.0, 2.0}) traces.push_back(constant_trace(v, 10));
    const std::vector<double> ps{10, 50, 90};
    const auto groups = aggregate(traces, ps);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].replicates == 5);
    CHECK(groups[0].curves[0].back() == 1);
    CHECK(groups[0].curves[1].back() == 3);
    CHECK(groups[0].curves[2].back() == 5);
  }
  SUBCASE("groups follow first appearance") {
    const auto traces = run_experiment(small_config(), 1);
    const auto groups = aggregate(traces, median);
    REQUIRE(groups.size() == 5);
    CHECK(groups[0].algorithm == "alpha_ts");
    CHECK(groups[1].algorithm == "ts");
    CHECK(groups[4].algorithm == "moss");
  }
  SUBCASE("mixed horizons") {
    const std::vector<RegretTrace> traces{constant_trace(1, 10), constant_trace(1, 11)};
    CHECK_ERROR_CODE(aggregate(traces, median), ErrorCode::kMixedHorizons);
    CHECK_ERROR_CODE(mean_curve(traces), ErrorCode::kMixedHorizons);
  }
}

TEST_CASE("mean_curve") {
  std::vector<RegretTrace> traces{constant_trace(1, 3), constant_trace(2, 3)};
  CHECK(mean_curve(traces) == std::vector<double>{1.5, 1.5, 1.5});
}
