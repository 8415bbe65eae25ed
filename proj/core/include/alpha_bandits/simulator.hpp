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

#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alpha_bandits/policies.hpp"
#include "alpha_bandits/posterior.hpp"
#include "alpha_bandits/random.hpp"
#include "alpha_bandits/reward_models.hpp"

namespace alpha_bandits {

/// The true environment: K >= 2 arms of one family with a unique best arm.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<RewardModel> arms, bool allow_ties = false);

  const std::vector<RewardModel>& arms() const noexcept { return arms_; }
  std::size_t num_arms() const noexcept { return arms_.size(); }
  Family family() const noexcept { return arms_.front().family(); }
  const std::vector<double>& true_means() const noexcept { return means_; }
  std::size_t best_arm() const noexcept { return best_; }
  /// gaps()[k] = mean(best) - mean(k); zero at the best arm.
  const std::vector<double>& gaps() const noexcept { return gaps_; }
  double max_gap() const noexcept;

 private:
  std::vector<RewardModel> arms_;
  std::vector<double> means_;
  std::vector<double> gaps_;
  std::size_t best_ = 0;
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kAlphaTS;
  /// Tempering for alpha-TS; ignored by the index policies.
  double alpha = 1.0;
  UCBVConstants ucbv_constants;
  /// Name written to outputs ("alpha_ts", "ts", "ucb1", ...).
  std::string label;

  static PolicySpec alpha_ts(double alpha);
  /// Standard Thompson sampling: alpha-TS at alpha = 1, labelled "ts".
  static PolicySpec thompson();
  static PolicySpec ucb1();
  static PolicySpec ucbv(UCBVConstants constants = {});
  static PolicySpec moss();

  std::optional<double> reported_alpha() const;
};

struct ExperimentConfig {
  std::vector<RewardModel> arms;
  bool allow_ties = false;
  /// Shared prior for alpha-TS; per-family default when unset.
  std::optional<PriorSpec> prior;
  std::uint64_t horizon = 1000;
  std::uint64_t replicates = 1;
  std::uint64_t init_pulls = 1;
  std::vector<PolicySpec> policies;
  std::uint64_t base_seed = 0;
  /// Add the warm-start regret into every cum_regret entry.
  bool fold_warm_start = false;

  void validate() const;
  BanditInstance instance() const { return BanditInstance(arms, allow_ties); }
};

struct RegretTrace {
  std::uint64_t replicate_id = 0;
  std::size_t policy_index = 0;
  std::string algorithm;
  std::optional<double> alpha;
  /// cum_regret[t] is the pseudo-regret after main round t+1.
  std::vector<double> cum_regret;
  std::vector<std::uint64_t> pulls;
  std::vector<std::size_t> chosen_arms;
  std::uint64_t seed = 0;
  double warm_start_regret = 0.0;

  std::uint64_t horizon() const noexcept { return cum_regret.size(); }
};

/// Anything that can drive the interaction loop: the Policy adapter below,
/// or fixed-arm stubs in tests.
template <class T>
concept ArmSelector = requires(T& s, RandomStream& rng, std::size_t arm, double reward) {
  { s.choose(rng) } -> std::convertible_to<std::size_t>;
  s.observe(arm, reward);
};

class PolicySelector {
 public:
  explicit PolicySelector(Policy policy) : policy_(std::move(policy)) {}

  std::size_t choose(RandomStream& rng) { return choose_arm(policy_, rng).arm_index; }
  void observe(std::size_t arm, double reward) {
    policy_ = record_reward(std::move(policy_), arm, reward);
  }
  const Policy& policy() const noexcept { return policy_; }

 private:
  Policy policy_;
};

/// Warm start (each arm pulled `init_pulls` times, round robin), then
/// `horizon` rounds of choose -> environment draw -> observe. Pseudo-regret
/// accumulates the true gap of each chosen arm; the warm-start part is
/// reported separately.
template <ArmSelector Selector>
RegretTrace run_selector(const BanditInstance& instance, Selector& selector,
                         std::uint64_t horizon, std::uint64_t init_pulls, RandomStream& rng) {
  const std::size_t k = instance.num_arms();
  RegretTrace trace;
  trace.pulls.assign(k, 0);
  trace.cum_regret.reserve(horizon);
  trace.chosen_arms.reserve(horizon);
  trace.seed = rng.seed();
  for (std::uint64_t round = 0; round < init_pulls; ++round) {
    for (std::size_t arm = 0; arm < k; ++arm) {
      selector.observe(arm, sample(instance.arms()[arm], rng));
      ++trace.pulls[arm];
      trace.warm_start_regret += instance.gaps()[arm];
    }
  }
  double regret = 0.0;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const std::size_t arm = selector.choose(rng);
    selector.observe(arm, sample(instance.arms()[arm], rng));
    ++trace.pulls[arm];
    regret += instance.gaps()[arm];
    trace.cum_regret.push_back(regret);
    trace.chosen_arms.push_back(arm);
  }
  return trace;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t policy_index,
                             std::uint64_t replicate_id);

Policy make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                   const BanditInstance& instance);

RegretTrace run_replicate(const ExperimentConfig& config, std::size_t policy_index,
                          std::uint64_t replicate_id);

/// Every (policy, replicate) pair, ordered by policy then replicate.
/// `threads` = 0 uses the hardware concurrency; the output never depends on
/// it.
std::vector<RegretTrace> run_experiment(const ExperimentConfig& config, unsigned threads = 0);

/// Nearest-rank percentile (p in (0, 100]) of already sorted values.
double nearest_rank_percentile(std::span<const double> sorted, double p);

struct GroupSummary {
  std::string algorithm;
  std::optional<double> alpha;
  std::vector<double> percentiles;
  /// curves[i][t]: percentiles[i] of cum_regret at round t+1.
  std::vector<std::vector<double>> curves;
  std::uint64_t replicates = 0;
};

/// Per-round percentile curves for each (algorithm, alpha) group, groups in
/// order of first appearance.
std::vector<GroupSummary> aggregate(std::span<const RegretTrace> traces,
                                    std::span<const double> percentiles);

/// Mean cum_regret curve over the traces (same horizon required).
std::vector<double> mean_curve(std::span<const RegretTrace> traces);

}  // namespace alpha_bandits
