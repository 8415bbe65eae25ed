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

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "alpha_bandits/posterior.hpp"
#include "alpha_bandits/random.hpp"

namespace alpha_bandits {

enum class PolicyKind { kAlphaTS, kUCB1, kUCBV, kMOSS };

std::string_view to_string(PolicyKind kind);

/// Per-arm running moments shared by the index policies.
struct ArmStats {
  std::vector<std::uint64_t> counts;
  std::vector<double> sums;
  std::vector<double> sum_squares;

  explicit ArmStats(std::size_t k) : counts(k, 0), sums(k, 0.0), sum_squares(k, 0.0) {}

  double mean(std::size_t arm) const { return sums[arm] / static_cast<double>(counts[arm]); }
  /// Biased (1/n) empirical variance.
  double variance(std::size_t arm) const;
};

struct AlphaTSState {
  std::vector<TemperedPosterior> posteriors;
};

struct UCB1State {
  ArmStats stats;
};

/// Bernstein-style index: mean + sqrt(variance_scale * V ln t / n) +
/// bias_scale * ln t / n.
struct UCBVConstants {
  double variance_scale = 2.0;
  double bias_scale = 3.0;
};

struct UCBVState {
  ArmStats stats;
  UCBVConstants constants;
};

struct MOSSState {
  ArmStats stats;
  std::uint64_t horizon;
};

class Policy {
 public:
  using State = std::variant<AlphaTSState, UCB1State, UCBVState, MOSSState>;

  /// All posteriors must share one alpha.
  static Policy alpha_ts(std::vector<TemperedPosterior> posteriors);
  static Policy alpha_ts(std::span<const PriorSpec> priors, double alpha);
  static Policy ucb1(std::size_t num_arms);
  static Policy ucbv(std::size_t num_arms, UCBVConstants constants = {});
  static Policy moss(std::size_t num_arms, std::uint64_t horizon);

  PolicyKind kind() const noexcept { return static_cast<PolicyKind>(state_.index()); }
  std::size_t num_arms() const noexcept;
  /// Number of rewards recorded so far.
  std::uint64_t t() const noexcept { return t_; }
  const State& state() const noexcept { return state_; }

  template <class T>
  const T& as() const {
    return std::get<T>(state_);
  }

 private:
  explicit Policy(State state) : state_(std::move(state)) {}
  friend Policy record_reward(Policy policy, std::size_t arm, double reward);

  State state_;
  std::uint64_t t_ = 0;
};

struct ArmChoice {
  std::size_t arm_index;
  /// Sampled means (alpha-TS) or index values (UCB family), one per arm.
  std::vector<double> scores;
};

/// Argmax with ties going to the lowest index.
std::size_t argmax_lowest_index(std::span<const double> scores);

double ucb1_index(double mean, double count, double t);
double ucbv_index(double mean, double variance, double count, double t,
                  const UCBVConstants& constants);
double moss_index(double mean, double count, double horizon, double num_arms);

/// For alpha-TS this draws one mean per arm from its posterior (arm order,
/// a single stream) and plays the argmax, which is an exact draw of the arm
/// whose posterior probability of being optimal is p_t^k. Index policies
/// throw kNotWarmStarted while some arm has no observations.
ArmChoice choose_arm(const Policy& policy, RandomStream& rng);

Policy record_reward(Policy policy, std::size_t arm, double reward);

/// Monte Carlo estimate of P(arm k has the largest posterior mean) from
/// `mc_draws` independent draw-and-argmax rounds. Alpha-TS only.
std::vector<double> arm_selection_probabilities(const Policy& policy,
                                                std::uint64_t mc_draws, RandomStream& rng);

}  // namespace alpha_bandits
