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

#include "alpha_bandits/policies.hpp"

#include <cmath>
#include <string>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

namespace {

template <class F>
std::vector<double> index_scores(const ArmStats& stats, F&& index) {
  std::vector<double> scores(stats.counts.size());
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (stats.counts[k] == 0) {
      throw Error(ErrorCode::kNotWarmStarted,
                  "arm " + std::to_string(k) + " has no observations");
    }
    scores[k] = index(k);
  }
  return scores;
}

void require_arms(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "policy needs at least one arm");
}

void accumulate(ArmStats& stats, std::size_t arm, double reward) {
  ++stats.counts[arm];
  stats.sums[arm] += reward;
  stats.sum_squares[arm] += reward * reward;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kAlphaTS: return "alpha_ts";
    case PolicyKind::kUCB1: return "ucb1";
    case PolicyKind::kUCBV: return "ucbv";
    case PolicyKind::kMOSS: return "moss";
  }
  return "unknown";
}

double ArmStats::variance(std::size_t arm) const {
  const double n = static_cast<double>(counts[arm]);
  const double m = sums[arm] / n;
  return std::max(0.0, sum_squares[arm] / n - m * m);
}

Policy Policy::alpha_ts(std::vector<TemperedPosterior> posteriors) {
  require_arms(posteriors.size());
  for (const auto& p : posteriors) {
    if (p.alpha() != posteriors.front().alpha()) {
      throw Error(ErrorCode::kInvalidAlpha, "alpha-TS posteriors must share one alpha");
    }
  }
  return Policy(AlphaTSState{std::move(posteriors)});
}

Policy Policy::alpha_ts(std::span<const PriorSpec> priors, double alpha) {
  std::vector<TemperedPosterior> posteriors;
  posteriors.reserve(priors.size());
  for (const auto& prior : priors) posteriors.push_back(init_posterior(prior, alpha));
  return alpha_ts(std::move(posteriors));
}

Policy Policy::ucb1(std::size_t num_arms) {
  require_arms(num_arms);
  return Policy(UCB1State{ArmStats(num_arms)});
}

Policy Policy::ucbv(std::size_t num_arms, UCBVConstants constants) {
  require_arms(num_arms);
  return Policy(UCBVState{ArmStats(num_arms), constants});
}

Policy Policy::moss(std::size_t num_arms, std::uint64_t horizon) {
  require_arms(num_arms);
  if (horizon == 0) throw Error(ErrorCode::kInvalidArgument, "MOSS needs a positive horizon");
  return Policy(MOSSState{ArmStats(num_arms), horizon});
}

std::size_t Policy::num_arms() const noexcept {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AlphaTSState>) {
          return s.posteriors.size();
        } else {
          return s.stats.counts.size();
        }
      },
      state_);
}

std::size_t argmax_lowest_index(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

double ucb1_index(double mean, double count, double t) {
  return mean + std::sqrt(2.0 * std::log(t) / count);
}

double ucbv_index(double mean, double variance, double count, double t,
                  const UCBVConstants& constants) {
  const double log_t = std::log(t);
  return mean + std::sqrt(constants.variance_scale * variance * log_t / count) +
         constants.bias_scale * log_t / count;
}

double moss_index(double mean, double count, double horizon, double num_arms) {
  return mean + std::sqrt(std::max(std::log(horizon / (num_arms * count)), 0.0) / count);
}

ArmChoice choose_arm(const Policy& policy, RandomStream& rng) {
  const double t = static_cast<double>(policy.t());
  std::vector<double> scores = std::visit(
      [&](const auto& s) -> std::vector<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AlphaTSState>) {
          std::vector<double> draws(s.posteriors.size());
          for (std::size_t k = 0; k < draws.size(); ++k) {
            draws[k] = sample_mean(s.posteriors[k], rng);
          }
          return draws;
        } else if constexpr (std::is_same_v<T, UCB1State>) {
          return index_scores(s.stats, [&](std::size_t k) {
            return ucb1_index(s.stats.mean(k), static_cast<double>(s.stats.counts[k]), t);
          });
        } else if constexpr (std::is_same_v<T, UCBVState>) {
          return index_scores(s.stats, [&](std::size_t k) {
            return ucbv_index(s.stats.mean(k), s.stats.variance(k),
                              static_cast<double>(s.stats.counts[k]), t, s.constants);
          });
        } else {
          const double num_arms = static_cast<double>(s.stats.counts.size());
          return index_scores(s.stats, [&](std::size_t k) {
            return moss_index(s.stats.mean(k), static_cast<double>(s.stats.counts[k]),
                              static_cast<double>(s.horizon), num_arms);
          });
        }
      },
      policy.state());
  const std::size_t arm = argmax_lowest_index(scores);
  return ArmChoice{arm, std::move(scores)};
}

Policy record_reward(Policy policy, std::size_t arm, double reward) {
  if (arm >= policy.num_arms()) {
    throw Error(ErrorCode::kArmOutOfRange, "arm " + std::to_string(arm) + " out of range");
  }
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AlphaTSState>) {
          s.posteriors[arm] = update(std::move(s.posteriors[arm]), reward);
        } else {
          accumulate(s.stats, arm, reward);
        }
      },
      policy.state_);
  ++policy.t_;
  return policy;
}

std::vector<double> arm_selection_probabilities(const Policy& policy,
                                                std::uint64_t mc_draws, RandomStream& rng) {
  if (policy.kind() != PolicyKind::kAlphaTS) {
    throw Error(ErrorCode::kInvalidArgument,
                "selection probabilities are defined for alpha-TS only");
  }
  if (mc_draws == 0) throw Error(ErrorCode::kInvalidArgument, "mc_draws must be positive");
  std::vector<std::uint64_t> wins(policy.num_arms(), 0);
  for (std::uint64_t i = 0; i < mc_draws; ++i) ++wins[choose_arm(policy, rng).arm_index];
  std::vector<double> probs(wins.size());
  for (std::size_t k = 0; k < wins.size(); ++k) {
    probs[k] = static_cast<double>(wins[k]) / static_cast<double>(mc_draws);
  }
  return probs;
}

}  // namespace alpha_bandits
