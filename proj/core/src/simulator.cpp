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

#include "alpha_bandits/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

namespace {

[[noreturn]] void invalid_instance(const std::string& what) {
  throw Error(ErrorCode::kInvalidInstance, what);
}

[[noreturn]] void invalid_config(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

bool same_group(const RegretTrace& t, const GroupSummary& g) {
  return t.algorithm == g.algorithm && t.alpha == g.alpha;
}

}  // namespace

BanditInstance::BanditInstance(std::vector<RewardModel> arms, bool allow_ties)
    : arms_(std::move(arms)) {
  if (arms_.size() < 2) invalid_instance("a bandit instance needs at least two arms");
  for (const auto& arm : arms_) {
    if (arm.family() != arms_.front().family()) {
      throw Error(ErrorCode::kMixedFamilies, "all arms must share one reward family");
    }
  }
  means_.reserve(arms_.size());
  for (const auto& arm : arms_) means_.push_back(mean(arm));
  best_ = argmax_lowest_index(means_);
  const double best_mean = means_[best_];
  gaps_.reserve(arms_.size());
  for (std::size_t k = 0; k < arms_.size(); ++k) {
    const double gap = best_mean - means_[k];
    if (k != best_ && gap <= kParameterTolerance) {
      if (!allow_ties) invalid_instance("the optimal arm is not unique");
      gaps_.push_back(0.0);
    } else {
      gaps_.push_back(k == best_ ? 0.0 : gap);
    }
  }
}

double BanditInstance::max_gap() const noexcept {
  return *std::max_element(gaps_.begin(), gaps_.end());
}

PolicySpec PolicySpec::alpha_ts(double alpha) {
  validate_tempering_alpha(alpha);
  PolicySpec spec;
  spec.kind = PolicyKind::kAlphaTS;
  spec.alpha = alpha;
  spec.label = "alpha_ts";
  return spec;
}

PolicySpec PolicySpec::thompson() {
  PolicySpec spec = alpha_ts(1.0);
  spec.label = "ts";
  return spec;
}

PolicySpec PolicySpec::ucb1() {
  PolicySpec spec;
  spec.kind = PolicyKind::kUCB1;
  spec.label = "ucb1";
  return spec;
}

PolicySpec PolicySpec::ucbv(UCBVConstants constants) {
  PolicySpec spec;
  spec.kind = PolicyKind::kUCBV;
  spec.ucbv_constants = constants;
  spec.label = "ucbv";
  return spec;
}

PolicySpec PolicySpec::moss() {
  PolicySpec spec;
  spec.kind = PolicyKind::kMOSS;
  spec.label = "moss";
  return spec;
}

std::optional<double> PolicySpec::reported_alpha() const {
  if (kind == PolicyKind::kAlphaTS) return alpha;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  (void)instance();
  if (horizon < 1) invalid_config("horizon must be >= 1");
  if (replicates < 1) invalid_config("replicates must be >= 1");
  if (init_pulls < 1) invalid_config("init_pulls must be >= 1");
  if (policies.empty()) invalid_config("at least one policy is required");
  for (const auto& p : policies) {
    if (p.kind == PolicyKind::kAlphaTS) validate_tempering_alpha(p.alpha);
  }
  if (prior && prior->family() != arms.front().family()) {
    throw Error(ErrorCode::kMixedFamilies, "prior family does not match the reward family");
  }
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t policy_index,
                             std::uint64_t replicate_id) {
  return derive_seed(base_seed, policy_index, replicate_id);
}

Policy make_policy(const PolicySpec& spec, const ExperimentConfig& config,
                   const BanditInstance& instance) {
  const std::size_t k = instance.num_arms();
  switch (spec.kind) {
    case PolicyKind::kAlphaTS: {
      std::vector<PriorSpec> priors;
      priors.reserve(k);
      for (const auto& arm : instance.arms()) {
        if (!config.prior) {
          priors.push_back(PriorSpec::default_for(arm));
        } else if (arm.family() == Family::kGaussian) {
          // Known-variance likelihood: each arm uses its own variance.
          const auto& g = config.prior->as<GaussianPrior>();
          priors.push_back(
              PriorSpec::gaussian(g.mean, g.precision, arm.as<GaussianKnownVar>().var));
        } else {
          priors.push_back(*config.prior);
        }
      }
      return Policy::alpha_ts(priors, spec.alpha);
    }
    case PolicyKind::kUCB1: return Policy::ucb1(k);
    case PolicyKind::kUCBV: return Policy::ucbv(k, spec.ucbv_constants);
    case PolicyKind::kMOSS: return Policy::moss(k, config.horizon);
  }
  invalid_config("unknown policy kind");
}

RegretTrace run_replicate(const ExperimentConfig& config, std::size_t policy_index,
                          std::uint64_t replicate_id) {
  if (policy_index >= config.policies.size()) invalid_config("policy index out of range");
  const BanditInstance instance = config.instance();
  const PolicySpec& spec = config.policies[policy_index];
  RandomStream rng(replicate_seed(config.base_seed, policy_index, replicate_id));
  PolicySelector selector(make_policy(spec, config, instance));
  RegretTrace trace =
      run_selector(instance, selector, config.horizon, config.init_pulls, rng);
  trace.replicate_id = replicate_id;
  trace.policy_index = policy_index;
  trace.algorithm = spec.label.empty() ? std::string(to_string(spec.kind)) : spec.label;
  trace.alpha = spec.reported_alpha();
  if (config.fold_warm_start) {
    for (double& r : trace.cum_regret) r += trace.warm_start_regret;
  }
  return trace;
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const std::size_t jobs = config.policies.size() * config.replicates;
  std::vector<RegretTrace> traces(jobs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      try {
        traces[job] = run_replicate(config, job / config.replicates, job % config.replicates);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

double nearest_rank_percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::kInvalidArgument, "percentile of empty set");
  if (!(p > 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "percentile must lie in (0, 100]");
  }
  const double n = static_cast<double>(sorted.size());
  // The small offset keeps exact products such as 0.1 * 10 from rounding up.
  auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<GroupSummary> aggregate(std::span<const RegretTrace> traces,
                                    std::span<const double> percentiles) {
  if (traces.empty()) return {};
  const std::uint64_t horizon = traces.front().horizon();
  for (const auto& t : traces) {
    if (t.horizon() != horizon) {
      throw Error(ErrorCode::kMixedHorizons, "traces have different horizons");
    }
  }
  std::vector<GroupSummary> groups;
  std::vector<std::vector<const RegretTrace*>> members;
  for (const auto& t : traces) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const GroupSummary& g) { return same_group(t, g); });
    if (it == groups.end()) {
      groups.push_back(GroupSummary{t.algorithm, t.alpha, {}, {}, 0});
      members.emplace_back();
      it = groups.end() - 1;
    }
    members[static_cast<std::size_t>(it - groups.begin())].push_back(&t);
  }
  std::vector<double> column;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& group = groups[g];
    group.percentiles.assign(percentiles.begin(), percentiles.end());
    group.replicates = members[g].size();
    group.curves.assign(percentiles.size(), std::vector<double>(horizon));
    column.resize(members[g].size());
    for (std::uint64_t t = 0; t < horizon; ++t) {
      for (std::size_t i = 0; i < members[g].size(); ++i) {
        column[i] = members[g][i]->cum_regret[t];
      }
      std::sort(column.begin(), column.end());
      for (std::size_t p = 0; p < percentiles.size(); ++p) {
        group.curves[p][t] = nearest_rank_percentile(column, percentiles[p]);
      }
    }
  }
  return groups;
}

std::vector<double> mean_curve(std::span<const RegretTrace> traces) {
  if (traces.empty()) return {};
  const std::uint64_t horizon = traces.front().horizon();
  std::vector<double> curve(horizon, 0.0);
  for (const auto& t : traces) {
    if (t.horizon() != horizon) {
      throw Error(ErrorCode::kMixedHorizons, "traces have different horizons");
    }
    for (std::uint64_t i = 0; i < horizon; ++i) curve[i] += t.cum_regret[i];
  }
  for (double& v : curve) v /= static_cast<double>(traces.size());
  return curve;
}

}  // namespace alpha_bandits
