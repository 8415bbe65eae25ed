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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "alpha_bandits/analysis.hpp"
#include "alpha_bandits/posterior.hpp"
#include "alpha_bandits/reward_models.hpp"
#include "alpha_bandits/simulator.hpp"

namespace alpha_bandits::cli {

using Json = nlohmann::json;

/// Reads a config file. A manifest written by `simulate` is accepted too;
/// its recorded config is returned. Syntax errors are reported as
/// kConfigParseError with line and column.
Json load_config(const std::filesystem::path& path);

/// Applies `a.b.0.c=value` overrides; the value is parsed as JSON when
/// possible and taken as a string otherwise.
void apply_overrides(Json& config, std::span<const std::string> overrides);

RewardModel parse_reward_model(const Json& params, const std::string& family,
                               const Json* support, const std::string& where);
PriorSpec parse_prior(const Json& prior, const std::string& family, const std::string& where);

ExperimentConfig parse_experiment(const Json& config);

struct BoundsJob {
  BoundInputs inputs;
  std::optional<BanditInstance> instance;
};
BoundsJob parse_bounds(const Json& config);

struct ConcentrationJob {
  PriorSpec prior;
  RewardModel true_model;
  std::vector<double> alphas;
  std::vector<double> nablas;
  std::vector<std::uint64_t> ns;
  MonteCarloSettings mc;
  double D = 1.0;
};
ConcentrationJob parse_concentration(const Json& config);

struct DivergenceJob {
  RewardModel a;
  RewardModel b;
  double alpha;
};
DivergenceJob parse_divergence(const Json& config);

struct PriorMassJob {
  PriorSpec prior;
  double theta0;
  double alpha;
  double eps;
  std::uint64_t n;
};
PriorMassJob parse_prior_mass(const Json& config);

/// 64-bit FNV-1a of the canonical (sorted-key) dump, as 16 hex digits.
std::string config_hash(const Json& config);

}  // namespace alpha_bandits::cli
