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
#include <variant>
#include <vector>

#include "alpha_bandits/random.hpp"
#include "alpha_bandits/reward_models.hpp"

namespace alpha_bandits {

struct BetaPrior {
  double a = 1.0;
  double b = 1.0;
};

struct DirichletPrior {
  std::vector<double> concentration;
  /// Reward value of each category; empty means 0..d-1.
  std::vector<double> support;
};

struct GaussianPrior {
  double mean = 0.0;
  double precision = 1.0;
  /// Known variance of the Gaussian reward likelihood.
  double likelihood_var = 1.0;
};

struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;
};

/// Conjugate prior hyperparameters, one alternative per reward family
/// (same order as Family).
class PriorSpec {
 public:
  using Params = std::variant<BetaPrior, DirichletPrior, GaussianPrior, GammaPrior>;

  static PriorSpec beta(double a, double b);
  static PriorSpec dirichlet(std::vector<double> concentration,
                             std::vector<double> support = {});
  static PriorSpec gaussian(double mean, double precision, double likelihood_var = 1.0);
  static PriorSpec gamma(double shape, double rate);

  /// Flat-ish default for a reward family: Beta(1,1), Dirichlet(1,...,1),
  /// N(0, 1) with the model's variance as likelihood variance, Gamma(1,1).
  static PriorSpec default_for(const RewardModel& model);

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }

 private:
  explicit PriorSpec(Params params) : params_(std::move(params)) {}

  Params params_;
};

struct BetaBernoulli {
  double a;
  double b;
};

struct DirichletCategorical {
  std::vector<double> concentration;
  std::vector<double> support;
};

struct GaussianGaussian {
  double post_mean;
  double post_precision;
  double likelihood_var;
};

struct GammaPoisson {
  double shape;
  double rate;
};

/// Conjugate alpha-posterior: the likelihood of every observation enters
/// raised to the power alpha, so each sufficient-statistic increment is
/// scaled by alpha. alpha = 1 is the ordinary posterior.
class TemperedPosterior {
 public:
  using State =
      std::variant<BetaBernoulli, DirichletCategorical, GaussianGaussian, GammaPoisson>;

  TemperedPosterior(State state, double alpha, std::uint64_t n_obs = 0);

  Family family() const noexcept { return static_cast<Family>(state_.index()); }
  const State& state() const noexcept { return state_; }
  double alpha() const noexcept { return alpha_; }
  std::uint64_t n_obs() const noexcept { return n_obs_; }

  template <class T>
  const T& as() const {
    return std::get<T>(state_);
  }

 private:
  friend TemperedPosterior update(TemperedPosterior post, double reward);

  State state_;
  double alpha_;
  std::uint64_t n_obs_;
};

/// Throws kInvalidAlpha unless 0 < alpha <= 1.
void validate_tempering_alpha(double alpha);

TemperedPosterior init_posterior(const PriorSpec& prior, double alpha);

TemperedPosterior update(TemperedPosterior post, double reward);

/// Left fold of update(); throws at the first reward outside the support.
TemperedPosterior batch_update(TemperedPosterior post, std::span<const double> rewards);

/// Draws a parameter from the posterior and returns the reward mean it
/// implies.
double sample_mean(const TemperedPosterior& post, RandomStream& rng);

/// Posterior expectation of the reward mean.
double posterior_mean(const TemperedPosterior& post);

/// Posterior variance of the reward mean.
double posterior_mean_variance(const TemperedPosterior& post);

}  // namespace alpha_bandits
