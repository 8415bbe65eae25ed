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

#include "alpha_bandits/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

namespace {

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

[[noreturn]] void invalid_prior(const std::string& what) {
  throw Error(ErrorCode::kInvalidPrior, what);
}

[[noreturn]] void out_of_support(const std::string& family, double reward) {
  throw Error(ErrorCode::kRewardOutOfSupport,
              "reward " + std::to_string(reward) + " outside the " + family + " support");
}

std::vector<double> default_support(std::size_t d) {
  std::vector<double> support(d);
  std::iota(support.begin(), support.end(), 0.0);
  return support;
}

std::size_t category_of(const DirichletCategorical& s, double reward) {
  for (std::size_t i = 0; i < s.support.size(); ++i) {
    if (std::abs(s.support[i] - reward) <= kParameterTolerance) return i;
  }
  out_of_support("categorical", reward);
}

}  // namespace

PriorSpec PriorSpec::beta(double a, double b) {
  if (!positive(a) || !positive(b)) invalid_prior("Beta hyperparameters must be positive");
  return PriorSpec(BetaPrior{a, b});
}

PriorSpec PriorSpec::dirichlet(std::vector<double> concentration,
                               std::vector<double> support) {
  if (concentration.empty()) invalid_prior("Dirichlet needs at least one category");
  for (double c : concentration) {
    if (!positive(c)) invalid_prior("Dirichlet concentrations must be positive");
  }
  if (support.empty()) support = default_support(concentration.size());
  if (support.size() != concentration.size()) {
    invalid_prior("Dirichlet length does not match the reward support size");
  }
  return PriorSpec(DirichletPrior{std::move(concentration), std::move(support)});
}

PriorSpec PriorSpec::gaussian(double mean, double precision, double likelihood_var) {
  if (!std::isfinite(mean)) invalid_prior("Gaussian prior mean must be finite");
  if (!positive(precision)) invalid_prior("Gaussian prior precision must be positive");
  if (!positive(likelihood_var)) invalid_prior("likelihood variance must be positive");
  return PriorSpec(GaussianPrior{mean, precision, likelihood_var});
}

PriorSpec PriorSpec::gamma(double shape, double rate) {
  if (!positive(shape) || !positive(rate)) invalid_prior("Gamma hyperparameters must be positive");
  return PriorSpec(GammaPrior{shape, rate});
}

PriorSpec PriorSpec::default_for(const RewardModel& model) {
  switch (model.family()) {
    case Family::kBernoulli: return beta(1.0, 1.0);
    case Family::kCategorical: {
      const auto& c = model.as<Categorical>();
      return dirichlet(std::vector<double>(c.probs.size(), 1.0), c.support);
    }
    case Family::kGaussian:
      return gaussian(0.0, 1.0, model.as<GaussianKnownVar>().var);
    case Family::kPoisson: return gamma(1.0, 1.0);
  }
  invalid_prior("unknown family");
}

void validate_tempering_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidAlpha,
                "tempering alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

TemperedPosterior::TemperedPosterior(State state, double alpha, std::uint64_t n_obs)
    : state_(std::move(state)), alpha_(alpha), n_obs_(n_obs) {
  validate_tempering_alpha(alpha);
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaBernoulli>) {
          if (!positive(s.a) || !positive(s.b)) invalid_prior("Beta parameters must be positive");
        } else if constexpr (std::is_same_v<T, DirichletCategorical>) {
          if (s.concentration.empty() || s.concentration.size() != s.support.size()) {
            invalid_prior("Dirichlet concentration/support mismatch");
          }
          for (double c : s.concentration) {
            if (!positive(c)) invalid_prior("Dirichlet concentrations must be positive");
          }
        } else if constexpr (std::is_same_v<T, GaussianGaussian>) {
          if (!std::isfinite(s.post_mean) || !positive(s.post_precision) ||
              !positive(s.likelihood_var)) {
            invalid_prior("Gaussian posterior parameters invalid");
          }
        } else {
          if (!positive(s.shape) || !positive(s.rate)) {
            invalid_prior("Gamma parameters must be positive");
          }
        }
      },
      state_);
}

TemperedPosterior init_posterior(const PriorSpec& prior, double alpha) {
  validate_tempering_alpha(alpha);
  switch (prior.family()) {
    case Family::kBernoulli: {
      const auto& p = prior.as<BetaPrior>();
      return TemperedPosterior(BetaBernoulli{p.a, p.b}, alpha);
    }
    case Family::kCategorical: {
      const auto& p = prior.as<DirichletPrior>();
      return TemperedPosterior(DirichletCategorical{p.concentration, p.support}, alpha);
    }
    case Family::kGaussian: {
      const auto& p = prior.as<GaussianPrior>();
      return TemperedPosterior(GaussianGaussian{p.mean, p.precision, p.likelihood_var}, alpha);
    }
    case Family::kPoisson: {
      const auto& p = prior.as<GammaPrior>();
      return TemperedPosterior(GammaPoisson{p.shape, p.rate}, alpha);
    }
  }
  invalid_prior("unknown family");
}

TemperedPosterior update(TemperedPosterior post, double reward) {
  const double alpha = post.alpha_;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaBernoulli>) {
          if (reward == 1.0) {
            s.a += alpha;
          } else if (reward == 0.0) {
            s.b += alpha;
          } else {
            out_of_support("Bernoulli", reward);
          }
        } else if constexpr (std::is_same_v<T, DirichletCategorical>) {
          s.concentration[category_of(s, reward)] += alpha;
        } else if constexpr (std::is_same_v<T, GaussianGaussian>) {
          if (!std::isfinite(reward)) out_of_support("Gaussian", reward);
          const double precision = s.post_precision + alpha / s.likelihood_var;
          s.post_mean =
              (s.post_precision * s.post_mean + alpha * reward / s.likelihood_var) / precision;
          s.post_precision = precision;
        } else {
          if (!(reward >= 0.0) || reward != std::floor(reward) || !std::isfinite(reward)) {
            out_of_support("Poisson", reward);
          }
          s.shape += alpha * reward;
          s.rate += alpha;
        }
      },
      post.state_);
  ++post.n_obs_;
  return post;
}

TemperedPosterior batch_update(TemperedPosterior post, std::span<const double> rewards) {
  for (double r : rewards) post = update(std::move(post), r);
  return post;
}

double sample_mean(const TemperedPosterior& post, RandomStream& rng) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaBernoulli>) {
          return rng.beta(s.a, s.b);
        } else if constexpr (std::is_same_v<T, DirichletCategorical>) {
          double total = 0.0;
          double weighted = 0.0;
          for (std::size_t i = 0; i < s.concentration.size(); ++i) {
            const double g = rng.gamma(s.concentration[i]);
            total += g;
            weighted += g * s.support[i];
          }
          return weighted / total;
        } else if constexpr (std::is_same_v<T, GaussianGaussian>) {
          return rng.normal(s.post_mean, 1.0 / std::sqrt(s.post_precision));
        } else {
          return rng.gamma(s.shape) / s.rate;
        }
      },
      post.state());
}

double posterior_mean(const TemperedPosterior& post) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaBernoulli>) {
          return s.a / (s.a + s.b);
        } else if constexpr (std::is_same_v<T, DirichletCategorical>) {
          const double total =
              std::accumulate(s.concentration.begin(), s.concentration.end(), 0.0);
          return std::inner_product(s.concentration.begin(), s.concentration.end(),
                                    s.support.begin(), 0.0) /
                 total;
        } else if constexpr (std::is_same_v<T, GaussianGaussian>) {
          return s.post_mean;
        } else {
          return s.shape / s.rate;
        }
      },
      post.state());
}

double posterior_mean_variance(const TemperedPosterior& post) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BetaBernoulli>) {
          const double n = s.a + s.b;
          return s.a * s.b / (n * n * (n + 1.0));
        } else if constexpr (std::is_same_v<T, DirichletCategorical>) {
          const double total =
              std::accumulate(s.concentration.begin(), s.concentration.end(), 0.0);
          double m1 = 0.0;
          double m2 = 0.0;
          for (std::size_t i = 0; i < s.concentration.size(); ++i) {
            const double w = s.concentration[i] / total;
            m1 += w * s.support[i];
            m2 += w * s.support[i] * s.support[i];
          }
          return (m2 - m1 * m1) / (total + 1.0);
        } else if constexpr (std::is_same_v<T, GaussianGaussian>) {
          return 1.0 / s.post_precision;
        } else {
          return s.shape / (s.rate * s.rate);
        }
      },
      post.state());
}

}  // namespace alpha_bandits
