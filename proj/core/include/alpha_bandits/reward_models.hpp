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

#include <string_view>
#include <variant>
#include <vector>

#include "alpha_bandits/random.hpp"

namespace alpha_bandits {

/// Absolute tolerance used whenever two real parameters are compared for
/// equality (zero-divergence checks, unique-best-arm checks, simplex sums).
inline constexpr double kParameterTolerance = 1e-12;

enum class Family { kBernoulli, kCategorical, kGaussian, kPoisson };

std::string_view to_string(Family family);

struct Bernoulli {
  double p;
};

/// Finite distribution over `support` (defaults to 0..d-1).
struct Categorical {
  std::vector<double> probs;
  std::vector<double> support;
};

struct GaussianKnownVar {
  double mean;
  double var;
};

struct Poisson {
  double rate;
};

/// A validated parametric reward distribution. Immutable once built.
class RewardModel {
 public:
  using Params = std::variant<Bernoulli, Categorical, GaussianKnownVar, Poisson>;

  static RewardModel bernoulli(double p);
  static RewardModel categorical(std::vector<double> probs);
  static RewardModel categorical(std::vector<double> probs,
                                 std::vector<double> support);
  static RewardModel gaussian(double mean, double var = 1.0);
  static RewardModel poisson(double rate);

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }

 private:
  explicit RewardModel(Params params) : params_(std::move(params)) {}

  Params params_;
};

double mean(const RewardModel& model);

/// Variance of a single reward draw.
double variance(const RewardModel& model);

double sample(const RewardModel& model, RandomStream& rng);

/// True when both models are of one family and every parameter agrees
/// within kParameterTolerance.
bool parameters_equal(const RewardModel& a, const RewardModel& b);

/// Order of a Rényi divergence: anything in (0, 1], or exactly 2 (the order
/// used by the prior-mass condition).
class DivergenceOrder {
 public:
  explicit DivergenceOrder(double alpha);

  static DivergenceOrder two() { return DivergenceOrder(2.0); }

  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// D_alpha(a || b) = 1/(alpha-1) log ∫ p_a^alpha p_b^(1-alpha), in closed
/// form. Order 1 returns the KL divergence.
double renyi_divergence(const RewardModel& a, const RewardModel& b,
                        DivergenceOrder alpha);

/// Same quantity by adaptive Gauss-Kronrod quadrature of the defining
/// integral. Continuous families only; used to cross-check the closed form.
double renyi_quadrature_oracle(const RewardModel& a, const RewardModel& b,
                               DivergenceOrder alpha);

double kl_divergence(const RewardModel& a, const RewardModel& b);

}  // namespace alpha_bandits
