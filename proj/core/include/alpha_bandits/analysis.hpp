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
#include <optional>
#include <span>
#include <vector>

#include "alpha_bandits/posterior.hpp"
#include "alpha_bandits/reward_models.hpp"
#include "alpha_bandits/simulator.hpp"

namespace alpha_bandits {

/// Concentration-rate constant D (1 - alpha) min(2 alpha, 1 - alpha) / 16.
/// D = 1 for sub-Gaussian rewards, m / C_g^2 for a one-parameter
/// exponential family whose log-partition curvature lies in [m, C_g].
double c_alpha(double alpha, double D = 1.0);

/// D for an exponential family with curvature bounds [m, C_g].
double exponential_family_D(double m, double c_g);

struct BoundInputs {
  /// Gaps of the suboptimal arms, each in (0, 1].
  std::vector<double> gaps;
  std::uint64_t horizon = 1;
  double alpha = 0.5;
  double D = 1.0;
  /// Not computable in closed form; treated as configuration.
  double r0 = 1.0;
  /// Total number of arms; 0 means gaps.size() + 1.
  std::size_t num_arms = 0;

  static BoundInputs from_instance(const BanditInstance& instance, std::uint64_t horizon,
                                   double alpha, double D = 1.0, double r0 = 1.0);

  std::size_t arms() const noexcept { return num_arms == 0 ? gaps.size() + 1 : num_arms; }
  void validate() const;
};

struct ArmBoundTerms {
  double gap = 0.0;
  double thm1 = 0.0;
  /// log(T C(alpha) gap^2 / 9) <= 0, so only r0 gap + 27/(2 C gap) is kept.
  bool thm1_log_term_dropped = false;
  double thm2 = 0.0;
  /// gap <= e sqrt(K ln K) / sqrt(T C(alpha)): the T * gap cap applies.
  bool thm2_small_gap = false;
  double thm3 = 0.0;
};

struct BoundReport {
  double alpha = 0.0;
  double D = 1.0;
  double r0 = 1.0;
  std::uint64_t horizon = 0;
  std::size_t num_arms = 0;
  double c_alpha = 0.0;
  double thm1_bound = 0.0;
  double thm2_bound = 0.0;
  /// K + sqrt(K T ln K / C(alpha)) and its square-root part.
  double thm2_envelope = 0.0;
  double thm2_envelope_sqrt_term = 0.0;
  double thm3_bound = 0.0;
  /// Log-T coefficient of the asymptotic lower bound, when an instance is
  /// supplied and its family is supported.
  std::optional<double> lb_coefficient;
  std::vector<ArmBoundTerms> arms;
};

/// Per-arm instance-dependent bound with the log(T C gap^2 / 9) term.
double thm1_arm_term(double gap, std::uint64_t horizon, double c, double r0,
                     bool* log_term_dropped = nullptr);
double thm1_instance_bound(const BoundInputs& inputs);

double thm3_arm_term(double gap, std::uint64_t horizon, double c, double r0);
double thm3_instance_bound(const BoundInputs& inputs);

/// Gap threshold e sqrt(K ln K) / sqrt(T C(alpha)) splitting the
/// instance-independent argument.
double thm2_gap_threshold(const BoundInputs& inputs);
/// Explicit-constant instance-independent bound: per suboptimal arm,
/// e sqrt(T K ln K / C) below the gap threshold, otherwise
/// 19 (r0 + 1) sqrt(T ln K / (C K)) + r0.
double thm2_independent_bound(const BoundInputs& inputs);
double thm2_envelope_sqrt_term(const BoundInputs& inputs);
double thm2_envelope(const BoundInputs& inputs);

/// sum_k gap_k / inf{KL(arm k || theta) : mean(theta) > best mean}; the
/// infimum sits at the best arm's parameter for these one-parameter
/// families. Throws kUnsupportedFamily for categorical rewards.
double asymptotic_lower_bound(const BanditInstance& instance);

BoundReport bound_report(const BoundInputs& inputs,
                         const BanditInstance* instance = nullptr);

struct PriorMassResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double ball_lower = 0.0;
  double ball_upper = 0.0;
};

/// Prior mass of the D_2 ball {theta : D_2(theta0, theta) <= eps^2}, found
/// by bisection on each side of theta0 and integrated by quadrature,
/// against 4^(1 + alpha) e^(-n eps^2). theta0 is the Bernoulli p, the
/// Gaussian mean or the Poisson rate.
PriorMassResult check_prior_mass_b1(const PriorSpec& prior, double theta0, double alpha,
                                    double eps, std::uint64_t n);

struct MonteCarloSettings {
  std::uint64_t outer = 500;
  std::uint64_t inner = 5000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ConcentrationResult {
  double empirical = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// Averages, over `outer` datasets of n rewards from `true_model`, the
/// inner-MC posterior probability that |mu(theta) - mu_0| >= nabla, and
/// compares it with (1/2) e^(-C(alpha) n nabla^2).
ConcentrationResult verify_concentration(const PriorSpec& prior, const RewardModel& true_model,
                                         double alpha, double nabla, std::uint64_t n,
                                         const MonteCarloSettings& mc, double D = 1.0);

struct LogFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least squares y = intercept + slope * ln(x).
LogFit fit_log_growth(std::span<const double> x, std::span<const double> y);

}  // namespace alpha_bandits
