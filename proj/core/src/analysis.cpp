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

#include "alpha_bandits/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

namespace {

[[noreturn]] void invalid_argument(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

// Prior-mass helpers.

struct ParameterDomain {
  double lower;  // -inf when unbounded
  double upper;  // +inf when unbounded
};

RewardModel model_at(const PriorSpec& prior, double theta) {
  switch (prior.family()) {
    case Family::kBernoulli: return RewardModel::bernoulli(theta);
    case Family::kGaussian:
      return RewardModel::gaussian(theta, prior.as<GaussianPrior>().likelihood_var);
    case Family::kPoisson: return RewardModel::poisson(theta);
    case Family::kCategorical: break;
  }
  throw Error(ErrorCode::kUnsupportedFamily, "prior-mass check needs a 1-d parameter");
}

ParameterDomain domain_of(Family family) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (family) {
    case Family::kBernoulli: return {0.0, 1.0};
    case Family::kGaussian: return {-inf, inf};
    case Family::kPoisson: return {0.0, inf};
    case Family::kCategorical: break;
  }
  throw Error(ErrorCode::kUnsupportedFamily, "prior-mass check needs a 1-d parameter");
}

double prior_log_density(const PriorSpec& prior, double theta) {
  switch (prior.family()) {
    case Family::kBernoulli: {
      const auto& p = prior.as<BetaPrior>();
      const double log_beta = std::lgamma(p.a) + std::lgamma(p.b) - std::lgamma(p.a + p.b);
      return (p.a - 1.0) * std::log(theta) + (p.b - 1.0) * std::log1p(-theta) - log_beta;
    }
    case Family::kGaussian: {
      const auto& p = prior.as<GaussianPrior>();
      const double z = theta - p.mean;
      return 0.5 * (std::log(p.precision) - std::log(2.0 * std::numbers::pi) -
                    p.precision * z * z);
    }
    case Family::kPoisson: {
      const auto& p = prior.as<GammaPrior>();
      return p.shape * std::log(p.rate) - std::lgamma(p.shape) +
             (p.shape - 1.0) * std::log(theta) - p.rate * theta;
    }
    case Family::kCategorical: break;
  }
  throw Error(ErrorCode::kUnsupportedFamily, "prior-mass check needs a 1-d parameter");
}

// D_2(theta0, theta) through the closed-form divergence engine; +inf where
// the divergence is infinite.
double d2_from(const PriorSpec& prior, double theta0, double theta) {
  try {
    return renyi_divergence(model_at(prior, theta0), model_at(prior, theta),
                            DivergenceOrder::two());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDivergenceInfinite) {
      return std::numeric_limits<double>::infinity();
    }
    throw;
  }
}

// Endpoint of the ball on one side of theta0 (direction = +1 or -1). D_2 is
// monotone along each direction, so bracket then bisect.
double ball_endpoint(const PriorSpec& prior, double theta0, double radius_sq,
                     double direction, const ParameterDomain& domain) {
  const double edge = direction > 0 ? domain.upper : domain.lower;
  auto inside = [&](double theta) { return d2_from(prior, theta0, theta) <= radius_sq; };

  double ok = theta0;
  double out = std::numeric_limits<double>::quiet_NaN();
  if (std::isfinite(edge)) {
    const double span = edge - theta0;
    if (span == 0.0) return edge;
    // Walk geometrically towards the edge without touching it.
    for (int k = 1; k <= 60; ++k) {
      const double theta = edge - span * std::ldexp(1.0, -k);
      if (theta == edge) break;
      if (!inside(theta)) {
        out = theta;
        break;
      }
      ok = theta;
    }
    if (std::isnan(out)) return edge;
  } else {
    double step = std::max(1.0, std::abs(theta0));
    for (int k = 0; k < 200; ++k) {
      const double theta = theta0 + direction * step;
      if (!inside(theta)) {
        out = theta;
        break;
      }
      ok = theta;
      step *= 2.0;
    }
    if (std::isnan(out)) {
      throw Error(ErrorCode::kBallUnresolvable, "could not bracket the D_2 ball boundary");
    }
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (ok + out);
    if (mid == ok || mid == out) break;
    (inside(mid) ? ok : out) = mid;
  }
  return ok;
}

double integrate_prior(const PriorSpec& prior, double lower, double upper) {
  if (!(upper > lower)) return 0.0;
  auto density = [&](double theta) { return std::exp(prior_log_density(prior, theta)); };
  double error = 0.0;
  double mass = 0.0;
  if (prior.family() == Family::kGaussian) {
    mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        density, lower, upper, 20, 1e-13, &error);
  } else {
    // Beta/Gamma densities may be singular at the domain edge.
    boost::math::quadrature::tanh_sinh<double> integrator;
    mass = integrator.integrate(density, lower, upper, 1e-13, &error);
  }
  if (!(error <= 1e-8)) {
    throw Error(ErrorCode::kQuadratureDidNotConverge,
                "prior-mass quadrature error " + std::to_string(error));
  }
  return std::clamp(mass, 0.0, 1.0);
}

}  // namespace

double c_alpha(double alpha, double D) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidAlpha,
                "C(alpha) needs alpha in (0, 1), got " + std::to_string(alpha));
  }
  if (!(D > 0.0)) invalid_argument("D must be positive");
  return D * (1.0 - alpha) * std::min(2.0 * alpha, 1.0 - alpha) / 16.0;
}

double exponential_family_D(double m, double c_g) {
  if (!(m > 0.0) || !(c_g >= m)) invalid_argument("need 0 < m <= C_g");
  return m / (c_g * c_g);
}

BoundInputs BoundInputs::from_instance(const BanditInstance& instance, std::uint64_t horizon,
                                       double alpha, double D, double r0) {
  BoundInputs in;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    if (k != instance.best_arm()) in.gaps.push_back(instance.gaps()[k]);
  }
  in.horizon = horizon;
  in.alpha = alpha;
  in.D = D;
  in.r0 = r0;
  in.num_arms = instance.num_arms();
  return in;
}

void BoundInputs::validate() const {
  if (gaps.empty()) invalid_argument("at least one suboptimal gap is required");
  for (double g : gaps) {
    if (!(g > 0.0 && g <= 1.0)) invalid_argument("gaps must lie in (0, 1]");
  }
  if (horizon < 1) invalid_argument("horizon must be >= 1");
  if (!(r0 > 0.0)) invalid_argument("r0 must be positive");
  if (arms() < gaps.size() + 1) invalid_argument("num_arms smaller than gaps + 1");
  (void)c_alpha(alpha, D);
}

double thm1_arm_term(double gap, std::uint64_t horizon, double c, double r0,
                     bool* log_term_dropped) {
  const double log_arg = static_cast<double>(horizon) * c * gap * gap / 9.0;
  const double tail = r0 * gap + 27.0 / (2.0 * c * gap);
  const bool dropped = !(log_arg > 1.0);
  if (log_term_dropped != nullptr) *log_term_dropped = dropped;
  if (dropped) return tail;
  return 9.0 * (r0 + 1.0) * std::log(log_arg) / (c * gap) + tail;
}

double thm1_instance_bound(const BoundInputs& inputs) {
  inputs.validate();
  const double c = c_alpha(inputs.alpha, inputs.D);
  double total = 0.0;
  for (double gap : inputs.gaps) total += thm1_arm_term(gap, inputs.horizon, c, inputs.r0);
  return total;
}

double thm3_arm_term(double gap, std::uint64_t horizon, double c, double r0) {
  return gap * (9.0 * (r0 + 1.0) * std::log(static_cast<double>(horizon)) / (c * gap * gap) +
                (2.0 * r0 + 3.0) / 2.0);
}

double thm3_instance_bound(const BoundInputs& inputs) {
  inputs.validate();
  const double c = c_alpha(inputs.alpha, inputs.D);
  double total = 0.0;
  for (double gap : inputs.gaps) total += thm3_arm_term(gap, inputs.horizon, c, inputs.r0);
  return total;
}

double thm2_gap_threshold(const BoundInputs& inputs) {
  const double k = static_cast<double>(inputs.arms());
  const double t = static_cast<double>(inputs.horizon);
  return std::numbers::e * std::sqrt(k * std::log(k)) /
         std::sqrt(t * c_alpha(inputs.alpha, inputs.D));
}

double thm2_independent_bound(const BoundInputs& inputs) {
  inputs.validate();
  const double c = c_alpha(inputs.alpha, inputs.D);
  const double k = static_cast<double>(inputs.arms());
  const double t = static_cast<double>(inputs.horizon);
  const double threshold = thm2_gap_threshold(inputs);
  const double small_gap = std::numbers::e * std::sqrt(t * k * std::log(k) / c);
  const double large_gap =
      19.0 * (inputs.r0 + 1.0) * std::sqrt(t * std::log(k) / (c * k)) + inputs.r0;
  double total = 0.0;
  for (double gap : inputs.gaps) total += gap <= threshold ? small_gap : large_gap;
  return total;
}

double thm2_envelope_sqrt_term(const BoundInputs& inputs) {
  const double k = static_cast<double>(inputs.arms());
  const double t = static_cast<double>(inputs.horizon);
  return std::sqrt(k * t * std::log(k) / c_alpha(inputs.alpha, inputs.D));
}

double thm2_envelope(const BoundInputs& inputs) {
  return static_cast<double>(inputs.arms()) + thm2_envelope_sqrt_term(inputs);
}

double asymptotic_lower_bound(const BanditInstance& instance) {
  if (instance.family() == Family::kCategorical) {
    throw Error(ErrorCode::kUnsupportedFamily,
                "lower-bound infimum over the simplex is not implemented");
  }
  const RewardModel& best = instance.arms()[instance.best_arm()];
  double total = 0.0;
  for (std::size_t k = 0; k < instance.num_arms(); ++k) {
    if (k == instance.best_arm()) continue;
    const double gap = instance.gaps()[k];
    if (gap <= 0.0) {
      throw Error(ErrorCode::kInvalidInstance, "lower bound needs a unique best arm");
    }
    // For Bernoulli, Gaussian (same variance) and Poisson arms, KL(arm || theta)
    // increases in the mean of theta past the arm's own mean, so the infimum
    // over {mean(theta) > best mean} is attained at the best arm's parameter.
    const RewardModel reference =
        instance.family() == Family::kGaussian
            ? RewardModel::gaussian(best.as<GaussianKnownVar>().mean,
                                    instance.arms()[k].as<GaussianKnownVar>().var)
            : best;
    total += gap / kl_divergence(instance.arms()[k], reference);
  }
  return total;
}

BoundReport bound_report(const BoundInputs& inputs, const BanditInstance* instance) {
  inputs.validate();
  BoundReport report;
  report.alpha = inputs.alpha;
  report.D = inputs.D;
  report.r0 = inputs.r0;
  report.horizon = inputs.horizon;
  report.num_arms = inputs.arms();
  report.c_alpha = c_alpha(inputs.alpha, inputs.D);
  report.thm1_bound = thm1_instance_bound(inputs);
  report.thm2_bound = thm2_independent_bound(inputs);
  report.thm2_envelope_sqrt_term = thm2_envelope_sqrt_term(inputs);
  report.thm2_envelope = thm2_envelope(inputs);
  report.thm3_bound = thm3_instance_bound(inputs);

  const double threshold = thm2_gap_threshold(inputs);
  const double k = static_cast<double>(inputs.arms());
  const double t = static_cast<double>(inputs.horizon);
  const double c = report.c_alpha;
  for (double gap : inputs.gaps) {
    ArmBoundTerms terms;
    terms.gap = gap;
    terms.thm1 = thm1_arm_term(gap, inputs.horizon, c, inputs.r0, &terms.thm1_log_term_dropped);
    terms.thm2_small_gap = gap <= threshold;
    terms.thm2 = terms.thm2_small_gap
                     ? std::numbers::e * std::sqrt(t * k * std::log(k) / c)
                     : 19.0 * (inputs.r0 + 1.0) * std::sqrt(t * std::log(k) / (c * k)) +
                           inputs.r0;
    terms.thm3 = thm3_arm_term(gap, inputs.horizon, c, inputs.r0);
    report.arms.push_back(terms);
  }
  if (instance != nullptr && instance->family() != Family::kCategorical) {
    report.lb_coefficient = asymptotic_lower_bound(*instance);
  }
  return report;
}

PriorMassResult check_prior_mass_b1(const PriorSpec& prior, double theta0, double alpha,
                                    double eps, std::uint64_t n) {
  validate_tempering_alpha(alpha);
  if (!(eps > 0.0)) invalid_argument("eps must be positive");
  const ParameterDomain domain = domain_of(prior.family());
  if (!(theta0 >= domain.lower && theta0 <= domain.upper) || !std::isfinite(theta0)) {
    invalid_argument("theta0 outside the parameter domain");
  }
  (void)model_at(prior, theta0);

  PriorMassResult result;
  const double radius_sq = eps * eps;
  result.ball_lower = ball_endpoint(prior, theta0, radius_sq, -1.0, domain);
  result.ball_upper = ball_endpoint(prior, theta0, radius_sq, +1.0, domain);
  result.lhs = integrate_prior(prior, result.ball_lower, result.ball_upper);
  result.rhs = std::pow(4.0, 1.0 + alpha) * std::exp(-static_cast<double>(n) * radius_sq);
  result.holds = result.lhs >= result.rhs;
  return result;
}

ConcentrationResult verify_concentration(const PriorSpec& prior, const RewardModel& true_model,
                                         double alpha, double nabla, std::uint64_t n,
                                         const MonteCarloSettings& mc, double D) {
  if (prior.family() != true_model.family()) {
    throw Error(ErrorCode::kMixedFamilies, "prior and reward model families differ");
  }
  if (mc.outer < 100 || mc.inner < 1000) {
    invalid_argument("concentration check needs outer >= 100 and inner >= 1000");
  }
  if (!(nabla > 0.0)) invalid_argument("nabla must be positive");
  const double c = c_alpha(alpha, D);
  const double mu0 = mean(true_model);
  const TemperedPosterior start = init_posterior(prior, alpha);

  std::vector<double> fractions(mc.outer, 0.0);
  auto run_dataset = [&](std::uint64_t j) {
    RandomStream rng(derive_seed(mc.seed, j, 0x636f6e63ULL));
    TemperedPosterior post = start;
    for (std::uint64_t i = 0; i < n; ++i) post = update(std::move(post), sample(true_model, rng));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < mc.inner; ++i) {
      if (std::abs(sample_mean(post, rng) - mu0) >= nabla) ++hits;
    }
    fractions[j] = static_cast<double>(hits) / static_cast<double>(mc.inner);
  };

  unsigned threads = mc.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                     : mc.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, mc.outer));
  if (threads <= 1) {
    for (std::uint64_t j = 0; j < mc.outer; ++j) run_dataset(j);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t j = w; j < mc.outer; j += threads) run_dataset(j);
      });
    }
  }

  ConcentrationResult result;
  double sum = 0.0;
  for (double f : fractions) sum += f;
  const double outer = static_cast<double>(mc.outer);
  result.empirical = sum / outer;
  double ss = 0.0;
  for (double f : fractions) ss += (f - result.empirical) * (f - result.empirical);
  result.std_error = std::sqrt(ss / (outer - 1.0) / outer);
  result.bound = 0.5 * std::exp(-c * static_cast<double>(n) * nabla * nabla);
  result.holds = result.empirical <= result.bound + 3.0 * result.std_error;
  return result;
}

LogFit fit_log_growth(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) invalid_argument("need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) invalid_argument("log fit needs positive x");
    sx += std::log(x[i]);
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) invalid_argument("log fit needs distinct x");
  LogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace alpha_bandits
