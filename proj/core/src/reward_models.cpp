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

#include "alpha_bandits/reward_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kOracleTolerance = 1e-8;
constexpr double kTruncationSigmas = 12.0;

bool close(double x, double y) { return std::abs(x - y) <= kParameterTolerance; }

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidModel, what);
}

void require_same_family(const RewardModel& a, const RewardModel& b) {
  if (a.family() != b.family()) {
    throw Error(ErrorCode::kMixedFamilies,
                std::string(to_string(a.family())) + " vs " +
                    std::string(to_string(b.family())));
  }
}

// The two discrete families share one code path over (p, q) mass vectors.
struct MassPair {
  std::vector<double> p;
  std::vector<double> q;
};

MassPair discrete_masses(const RewardModel& a, const RewardModel& b) {
  if (a.family() == Family::kBernoulli) {
    const double p = a.as<Bernoulli>().p;
    const double q = b.as<Bernoulli>().p;
    return {{1.0 - p, p}, {1.0 - q, q}};
  }
  const auto& ca = a.as<Categorical>();
  const auto& cb = b.as<Categorical>();
  if (ca.support.size() != cb.support.size() ||
      !std::equal(ca.support.begin(), ca.support.end(), cb.support.begin(), close)) {
    throw Error(ErrorCode::kMixedFamilies, "categorical models with different supports");
  }
  return {ca.probs, cb.probs};
}

double discrete_renyi(const MassPair& m, double alpha) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.p.size(); ++i) {
    const double p = m.p[i];
    const double q = m.q[i];
    if (p == 0.0) continue;
    if (q == 0.0) {
      if (alpha >= 1.0) {
        throw Error(ErrorCode::kDivergenceInfinite,
                    "model places mass where the reference has none");
      }
      continue;
    }
    sum += std::exp(alpha * std::log(p) + (1.0 - alpha) * std::log(q));
  }
  if (sum <= 0.0) {
    throw Error(ErrorCode::kDivergenceInfinite, "mutually singular models");
  }
  return std::max(0.0, std::log(sum) / (alpha - 1.0));
}

double discrete_kl(const MassPair& m) {
  double kl = 0.0;
  for (std::size_t i = 0; i < m.p.size(); ++i) {
    const double p = m.p[i];
    const double q = m.q[i];
    if (p == 0.0) continue;
    if (q == 0.0) {
      throw Error(ErrorCode::kDivergenceInfinite,
                  "model places mass where the reference has none");
    }
    kl += p * std::log(p / q);
  }
  return std::max(0.0, kl);
}

// Gaussian case allows unequal known variances; it reduces to
// alpha (mu_a - mu_b)^2 / (2 sigma^2) when they agree.
double gaussian_renyi(const GaussianKnownVar& a, const GaussianKnownVar& b,
                      double alpha) {
  const double mixed_var = alpha * b.var + (1.0 - alpha) * a.var;
  if (mixed_var <= 0.0) {
    throw Error(ErrorCode::kDivergenceInfinite,
                "tilted Gaussian integrand is not integrable at this order");
  }
  const double dm = a.mean - b.mean;
  const double quad = alpha * dm * dm / (2.0 * mixed_var);
  const double log_term =
      (std::log(mixed_var) - (1.0 - alpha) * std::log(a.var) - alpha * std::log(b.var)) /
      (2.0 * (1.0 - alpha));
  return std::max(0.0, quad + log_term);
}

double gaussian_kl(const GaussianKnownVar& a, const GaussianKnownVar& b) {
  const double dm = a.mean - b.mean;
  return std::max(0.0, 0.5 * std::log(b.var / a.var) +
                           (a.var + dm * dm) / (2.0 * b.var) - 0.5);
}

// Natural parameter theta = log(rate), log-partition A(theta) = exp(theta):
// D_alpha = [alpha A(th_a) + (1-alpha) A(th_b) - A(alpha th_a + (1-alpha) th_b)] / (1-alpha).
double poisson_renyi(double rate_a, double rate_b, double alpha) {
  const double theta_a = std::log(rate_a);
  const double theta_b = std::log(rate_b);
  const double a_mix = std::exp(alpha * theta_a + (1.0 - alpha) * theta_b);
  return std::max(0.0, (alpha * rate_a + (1.0 - alpha) * rate_b - a_mix) / (1.0 - alpha));
}

double poisson_kl(double rate_a, double rate_b) {
  return std::max(0.0, rate_a * std::log(rate_a / rate_b) - rate_a + rate_b);
}

double gaussian_log_density(double x, const GaussianKnownVar& g) {
  const double z = x - g.mean;
  return -0.5 * (kLog2Pi + std::log(g.var) + z * z / g.var);
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kBernoulli: return "bernoulli";
    case Family::kCategorical: return "categorical";
    case Family::kGaussian: return "gaussian";
    case Family::kPoisson: return "poisson";
  }
  return "unknown";
}

RewardModel RewardModel::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) invalid("Bernoulli p must lie in [0, 1]");
  return RewardModel(Bernoulli{p});
}

RewardModel RewardModel::categorical(std::vector<double> probs) {
  std::vector<double> support(probs.size());
  std::iota(support.begin(), support.end(), 0.0);
  return categorical(std::move(probs), std::move(support));
}

RewardModel RewardModel::categorical(std::vector<double> probs,
                                     std::vector<double> support) {
  if (probs.empty()) invalid("categorical model needs at least one category");
  if (probs.size() != support.size()) invalid("probs and support lengths differ");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) invalid("categorical probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > kParameterTolerance) {
    invalid("categorical probabilities must sum to 1");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) invalid("support values must be finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (close(support[i], support[j])) invalid("support values must be distinct");
    }
  }
  return RewardModel(Categorical{std::move(probs), std::move(support)});
}

RewardModel RewardModel::gaussian(double mean, double var) {
  if (!std::isfinite(mean)) invalid("Gaussian mean must be finite");
  if (!(var > 0.0) || !std::isfinite(var)) invalid("Gaussian variance must be positive");
  return RewardModel(GaussianKnownVar{mean, var});
}

RewardModel RewardModel::poisson(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) invalid("Poisson rate must be positive");
  return RewardModel(Poisson{rate});
}

double mean(const RewardModel& model) {
  switch (model.family()) {
    case Family::kBernoulli: return model.as<Bernoulli>().p;
    case Family::kCategorical: {
      const auto& c = model.as<Categorical>();
      return std::inner_product(c.probs.begin(), c.probs.end(), c.support.begin(), 0.0);
    }
    case Family::kGaussian: return model.as<GaussianKnownVar>().mean;
    case Family::kPoisson: return model.as<Poisson>().rate;
  }
  return 0.0;
}

double variance(const RewardModel& model) {
  switch (model.family()) {
    case Family::kBernoulli: {
      const double p = model.as<Bernoulli>().p;
      return p * (1.0 - p);
    }
    case Family::kCategorical: {
      const auto& c = model.as<Categorical>();
      const double mu = mean(model);
      double v = 0.0;
      for (std::size_t i = 0; i < c.probs.size(); ++i) {
        v += c.probs[i] * (c.support[i] - mu) * (c.support[i] - mu);
      }
      return v;
    }
    case Family::kGaussian: return model.as<GaussianKnownVar>().var;
    case Family::kPoisson: return model.as<Poisson>().rate;
  }
  return 0.0;
}

double sample(const RewardModel& model, RandomStream& rng) {
  switch (model.family()) {
    case Family::kBernoulli: return rng.uniform() < model.as<Bernoulli>().p ? 1.0 : 0.0;
    case Family::kCategorical: {
      const auto& c = model.as<Categorical>();
      return c.support[rng.categorical(c.probs)];
    }
    case Family::kGaussian: {
      const auto& g = model.as<GaussianKnownVar>();
      return rng.normal(g.mean, std::sqrt(g.var));
    }
    case Family::kPoisson:
      return static_cast<double>(rng.poisson(model.as<Poisson>().rate));
  }
  return 0.0;
}

bool parameters_equal(const RewardModel& a, const RewardModel& b) {
  if (a.family() != b.family()) return false;
  switch (a.family()) {
    case Family::kBernoulli: return close(a.as<Bernoulli>().p, b.as<Bernoulli>().p);
    case Family::kCategorical: {
      const auto& ca = a.as<Categorical>();
      const auto& cb = b.as<Categorical>();
      return ca.probs.size() == cb.probs.size() &&
             std::equal(ca.probs.begin(), ca.probs.end(), cb.probs.begin(), close) &&
             std::equal(ca.support.begin(), ca.support.end(), cb.support.begin(), close);
    }
    case Family::kGaussian: {
      const auto& ga = a.as<GaussianKnownVar>();
      const auto& gb = b.as<GaussianKnownVar>();
      return close(ga.mean, gb.mean) && close(ga.var, gb.var);
    }
    case Family::kPoisson: return close(a.as<Poisson>().rate, b.as<Poisson>().rate);
  }
  return false;
}

DivergenceOrder::DivergenceOrder(double alpha) : alpha_(alpha) {
  const bool tempering = alpha > 0.0 && alpha <= 1.0;
  if (!tempering && alpha != 2.0) {
    throw Error(ErrorCode::kInvalidAlpha,
                "divergence order must lie in (0, 1] or equal 2, got " + std::to_string(alpha));
  }
}

double renyi_divergence(const RewardModel& a, const RewardModel& b,
                        DivergenceOrder order) {
  require_same_family(a, b);
  const double alpha = order.value();
  if (alpha == 1.0) return kl_divergence(a, b);
  switch (a.family()) {
    case Family::kBernoulli:
    case Family::kCategorical: return discrete_renyi(discrete_masses(a, b), alpha);
    case Family::kGaussian:
      return gaussian_renyi(a.as<GaussianKnownVar>(), b.as<GaussianKnownVar>(), alpha);
    case Family::kPoisson:
      return poisson_renyi(a.as<Poisson>().rate, b.as<Poisson>().rate, alpha);
  }
  return kInf;
}

double kl_divergence(const RewardModel& a, const RewardModel& b) {
  require_same_family(a, b);
  switch (a.family()) {
    case Family::kBernoulli:
    case Family::kCategorical: return discrete_kl(discrete_masses(a, b));
    case Family::kGaussian:
      return gaussian_kl(a.as<GaussianKnownVar>(), b.as<GaussianKnownVar>());
    case Family::kPoisson: return poisson_kl(a.as<Poisson>().rate, b.as<Poisson>().rate);
  }
  return kInf;
}

double renyi_quadrature_oracle(const RewardModel& a, const RewardModel& b,
                               DivergenceOrder order) {
  require_same_family(a, b);
  if (a.family() != Family::kGaussian) {
    throw Error(ErrorCode::kUnsupportedFamily,
                "quadrature oracle covers continuous families only");
  }
  const double alpha = order.value();
  if (alpha == 1.0) {
    throw Error(ErrorCode::kInvalidAlpha, "quadrature oracle needs alpha != 1");
  }
  const auto& ga = a.as<GaussianKnownVar>();
  const auto& gb = b.as<GaussianKnownVar>();

  // The integrand p_a^alpha p_b^(1-alpha) is an unnormalized Gaussian with
  // precision alpha/var_a + (1-alpha)/var_b; order 2 can make it diverge.
  const double tilted_precision = alpha / ga.var + (1.0 - alpha) / gb.var;
  if (tilted_precision <= 0.0) {
    throw Error(ErrorCode::kDivergenceInfinite,
                "tilted Gaussian integrand is not integrable at this order");
  }
  const double tilted_var = 1.0 / tilted_precision;
  const double tilted_mean =
      tilted_var * (alpha * ga.mean / ga.var + (1.0 - alpha) * gb.mean / gb.var);

  double lo = std::min(ga.mean - kTruncationSigmas * std::sqrt(ga.var),
                       gb.mean - kTruncationSigmas * std::sqrt(gb.var));
  double hi = std::max(ga.mean + kTruncationSigmas * std::sqrt(ga.var),
                       gb.mean + kTruncationSigmas * std::sqrt(gb.var));
  lo = std::min(lo, tilted_mean - kTruncationSigmas * std::sqrt(tilted_var));
  hi = std::max(hi, tilted_mean + kTruncationSigmas * std::sqrt(tilted_var));

  auto integrand = [&](double x) {
    return std::exp(alpha * gaussian_log_density(x, ga) +
                    (1.0 - alpha) * gaussian_log_density(x, gb));
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, lo, hi, 20, 1e-14, &error);
  if (!(integral > 0.0) || !(error <= kOracleTolerance * integral)) {
    throw Error(ErrorCode::kQuadratureDidNotConverge,
                "relative error estimate " + std::to_string(error / integral));
  }
  return std::max(0.0, std::log(integral) / (alpha - 1.0));
}

}  // namespace alpha_bandits
