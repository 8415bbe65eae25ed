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

#include "alpha_bandits/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alpha_bandits {

namespace {
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Inversion is exact and cheap below this rate; larger rates are split.
constexpr double kPoissonChunk = 30.0;
}  // namespace

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
}

double RandomStream::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

double RandomStream::normal() {
  // Box-Muller, cosine branch only.
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RandomStream::gamma(double shape) {
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::uint64_t RandomStream::poisson(double rate) {
  std::uint64_t total = 0;
  while (rate > 0.0) {
    const double chunk = std::min(rate, kPoissonChunk);
    rate -= chunk;
    // Sequential-search inversion.
    const double u = uniform();
    double p = std::exp(-chunk);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= chunk / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) break;
      cdf = next;
    }
    total += k;
  }
  return total;
}

std::size_t RandomStream::categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double u = uniform() * total;
  double cdf = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cdf += weights[i];
    if (u < cdf) return i;
  }
  // Round-off: fall back to the last index with positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace alpha_bandits
