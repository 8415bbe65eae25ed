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
#include <random>
#include <span>

namespace alpha_bandits {

/// splitmix64 finalizer: a bijective 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `(a, b)` derived from `base`. Depends only on its
/// arguments, so results never depend on which thread runs which replicate.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return mix64(mix64(mix64(base) ^ (a + 0x632be59bd9b4e019ULL)) ^
               (b + 0x85157af5ULL));
}

/// Deterministic random stream. All variate generators below are written
/// out explicitly (no std::*_distribution) so that a given seed yields the
/// same draws on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1); safe to take the log of.
  double uniform_open();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma(shape, 1) via Marsaglia-Tsang, with the U^(1/shape) boost for
  /// shape < 1.
  double gamma(double shape);
  double beta(double a, double b);
  std::uint64_t poisson(double rate);
  /// Index drawn from the (unnormalized) weights by inverse CDF.
  std::size_t categorical(std::span<const double> weights);

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace alpha_bandits
