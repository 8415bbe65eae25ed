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

#include <iosfwd>
#include <span>
#include <string>

namespace alpha_bandits::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Entry point behind the `alpha-bandits` executable. `args` excludes the
/// program name. Subcommands: simulate, bounds, concentration, divergence,
/// prior-mass.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Thread count from --threads, else ALPHA_BANDITS_THREADS, else 0 (auto).
unsigned resolve_threads(int flag_value);

}  // namespace alpha_bandits::cli
