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

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "alpha_bandits/simulator.hpp"

namespace alpha_bandits::cli {

/// Shortest round-trip decimal form; locale independent.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

/// Header `algorithm,alpha,replicate,t,cum_regret`, one row per
/// (trace, round), t starting at 1. LF line endings.
void write_traces_csv(std::ostream& out, std::span<const RegretTrace> traces);

/// Header `algorithm,alpha,t,p10,p50,p90`; groups must carry exactly those
/// three percentiles.
void write_summary_csv(std::ostream& out, std::span<const GroupSummary> groups);

}  // namespace alpha_bandits::cli
