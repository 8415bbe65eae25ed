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

#include "alpha_bandits/cli/csv.hpp"

#include <charconv>
#include <cmath>

#include "alpha_bandits/error.hpp"

namespace alpha_bandits::cli {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "unformattable number");
  return std::string(buf, end);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

void write_traces_csv(std::ostream& out, std::span<const RegretTrace> traces) {
  out << "algorithm,alpha,replicate,t,cum_regret\n";
  std::string prefix;
  for (const auto& trace : traces) {
    prefix = trace.algorithm + "," + format_optional(trace.alpha) + "," +
             std::to_string(trace.replicate_id) + ",";
    for (std::size_t t = 0; t < trace.cum_regret.size(); ++t) {
      out << prefix << (t + 1) << ',' << format_number(trace.cum_regret[t]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, std::span<const GroupSummary> groups) {
  out << "algorithm,alpha,t,p10,p50,p90\n";
  for (const auto& group : groups) {
    if (group.curves.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, "summary needs the 10/50/90 percentile curves");
    }
    const std::string prefix = group.algorithm + "," + format_optional(group.alpha) + ",";
    for (std::size_t t = 0; t < group.curves[0].size(); ++t) {
      out << prefix << (t + 1) << ',' << format_number(group.curves[0][t]) << ','
          << format_number(group.curves[1][t]) << ',' << format_number(group.curves[2][t])
          << '\n';
    }
  }
}

}  // namespace alpha_bandits::cli
