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

#include "alpha_bandits/error.hpp"

namespace alpha_bandits {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kInvalidPrior: return "InvalidPrior";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMixedFamilies: return "MixedFamilies";
    case ErrorCode::kDivergenceInfinite: return "DivergenceInfinite";
    case ErrorCode::kQuadratureDidNotConverge: return "QuadratureDidNotConverge";
    case ErrorCode::kRewardOutOfSupport: return "RewardOutOfSupport";
    case ErrorCode::kNotWarmStarted: return "NotWarmStarted";
    case ErrorCode::kArmOutOfRange: return "ArmOutOfRange";
    case ErrorCode::kMixedHorizons: return "MixedHorizons";
    case ErrorCode::kUnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::kBallUnresolvable: return "BallUnresolvable";
    case ErrorCode::kConfigParseError: return "ConfigParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace alpha_bandits
