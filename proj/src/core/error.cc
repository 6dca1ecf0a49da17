// Copyright 2026 The Secrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "secrl/core/error.h"

namespace secrl {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDimensionCap: return "DimensionCap";
    case ErrorCode::kInvalidBelief: return "InvalidBelief";
    case ErrorCode::kZeroLikelihood: return "ZeroLikelihood";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInvalidDiscount: return "InvalidDiscount";
    case ErrorCode::kFileFormat: return "FileFormat";
    case ErrorCode::kNegativeCount: return "NegativeCount";
    case ErrorCode::kEmptyStratum: return "EmptyStratum";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kUnknownModel: return "UnknownModel";
    case ErrorCode::kInvalidStrategy: return "InvalidStrategy";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kSessionDone: return "SessionDone";
    case ErrorCode::kIllegalAction: return "IllegalAction";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kRewardMismatch: return "RewardMismatch";
  }
  return "Unknown";
}

}  // namespace secrl
