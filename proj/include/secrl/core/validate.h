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

#ifndef SECRL_CORE_VALIDATE_H_
#define SECRL_CORE_VALIDATE_H_

#include <string>
#include <vector>

#include "secrl/core/kernel.h"

namespace secrl {

inline constexpr double kStochasticTolerance = 1e-9;

struct Violation {
  enum class Kind {
    kTransitionRowSum,
    kNegativeTransition,
    kSuccessorOutOfRange,
    kObservationRowSum,
    kNegativeObservation,
    kInitialBeliefSum,
    kNegativeInitialBelief,
    kTerminalNotAbsorbing,
    kTerminalReward,
    kInvalidDiscount,
  };
  Kind kind;
  // (s, d, a) for transition rows, (s) for observation rows and terminals,
  // (s) for initial-belief entries, empty for kernel-wide checks.
  std::vector<int> index;
  double deviation = 0.0;
};

std::string ViolationKindName(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

// Lists every violated kernel invariant. Never throws.
ValidationReport ValidateKernel(const ModelKernel& kernel,
                                double tolerance = kStochasticTolerance);

}  // namespace secrl

#endif  // SECRL_CORE_VALIDATE_H_
