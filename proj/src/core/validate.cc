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

#include "secrl/core/validate.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace secrl {

std::string ViolationKindName(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kTransitionRowSum: return "transition_row_sum";
    case Violation::Kind::kNegativeTransition: return "negative_transition";
    case Violation::Kind::kSuccessorOutOfRange: return "successor_out_of_range";
    case Violation::Kind::kObservationRowSum: return "observation_row_sum";
    case Violation::Kind::kNegativeObservation: return "negative_observation";
    case Violation::Kind::kInitialBeliefSum: return "initial_belief_sum";
    case Violation::Kind::kNegativeInitialBelief: return "negative_initial_belief";
    case Violation::Kind::kTerminalNotAbsorbing: return "terminal_not_absorbing";
    case Violation::Kind::kTerminalReward: return "terminal_reward";
    case Violation::Kind::kInvalidDiscount: return "invalid_discount";
  }
  return "unknown";
}

std::string ValidationReport::ToString() const {
  if (ok()) return "kernel valid";
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << ViolationKindName(v.kind) << " at (";
    for (std::size_t i = 0; i < v.index.size(); ++i) {
      if (i) os << ", ";
      os << v.index[i];
    }
    os << ") deviation " << v.deviation << "\n";
  }
  return os.str();
}

ValidationReport ValidateKernel(const ModelKernel& kernel, double tolerance) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::vector<int> index, double dev) {
    report.violations.push_back({kind, std::move(index), dev});
  };
  const int ns = kernel.num_states();
  const int nd = kernel.num_defender_actions();
  const int na = kernel.num_attacker_actions();

  const double gamma = kernel.discount();
  if (!(gamma >= 0.0 && gamma < 1.0)) add(Violation::Kind::kInvalidDiscount, {}, gamma);

  for (int s = 0; s < ns; ++s) {
    for (int d = 0; d < nd; ++d) {
      for (int a = 0; a < na; ++a) {
        double sum = 0.0;
        double most_negative = 0.0;
        bool out_of_range = false;
        for (const Successor& e : kernel.Transitions(s, d, a)) {
          sum += e.prob;
          most_negative = std::min(most_negative, e.prob);
          if (e.next < 0 || e.next >= ns) out_of_range = true;
        }
        if (std::abs(sum - 1.0) > tolerance) {
          add(Violation::Kind::kTransitionRowSum, {s, d, a}, std::abs(sum - 1.0));
        }
        if (most_negative < 0.0) {
          add(Violation::Kind::kNegativeTransition, {s, d, a}, -most_negative);
        }
        if (out_of_range) add(Violation::Kind::kSuccessorOutOfRange, {s, d, a}, 0.0);
      }
    }
  }

  if (!kernel.fully_observed()) {
    for (int s = 0; s < ns; ++s) {
      double sum = 0.0;
      double most_negative = 0.0;
      for (double p : kernel.ObservationRow(s)) {
        sum += p;
        most_negative = std::min(most_negative, p);
      }
      if (std::abs(sum - 1.0) > tolerance) {
        add(Violation::Kind::kObservationRowSum, {s}, std::abs(sum - 1.0));
      }
      if (most_negative < 0.0) add(Violation::Kind::kNegativeObservation, {s}, -most_negative);
    }
  }

  double b_sum = 0.0;
  const auto& b1 = kernel.initial_belief();
  for (int s = 0; s < ns; ++s) {
    b_sum += b1[s];
    if (b1[s] < 0.0) add(Violation::Kind::kNegativeInitialBelief, {s}, -b1[s]);
  }
  if (std::abs(b_sum - 1.0) > tolerance) {
    add(Violation::Kind::kInitialBeliefSum, {}, std::abs(b_sum - 1.0));
  }

  for (int t : kernel.terminal_states()) {
    for (int d = 0; d < nd; ++d) {
      for (int a = 0; a < na; ++a) {
        double self = 0.0;
        for (const Successor& e : kernel.Transitions(t, d, a)) {
          if (e.next == t) self += e.prob;
        }
        if (std::abs(self - 1.0) > tolerance) {
          add(Violation::Kind::kTerminalNotAbsorbing, {t, d, a}, std::abs(self - 1.0));
        }
        double r = kernel.Reward(t, d, a);
        if (r != 0.0) add(Violation::Kind::kTerminalReward, {t, d, a}, std::abs(r));
      }
    }
  }
  return report;
}

}  // namespace secrl
