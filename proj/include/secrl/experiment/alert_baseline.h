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

#ifndef SECRL_EXPERIMENT_ALERT_BASELINE_H_
#define SECRL_EXPERIMENT_ALERT_BASELINE_H_

#include <span>
#include <vector>

#include "secrl/core/strategy.h"

namespace secrl::experiment {

enum Priority : int { kVeryLow = 0, kLow = 1, kMedium = 2, kHigh = 3 };

// Cut-point i is the smallest alert count whose cumulative safe-state
// probability reaches quantiles[i]; quantiles must be increasing in (0, 1).
std::vector<int> PriorityCutpoints(std::span<const double> safe_distribution,
                                   const std::vector<double>& quantiles = {0.5, 0.9, 0.99});

// Number of cut-points the count strictly exceeds: 0 = very low ... 3 = high.
int AlertPriority(int count, std::span<const int> cutpoints);

// Recovery rule on the latest per-replica alert counts: recover replica l iff
// its priority is at least `threshold`. Before the first observation it
// recovers nothing. Actions are recovery bitmasks (bit l = replica l).
class AlertBaselineStrategy final : public Strategy {
 public:
  AlertBaselineStrategy(int replicas, int counts_per_replica, std::vector<int> cutpoints,
                        int threshold = kMedium);

  StrategyKind kind() const override { return StrategyKind::kLookupOnHistoryFeature; }
  int num_actions() const override { return 1 << replicas_; }
  std::vector<double> parameters() const override;
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;

  // Action for explicit per-replica priorities.
  int ActionForPriorities(std::span<const int> priorities) const;
  int ActionForObservation(int joint_observation) const;

 private:
  int replicas_;
  int per_replica_;
  std::vector<int> cutpoints_;
  int threshold_;
};

}  // namespace secrl::experiment

#endif  // SECRL_EXPERIMENT_ALERT_BASELINE_H_
