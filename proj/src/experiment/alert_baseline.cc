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

#include "secrl/experiment/alert_baseline.h"

#include <algorithm>
#include <string>

#include "secrl/core/error.h"
#include "secrl/usecases/recovery.h"

namespace secrl::experiment {

std::vector<int> PriorityCutpoints(std::span<const double> safe_distribution,
                                   const std::vector<double>& quantiles) {
  if (safe_distribution.empty()) Fail(ErrorCode::kInvalidConfig, "empty safe distribution");
  double prev = 0.0;
  for (double q : quantiles) {
    if (!(q > prev && q < 1.0)) {
      Fail(ErrorCode::kInvalidConfig, "quantiles: must be increasing in (0, 1)");
    }
    prev = q;
  }
  std::vector<int> cuts;
  for (double q : quantiles) {
    double cdf = 0.0;
    int o = 0;
    const int last = static_cast<int>(safe_distribution.size()) - 1;
    for (; o < last; ++o) {
      cdf += safe_distribution[o];
      if (cdf >= q - 1e-12) break;
    }
    cuts.push_back(o);
  }
  return cuts;
}

int AlertPriority(int count, std::span<const int> cutpoints) {
  int p = 0;
  for (int c : cutpoints) p += count > c ? 1 : 0;
  return p;
}

AlertBaselineStrategy::AlertBaselineStrategy(int replicas, int counts_per_replica,
                                             std::vector<int> cutpoints, int threshold)
    : replicas_(replicas),
      per_replica_(counts_per_replica),
      cutpoints_(std::move(cutpoints)),
      threshold_(threshold) {
  if (replicas_ < 1 || replicas_ > 20) Fail(ErrorCode::kInvalidConfig, "replicas: out of range");
  if (per_replica_ < 1) Fail(ErrorCode::kInvalidConfig, "counts_per_replica: must be >= 1");
  if (!std::is_sorted(cutpoints_.begin(), cutpoints_.end())) {
    Fail(ErrorCode::kInvalidConfig, "cutpoints: must be nondecreasing");
  }
}

std::vector<double> AlertBaselineStrategy::parameters() const {
  std::vector<double> p(cutpoints_.begin(), cutpoints_.end());
  p.push_back(threshold_);
  return p;
}

int AlertBaselineStrategy::ActionForPriorities(std::span<const int> priorities) const {
  if (static_cast<int>(priorities.size()) != replicas_) {
    Fail(ErrorCode::kShapeMismatch, "expected " + std::to_string(replicas_) + " priorities");
  }
  int a = 0;
  for (int l = 0; l < replicas_; ++l) {
    if (priorities[l] >= threshold_) a |= 1 << l;
  }
  return a;
}

int AlertBaselineStrategy::ActionForObservation(int joint_observation) const {
  std::vector<int> pr(replicas_);
  for (int l = 0; l < replicas_; ++l) {
    pr[l] = AlertPriority(recovery::ReplicaObservation(joint_observation, l, per_replica_),
                          cutpoints_);
  }
  return ActionForPriorities(pr);
}

void AlertBaselineStrategy::ActionProbabilities(const InfoState& info,
                                                std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  out[info.observation < 0 ? 0 : ActionForObservation(info.observation)] = 1.0;
}

}  // namespace secrl::experiment
