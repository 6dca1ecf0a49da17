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

#ifndef SECRL_LEARNING_ROLLOUT_H_
#define SECRL_LEARNING_ROLLOUT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/random.h"
#include "secrl/core/strategy.h"

namespace secrl {

struct RolloutParams {
  int rollout_horizon = 20;
  int lookahead_horizon = 1;
  int mc_samples = 20;
  uint64_t seed = 0;

  void Validate() const;
  static RolloutParams FromJson(const nlohmann::json& doc);
};

// Monte-Carlo Q estimates for every defender action at `belief`: sample a
// state, apply the action (lookahead levels recurse over all actions), then
// follow `base` for rollout_horizon steps. The attacker plays `attacker`.
std::vector<double> RolloutQ(const ModelKernel& kernel, const Strategy& base,
                             const Strategy& attacker, std::span<const double> belief,
                             const RolloutParams& params, Rng& rng);

// Argmax of RolloutQ with lowest-index tie-break.
int RolloutAction(const ModelKernel& kernel, const Strategy& base, const Strategy& attacker,
                  std::span<const double> belief, const RolloutParams& params, Rng& rng);

// Online rollout policy over beliefs. Randomness is derived from the seed,
// the time step and the belief, so the policy is a deterministic function of
// the information state.
class RolloutStrategy final : public Strategy {
 public:
  RolloutStrategy(const ModelKernel& kernel, const Strategy& base, const Strategy& attacker,
                  RolloutParams params)
      : kernel_(kernel), base_(base), attacker_(attacker), params_(params) {
    params_.Validate();
  }

  StrategyKind kind() const override { return StrategyKind::kLookupOnHistoryFeature; }
  int num_actions() const override { return kernel_.num_defender_actions(); }
  std::vector<double> parameters() const override { return {}; }
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;
  bool NeedsBelief() const override { return true; }

 private:
  const ModelKernel& kernel_;
  const Strategy& base_;
  const Strategy& attacker_;
  RolloutParams params_;
};

// Exact one-step rollout on a fully observed kernel: greedy with respect to
// the base strategy's value function (ties to the lowest index).
TabularStrategy ExactRolloutPolicy(const ModelKernel& kernel, const Strategy& base,
                                   const Strategy& attacker);

}  // namespace secrl

#endif  // SECRL_LEARNING_ROLLOUT_H_
