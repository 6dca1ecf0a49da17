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

#ifndef SECRL_CORE_STRATEGY_H_
#define SECRL_CORE_STRATEGY_H_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "secrl/core/kernel.h"

namespace secrl {

// What a player knows when choosing an action. Fields the player cannot see
// are left at their defaults.
struct InfoState {
  int state = -1;
  std::span<const double> belief;
  int observation = -1;
  int time = 1;
};

enum class StrategyKind {
  kTabularOnState,
  kThresholdOnBelief,
  kParametricStochastic,
  kLookupOnHistoryFeature,
};

std::string_view StrategyKindName(StrategyKind kind);

class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual StrategyKind kind() const = 0;
  virtual int num_actions() const = 0;
  virtual std::vector<double> parameters() const = 0;

  // Writes a distribution over actions into `out` (size num_actions()).
  virtual void ActionProbabilities(const InfoState& info, std::span<double> out) const = 0;
  std::vector<double> ActionProbabilities(const InfoState& info) const;

  // True when the distribution depends on InfoState::state only, which is
  // what exact dynamic programming needs.
  virtual bool IsStateBased() const { return false; }
  virtual bool NeedsBelief() const { return false; }
};

using StrategyPtr = std::shared_ptr<const Strategy>;

// Per-state action distributions, stored row-major |S| x |A|.
class TabularStrategy final : public Strategy {
 public:
  TabularStrategy(int num_states, int num_actions, std::vector<double> table);

  static TabularStrategy Uniform(int num_states, int num_actions);
  static TabularStrategy Deterministic(std::span<const int> actions, int num_actions);
  // Uniform over the attacker actions the kernel marks feasible in each state.
  static TabularStrategy UniformFeasibleAttacker(const ModelKernel& kernel);
  // Tabulates a state-based strategy.
  static TabularStrategy FromStrategy(const Strategy& strategy, int num_states);

  StrategyKind kind() const override { return StrategyKind::kTabularOnState; }
  int num_actions() const override { return num_actions_; }
  std::vector<double> parameters() const override { return table_; }
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;
  bool IsStateBased() const override { return true; }

  int num_states() const { return num_states_; }
  std::span<const double> Row(int s) const {
    return {table_.data() + static_cast<std::size_t>(s) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }
  std::span<double> MutableRow(int s) {
    return {table_.data() + static_cast<std::size_t>(s) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }
  const std::vector<double>& table() const { return table_; }

  // In-place running average: this <- (1 - w) * this + w * other.
  void BlendToward(const TabularStrategy& other, double w);

 private:
  int num_states_;
  int num_actions_;
  std::vector<double> table_;
};

// Stops iff the belief mass on the intrusion states strictly exceeds alpha.
class ThresholdStrategy final : public Strategy {
 public:
  ThresholdStrategy(double alpha, std::vector<char> intrusion_states, int stop_action,
                    int continue_action, int num_actions);

  StrategyKind kind() const override { return StrategyKind::kThresholdOnBelief; }
  int num_actions() const override { return num_actions_; }
  std::vector<double> parameters() const override { return {alpha_}; }
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;
  bool NeedsBelief() const override { return true; }

  double alpha() const { return alpha_; }
  double IntrusionMass(std::span<const double> belief) const;

 private:
  double alpha_;
  std::vector<char> intrusion_states_;
  int stop_action_;
  int continue_action_;
  int num_actions_;
};

// Always plays the same distribution, whatever the information state.
class FixedStrategy final : public Strategy {
 public:
  explicit FixedStrategy(std::vector<double> probs);
  static FixedStrategy Pure(int action, int num_actions);

  StrategyKind kind() const override { return StrategyKind::kTabularOnState; }
  int num_actions() const override { return static_cast<int>(probs_.size()); }
  std::vector<double> parameters() const override { return probs_; }
  void ActionProbabilities(const InfoState& info, std::span<double> out) const override;
  bool IsStateBased() const override { return true; }

 private:
  std::vector<double> probs_;
};

// Dense |S| x |A| table for a state-based strategy; throws InvalidStrategy
// otherwise.
std::vector<double> StateActionTable(const Strategy& strategy, int num_states);

// Samples an action for the given information state.
int SampleAction(const Strategy& strategy, const InfoState& info, Rng& rng);

}  // namespace secrl

#endif  // SECRL_CORE_STRATEGY_H_
