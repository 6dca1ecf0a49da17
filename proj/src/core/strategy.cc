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

#include "secrl/core/strategy.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "secrl/core/error.h"

namespace secrl {

std::string_view StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kTabularOnState: return "tabular-on-state";
    case StrategyKind::kThresholdOnBelief: return "threshold-on-belief";
    case StrategyKind::kParametricStochastic: return "parametric-stochastic";
    case StrategyKind::kLookupOnHistoryFeature: return "lookup-on-history-feature";
  }
  return "unknown";
}

std::vector<double> Strategy::ActionProbabilities(const InfoState& info) const {
  std::vector<double> out(num_actions());
  ActionProbabilities(info, out);
  return out;
}

TabularStrategy::TabularStrategy(int num_states, int num_actions, std::vector<double> table)
    : num_states_(num_states), num_actions_(num_actions), table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(num_states) * num_actions) {
    Fail(ErrorCode::kInvalidStrategy, "tabular strategy has " + std::to_string(table_.size()) +
                                          " entries, expected " +
                                          std::to_string(num_states * num_actions));
  }
  for (int s = 0; s < num_states_; ++s) {
    double sum = 0.0;
    for (double p : Row(s)) {
      if (p < 0.0) Fail(ErrorCode::kInvalidStrategy, "negative probability in state " + std::to_string(s));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      Fail(ErrorCode::kInvalidStrategy, "row " + std::to_string(s) + " sums to " + std::to_string(sum));
    }
  }
}

TabularStrategy TabularStrategy::Uniform(int num_states, int num_actions) {
  return TabularStrategy(num_states, num_actions,
                         std::vector<double>(static_cast<std::size_t>(num_states) * num_actions,
                                             1.0 / num_actions));
}

TabularStrategy TabularStrategy::Deterministic(std::span<const int> actions, int num_actions) {
  std::vector<double> table(actions.size() * num_actions, 0.0);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    if (actions[s] < 0 || actions[s] >= num_actions) {
      Fail(ErrorCode::kInvalidStrategy, "action index out of range");
    }
    table[s * num_actions + actions[s]] = 1.0;
  }
  return TabularStrategy(static_cast<int>(actions.size()), num_actions, std::move(table));
}

TabularStrategy TabularStrategy::UniformFeasibleAttacker(const ModelKernel& kernel) {
  const int ns = kernel.num_states();
  const int na = kernel.num_attacker_actions();
  std::vector<double> table(static_cast<std::size_t>(ns) * na, 0.0);
  for (int s = 0; s < ns; ++s) {
    int count = 0;
    for (int a = 0; a < na; ++a) count += kernel.AttackerFeasible(s, a) ? 1 : 0;
    for (int a = 0; a < na; ++a) {
      if (count == 0) {
        table[static_cast<std::size_t>(s) * na + a] = 1.0 / na;
      } else if (kernel.AttackerFeasible(s, a)) {
        table[static_cast<std::size_t>(s) * na + a] = 1.0 / count;
      }
    }
  }
  return TabularStrategy(ns, na, std::move(table));
}

TabularStrategy TabularStrategy::FromStrategy(const Strategy& strategy, int num_states) {
  return TabularStrategy(num_states, strategy.num_actions(), StateActionTable(strategy, num_states));
}

void TabularStrategy::ActionProbabilities(const InfoState& info, std::span<double> out) const {
  if (info.state < 0 || info.state >= num_states_) {
    Fail(ErrorCode::kInvalidStrategy, "tabular strategy queried without a valid state");
  }
  auto row = Row(info.state);
  std::copy(row.begin(), row.end(), out.begin());
}

void TabularStrategy::BlendToward(const TabularStrategy& other, double w) {
  if (other.num_states_ != num_states_ || other.num_actions_ != num_actions_) {
    Fail(ErrorCode::kShapeMismatch, "cannot blend strategies of different shapes");
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    table_[i] = (1.0 - w) * table_[i] + w * other.table_[i];
  }
}

ThresholdStrategy::ThresholdStrategy(double alpha, std::vector<char> intrusion_states,
                                     int stop_action, int continue_action, int num_actions)
    : alpha_(alpha),
      intrusion_states_(std::move(intrusion_states)),
      stop_action_(stop_action),
      continue_action_(continue_action),
      num_actions_(num_actions) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    Fail(ErrorCode::kInvalidStrategy, "threshold must lie in [0, 1]");
  }
}

double ThresholdStrategy::IntrusionMass(std::span<const double> belief) const {
  double mass = 0.0;
  for (std::size_t s = 0; s < belief.size() && s < intrusion_states_.size(); ++s) {
    if (intrusion_states_[s]) mass += belief[s];
  }
  return mass;
}

void ThresholdStrategy::ActionProbabilities(const InfoState& info, std::span<double> out) const {
  if (info.belief.empty()) {
    Fail(ErrorCode::kInvalidStrategy, "threshold strategy queried without a belief");
  }
  std::fill(out.begin(), out.end(), 0.0);
  out[IntrusionMass(info.belief) > alpha_ ? stop_action_ : continue_action_] = 1.0;
}

FixedStrategy::FixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0.0) Fail(ErrorCode::kInvalidStrategy, "negative probability");
    sum += p;
  }
  if (probs_.empty() || std::abs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidStrategy, "fixed strategy must be a distribution");
  }
}

FixedStrategy FixedStrategy::Pure(int action, int num_actions) {
  std::vector<double> p(num_actions, 0.0);
  p.at(action) = 1.0;
  return FixedStrategy(std::move(p));
}

void FixedStrategy::ActionProbabilities(const InfoState&, std::span<double> out) const {
  std::copy(probs_.begin(), probs_.end(), out.begin());
}

std::vector<double> StateActionTable(const Strategy& strategy, int num_states) {
  if (!strategy.IsStateBased()) {
    Fail(ErrorCode::kInvalidStrategy, std::string(StrategyKindName(strategy.kind())) +
                                          " strategy is not defined on states");
  }
  if (auto* tab = dynamic_cast<const TabularStrategy*>(&strategy)) {
    if (tab->num_states() != num_states) {
      Fail(ErrorCode::kShapeMismatch, "strategy covers " + std::to_string(tab->num_states()) +
                                          " states, kernel has " + std::to_string(num_states));
    }
    return tab->table();
  }
  const int na = strategy.num_actions();
  std::vector<double> table(static_cast<std::size_t>(num_states) * na);
  for (int s = 0; s < num_states; ++s) {
    InfoState info;
    info.state = s;
    strategy.ActionProbabilities(
        info, std::span<double>(table.data() + static_cast<std::size_t>(s) * na, na));
  }
  return table;
}

int SampleAction(const Strategy& strategy, const InfoState& info, Rng& rng) {
  double buf[64];
  const int na = strategy.num_actions();
  if (na <= 64) {
    std::span<double> probs(buf, na);
    strategy.ActionProbabilities(info, probs);
    return SampleIndex(probs, rng);
  }
  std::vector<double> probs = strategy.ActionProbabilities(info);
  return SampleIndex(probs, rng);
}

}  // namespace secrl
