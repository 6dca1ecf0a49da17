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

#include "secrl/core/kernel.h"

#include <algorithm>
#include <utility>

#include "secrl/core/error.h"

namespace secrl {
namespace {

int FindName(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

// Sorts by successor and merges duplicate successors.
void Canonicalize(std::vector<Successor>& row) {
  if (row.size() < 2) return;
  std::sort(row.begin(), row.end(),
            [](const Successor& x, const Successor& y) { return x.next < y.next; });
  std::size_t w = 0;
  for (std::size_t r = 1; r < row.size(); ++r) {
    if (row[r].next == row[w].next) {
      row[w].prob += row[r].prob;
    } else {
      row[++w] = row[r];
    }
  }
  row.resize(w + 1);
}

}  // namespace

std::span<const double> ModelKernel::ObservationRow(int s) const {
  if (fully_observed_) return {};
  return {observations_.data() + static_cast<std::size_t>(s) * num_observations(),
          static_cast<std::size_t>(num_observations())};
}

int ModelKernel::SampleObservation(int s, Rng& rng) const {
  if (fully_observed_) return s;
  return SampleIndex(ObservationRow(s), rng);
}

int ModelKernel::SampleNextState(int s, int d, int a, Rng& rng) const {
  auto row = Transitions(s, d, a);
  double u = Uniform01(rng);
  double acc = 0.0;
  int last = s;
  for (const Successor& e : row) {
    if (e.prob <= 0.0) continue;
    last = e.next;
    acc += e.prob;
    if (u < acc) return e.next;
  }
  return last;
}

int ModelKernel::StateIndex(std::string_view name) const {
  return FindName(state_names_, name);
}
int ModelKernel::DefenderActionIndex(std::string_view name) const {
  return FindName(defender_action_names_, name);
}
int ModelKernel::AttackerActionIndex(std::string_view name) const {
  return FindName(attacker_action_names_, name);
}

KernelBuilder::KernelBuilder(std::vector<std::string> states,
                             std::vector<std::string> defender_actions,
                             std::vector<std::string> attacker_actions)
    : states_(std::move(states)),
      defender_actions_(std::move(defender_actions)),
      attacker_actions_(std::move(attacker_actions)) {
  if (states_.empty() || defender_actions_.empty() || attacker_actions_.empty()) {
    Fail(ErrorCode::kInvalidConfig, "kernel needs at least one state and one action per player");
  }
  rewards_.assign(states_.size() * defender_actions_.size() * attacker_actions_.size(), 0.0);
  initial_belief_.assign(states_.size(), 0.0);
  initial_belief_[0] = 1.0;
}

KernelBuilder& KernelBuilder::SetTransition(int s, int d, int a, std::vector<Successor> row) {
  if (rows_.empty()) rows_.resize(rewards_.size());
  rows_[RowIndex(s, d, a)] = std::move(row);
  return *this;
}

KernelBuilder& KernelBuilder::SetTransitionFunction(RowFunction fn) {
  row_fn_ = std::move(fn);
  return *this;
}

KernelBuilder& KernelBuilder::SetReward(int s, int d, int a, double r) {
  rewards_[RowIndex(s, d, a)] = r;
  return *this;
}

KernelBuilder& KernelBuilder::SetRewards(std::vector<double> rewards) {
  if (rewards.size() != rewards_.size()) {
    Fail(ErrorCode::kShapeMismatch, "reward table has " + std::to_string(rewards.size()) +
                                        " entries, expected " + std::to_string(rewards_.size()));
  }
  rewards_ = std::move(rewards);
  return *this;
}

KernelBuilder& KernelBuilder::SetObservations(std::vector<std::string> names,
                                              std::vector<double> table) {
  if (table.size() != names.size() * states_.size()) {
    Fail(ErrorCode::kShapeMismatch, "observation table has wrong size");
  }
  fully_observed_ = false;
  observation_names_ = std::move(names);
  observations_ = std::move(table);
  return *this;
}

KernelBuilder& KernelBuilder::SetFullyObserved() {
  fully_observed_ = true;
  observation_names_.clear();
  observations_.clear();
  return *this;
}

KernelBuilder& KernelBuilder::SetDiscount(double gamma) {
  discount_ = gamma;
  return *this;
}

KernelBuilder& KernelBuilder::SetInitialBelief(std::vector<double> b1) {
  if (b1.size() != states_.size()) {
    Fail(ErrorCode::kShapeMismatch, "initial belief has wrong size");
  }
  initial_belief_ = std::move(b1);
  return *this;
}

KernelBuilder& KernelBuilder::MarkTerminal(int s) {
  if (std::find(terminals_.begin(), terminals_.end(), s) == terminals_.end()) {
    terminals_.push_back(s);
  }
  return *this;
}

KernelBuilder& KernelBuilder::SetAttackerFeasible(int s, int a, bool feasible) {
  if (attacker_feasible_.empty()) {
    attacker_feasible_.assign(states_.size() * attacker_actions_.size(), 1);
  }
  attacker_feasible_[static_cast<std::size_t>(s) * attacker_actions_.size() + a] =
      feasible ? 1 : 0;
  return *this;
}

ModelKernel KernelBuilder::Build() {
  ModelKernel k;
  const int ns = num_states();
  const int nd = num_defender_actions();
  const int na = num_attacker_actions();
  k.row_offsets_.reserve(rewards_.size() + 1);
  k.row_offsets_.push_back(0);
  std::vector<Successor> scratch;
  for (int s = 0; s < ns; ++s) {
    for (int d = 0; d < nd; ++d) {
      for (int a = 0; a < na; ++a) {
        scratch.clear();
        if (row_fn_) {
          row_fn_(s, d, a, scratch);
        } else if (!rows_.empty()) {
          scratch = rows_[RowIndex(s, d, a)];
        }
        Canonicalize(scratch);
        k.successors_.insert(k.successors_.end(), scratch.begin(), scratch.end());
        k.row_offsets_.push_back(k.successors_.size());
      }
    }
  }
  k.successors_.shrink_to_fit();
  k.state_names_ = std::move(states_);
  k.defender_action_names_ = std::move(defender_actions_);
  k.attacker_action_names_ = std::move(attacker_actions_);
  k.observation_names_ = fully_observed_ ? k.state_names_ : std::move(observation_names_);
  k.rewards_ = std::move(rewards_);
  k.fully_observed_ = fully_observed_;
  k.observations_ = std::move(observations_);
  k.discount_ = discount_;
  k.initial_belief_ = std::move(initial_belief_);
  k.is_terminal_.assign(ns, 0);
  std::sort(terminals_.begin(), terminals_.end());
  for (int t : terminals_) k.is_terminal_[t] = 1;
  k.terminal_states_ = std::move(terminals_);
  k.attacker_feasible_ = std::move(attacker_feasible_);
  rows_.clear();
  return k;
}

}  // namespace secrl
