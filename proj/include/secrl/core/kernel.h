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

#ifndef SECRL_CORE_KERNEL_H_
#define SECRL_CORE_KERNEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secrl/core/random.h"

namespace secrl {

enum class Player { kDefender, kAttacker };

struct Successor {
  int next;
  double prob;
};

// Finite MDP / POMDP / two-player zero-sum Markov game.
//
// Transition rows are indexed by (state, defender action, attacker action)
// and stored sparsely (CSR). Rewards are defender-centric: the attacker of a
// game receives -Reward(). Single-agent models carry one "null" attacker
// action. Terminal states are ordinary absorbing states with zero reward.
//
// The kernel is immutable once built and may be shared between threads.
class ModelKernel {
 public:
  int num_states() const { return static_cast<int>(state_names_.size()); }
  int num_defender_actions() const {
    return static_cast<int>(defender_action_names_.size());
  }
  int num_attacker_actions() const {
    return static_cast<int>(attacker_action_names_.size());
  }
  int num_observations() const {
    return static_cast<int>(observation_names_.size());
  }
  std::size_t num_rows() const {
    return static_cast<std::size_t>(num_states()) * num_defender_actions() *
           num_attacker_actions();
  }
  std::size_t num_transition_entries() const { return successors_.size(); }

  std::size_t RowIndex(int s, int d, int a) const {
    return (static_cast<std::size_t>(s) * num_defender_actions() + d) *
               num_attacker_actions() +
           a;
  }

  std::span<const Successor> Transitions(int s, int d, int a) const {
    std::size_t row = RowIndex(s, d, a);
    return {successors_.data() + row_offsets_[row],
            successors_.data() + row_offsets_[row + 1]};
  }
  double Reward(int s, int d, int a) const { return rewards_[RowIndex(s, d, a)]; }
  std::span<const double> rewards() const { return rewards_; }

  // Identity observation model: the defender sees the state itself.
  bool fully_observed() const { return fully_observed_; }
  double ObservationProb(int s, int o) const {
    if (fully_observed_) return s == o ? 1.0 : 0.0;
    return observations_[static_cast<std::size_t>(s) * num_observations() + o];
  }
  // Empty for fully observed kernels.
  std::span<const double> ObservationRow(int s) const;
  int SampleObservation(int s, Rng& rng) const;
  int SampleNextState(int s, int d, int a, Rng& rng) const;

  double discount() const { return discount_; }
  const std::vector<double>& initial_belief() const { return initial_belief_; }

  bool IsTerminal(int s) const { return is_terminal_[s] != 0; }
  const std::vector<int>& terminal_states() const { return terminal_states_; }

  bool has_attacker_mask() const { return !attacker_feasible_.empty(); }
  bool AttackerFeasible(int s, int a) const {
    return attacker_feasible_.empty() ||
           attacker_feasible_[static_cast<std::size_t>(s) * num_attacker_actions() + a] != 0;
  }

  bool is_game() const { return num_attacker_actions() > 1; }

  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& defender_action_names() const {
    return defender_action_names_;
  }
  const std::vector<std::string>& attacker_action_names() const {
    return attacker_action_names_;
  }
  const std::vector<std::string>& observation_names() const {
    return observation_names_;
  }

  // -1 when the name is unknown.
  int StateIndex(std::string_view name) const;
  int DefenderActionIndex(std::string_view name) const;
  int AttackerActionIndex(std::string_view name) const;

 private:
  friend class KernelBuilder;

  std::vector<std::string> state_names_;
  std::vector<std::string> defender_action_names_;
  std::vector<std::string> attacker_action_names_;
  std::vector<std::string> observation_names_;
  std::vector<std::size_t> row_offsets_;
  std::vector<Successor> successors_;
  std::vector<double> rewards_;
  bool fully_observed_ = true;
  std::vector<double> observations_;
  double discount_ = 0.99;
  std::vector<double> initial_belief_;
  std::vector<uint8_t> is_terminal_;
  std::vector<int> terminal_states_;
  std::vector<uint8_t> attacker_feasible_;
};

// Assembles a ModelKernel. Construction never validates: malformed kernels
// can be built on purpose and inspected with ValidateKernel().
class KernelBuilder {
 public:
  using RowFunction =
      std::function<void(int s, int d, int a, std::vector<Successor>& out)>;

  KernelBuilder(std::vector<std::string> states,
                std::vector<std::string> defender_actions,
                std::vector<std::string> attacker_actions = {"null"});

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_defender_actions() const {
    return static_cast<int>(defender_actions_.size());
  }
  int num_attacker_actions() const {
    return static_cast<int>(attacker_actions_.size());
  }

  // Random-access row assignment, for small kernels.
  KernelBuilder& SetTransition(int s, int d, int a, std::vector<Successor> row);
  // Row generator invoked once per row in row-major order during Build();
  // takes precedence over SetTransition rows.
  KernelBuilder& SetTransitionFunction(RowFunction fn);

  KernelBuilder& SetReward(int s, int d, int a, double r);
  KernelBuilder& SetRewards(std::vector<double> rewards);

  // Row-major table of size |S| x |O|.
  KernelBuilder& SetObservations(std::vector<std::string> names,
                                 std::vector<double> table);
  KernelBuilder& SetFullyObserved();

  KernelBuilder& SetDiscount(double gamma);
  KernelBuilder& SetInitialBelief(std::vector<double> b1);
  KernelBuilder& MarkTerminal(int s);
  KernelBuilder& SetAttackerFeasible(int s, int a, bool feasible);

  ModelKernel Build();

 private:
  std::size_t RowIndex(int s, int d, int a) const {
    return (static_cast<std::size_t>(s) * defender_actions_.size() + d) *
               attacker_actions_.size() +
           a;
  }

  std::vector<std::string> states_;
  std::vector<std::string> defender_actions_;
  std::vector<std::string> attacker_actions_;
  std::vector<std::vector<Successor>> rows_;
  RowFunction row_fn_;
  std::vector<double> rewards_;
  bool fully_observed_ = true;
  std::vector<std::string> observation_names_;
  std::vector<double> observations_;
  double discount_ = 0.99;
  std::vector<double> initial_belief_;
  std::vector<int> terminals_;
  std::vector<uint8_t> attacker_feasible_;
};

}  // namespace secrl

#endif  // SECRL_CORE_KERNEL_H_
