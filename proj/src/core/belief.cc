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

#include "secrl/core/belief.h"

#include <cmath>
#include <string>

#include "secrl/core/error.h"

namespace secrl {
namespace {

// opponent_table is either |A| (state-independent) or |S| x |A|.
double OpponentProb(std::span<const double> table, int num_actions, int s, int a) {
  if (table.size() == static_cast<std::size_t>(num_actions)) return table[a];
  return table[static_cast<std::size_t>(s) * num_actions + a];
}

}  // namespace

Belief ConditionBelief(std::vector<double> predicted, int observation,
                      const ModelKernel& kernel) {
  if (observation < 0 || observation >= kernel.num_observations()) {
    Fail(ErrorCode::kInvalidConfig, "observation " + std::to_string(observation) + " out of range");
  }
  double total = 0.0;
  for (int s = 0; s < kernel.num_states(); ++s) {
    if (predicted[s] == 0.0) continue;
    predicted[s] *= kernel.ObservationProb(s, observation);
    total += predicted[s];
  }
  if (!(total > 0.0)) {
    Fail(ErrorCode::kZeroLikelihood,
         "observation " + std::to_string(observation) + " has zero probability under the model");
  }
  for (double& p : predicted) p /= total;
  return Belief::FromProbabilities(std::move(predicted));
}

Belief Belief::FromProbabilities(std::vector<double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) Fail(ErrorCode::kInvalidBelief, "belief entries must be nonnegative");
    sum += p;
  }
  if (probs.empty() || std::abs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidBelief, "belief sums to " + std::to_string(sum));
  }
  return Belief(std::move(probs));
}

Belief Belief::PointMass(int num_states, int state) {
  std::vector<double> p(num_states, 0.0);
  p.at(state) = 1.0;
  return Belief(std::move(p));
}

Belief Belief::Initial(const ModelKernel& kernel) {
  return FromProbabilities(kernel.initial_belief());
}

std::vector<double> PredictBelief(std::span<const double> belief, int defender_action,
                                  const ModelKernel& kernel,
                                  std::span<const double> opponent_table) {
  const int ns = kernel.num_states();
  const int na = kernel.num_attacker_actions();
  if (defender_action < 0 || defender_action >= kernel.num_defender_actions()) {
    Fail(ErrorCode::kIllegalAction, "defender action " + std::to_string(defender_action) +
                                        " out of range");
  }
  if (opponent_table.size() != static_cast<std::size_t>(na) &&
      opponent_table.size() != static_cast<std::size_t>(ns) * na) {
    Fail(ErrorCode::kShapeMismatch, "opponent model has wrong shape");
  }
  std::vector<double> predicted(ns, 0.0);
  for (int s = 0; s < ns; ++s) {
    const double bs = belief[s];
    if (bs == 0.0) continue;
    for (int a = 0; a < na; ++a) {
      const double pa = OpponentProb(opponent_table, na, s, a);
      if (pa == 0.0) continue;
      for (const Successor& e : kernel.Transitions(s, defender_action, a)) {
        predicted[e.next] += bs * pa * e.prob;
      }
    }
  }
  return predicted;
}

Belief BeliefUpdate(const Belief& belief, int defender_action, int observation,
                    const ModelKernel& kernel, std::span<const double> opponent_marginal) {
  if (opponent_marginal.size() != static_cast<std::size_t>(kernel.num_attacker_actions())) {
    Fail(ErrorCode::kShapeMismatch, "opponent marginal has wrong size");
  }
  return ConditionBelief(PredictBelief(belief.probs(), defender_action, kernel, opponent_marginal),
                   observation, kernel);
}

Belief BeliefUpdate(const Belief& belief, int defender_action, int observation,
                    const ModelKernel& kernel, const Strategy& opponent) {
  std::vector<double> table = StateActionTable(opponent, kernel.num_states());
  return ConditionBelief(PredictBelief(belief.probs(), defender_action, kernel, table), observation,
                   kernel);
}

}  // namespace secrl
