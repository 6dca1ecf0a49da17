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

#ifndef SECRL_CORE_BELIEF_H_
#define SECRL_CORE_BELIEF_H_

#include <span>
#include <vector>

#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"

namespace secrl {

// Probability vector over the states of a kernel.
class Belief {
 public:
  // Throws InvalidBelief unless entries are nonnegative and sum to 1.
  static Belief FromProbabilities(std::vector<double> probs);
  static Belief PointMass(int num_states, int state);
  static Belief Initial(const ModelKernel& kernel);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int s) const { return probs_[s]; }
  std::span<const double> probs() const { return probs_; }

 private:
  explicit Belief(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Bayes filter: predicts with the transition table marginalized over the
// opponent's action distribution, conditions on z(o | s'), and normalizes.
// Throws ZeroLikelihood when the observation has zero probability.
Belief BeliefUpdate(const Belief& belief, int defender_action, int observation,
                    const ModelKernel& kernel, std::span<const double> opponent_marginal);

// Same filter with a state-conditioned opponent model pi_A(a | s).
Belief BeliefUpdate(const Belief& belief, int defender_action, int observation,
                    const ModelKernel& kernel, const Strategy& opponent);

// Prediction step only (no conditioning); used when the observation model is
// absent or as a fallback after an impossible observation.
// Conditions a predicted (unnormalized) state distribution on `observation`.
Belief ConditionBelief(std::vector<double> predicted, int observation, const ModelKernel& kernel);

std::vector<double> PredictBelief(std::span<const double> belief, int defender_action,
                                  const ModelKernel& kernel,
                                  std::span<const double> opponent_table);

}  // namespace secrl

#endif  // SECRL_CORE_BELIEF_H_
