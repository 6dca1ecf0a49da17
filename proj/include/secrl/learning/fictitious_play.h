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

#ifndef SECRL_LEARNING_FICTITIOUS_PLAY_H_
#define SECRL_LEARNING_FICTITIOUS_PLAY_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "secrl/core/dynamic_programming.h"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"
#include "secrl/learning/ppo.h"
#include "secrl/learning/spsa.h"

namespace secrl {

// Computes (or learns) a response to the opponent's current average.
using Responder =
    std::function<TabularStrategy(const TabularStrategy& opponent_average, int round)>;

using ExploitabilityFn =
    std::function<Exploitability(const TabularStrategy& defender, const TabularStrategy& attacker)>;

struct FictitiousPlayParams {
  int rounds = 100;
  int eval_every = 1;
  // Called after each averaging step; e.g. for progress output.
  std::function<void(int round)> on_round;
};

struct FictitiousPlayPoint {
  int round;
  double exploitability;
  double defender_gain;
  double attacker_gain;
  double value;
};

struct FictitiousPlayResult {
  TabularStrategy defender;
  TabularStrategy attacker;
  std::vector<FictitiousPlayPoint> curve;
};

// Simultaneous fictitious play: in round t both players respond to the
// opponent's average after round t-1 (uniform feasible strategies before
// round 1), and averages move toward the responses with weight 1/t.
// Averaging is per state (behavioral), exact for single-state games.
FictitiousPlayResult FictitiousPlay(const ModelKernel& kernel, const Responder& defender,
                                    const Responder& attacker, const FictitiousPlayParams& params,
                                    const ExploitabilityFn& exploitability = nullptr);

// Exact best response by dynamic programming.
Responder ExactDpResponder(const ModelKernel& kernel, Player player);

// Single-agent kernel faced by `player` when the opponent plays
// `opponent_table`; rewards are from the responder's perspective. The
// result is fully observed for the attacker and keeps the defender's
// observation model otherwise.
ModelKernel InducedResponderKernel(const ModelKernel& kernel, Player player,
                                   std::span<const double> opponent_table);

// Policy-gradient responder trained on the induced kernel. The attacker and
// fully observed defenders use state features; a partially observed defender
// uses memoryless observation features and is mapped to a state table via
// sum_o z(o|s) pi(.|o).
Responder PgResponder(const ModelKernel& kernel, Player player, PgParams params);

// Defender responder over a one-parameter family: alpha = sigmoid(theta),
// theta in [-10, 10], tuned by SPSA against the exact value of the family
// member versus the opponent average.
Responder ThresholdSpsaResponder(const ModelKernel& kernel,
                                 std::function<TabularStrategy(double alpha)> family,
                                 SpsaParams params);

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace secrl

#endif  // SECRL_LEARNING_FICTITIOUS_PLAY_H_
