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

#ifndef SECRL_USECASES_FLOW_BELIEF_GAME_H_
#define SECRL_USECASES_FLOW_BELIEF_GAME_H_

#include <memory>
#include <vector>

#include "secrl/core/dynamic_programming.h"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"
#include "secrl/usecases/flow.h"

namespace secrl::flow {

// The flow game with the defender's information made explicit: the defender
// runs a fixed, quantized filter (nominal attacker starts an intrusion with
// probability q_nominal per step and never aborts) and acts on the grid cell
// g of its filtered intrusion probability. The product (s, l, g) is fully
// observed, so exact dynamic programming applies to it, and defender
// strategies that depend on (l, g) only are implementable from the
// defender's observations.
struct BeliefGameConfig {
  GameConfig game;
  int grid = 20;
  double q_nominal = 0.1;

  static BeliefGameConfig FromJson(const nlohmann::json& doc);
};

class BeliefGame {
 public:
  explicit BeliefGame(const BeliefGameConfig& cfg);

  const ModelKernel& kernel() const { return kernel_; }
  const BeliefGameConfig& config() const { return cfg_; }
  int grid() const { return cfg_.grid; }
  int Index(int s, int l, int g) const { return (s * cfg_.game.L + (l - 1)) * cfg_.grid + g; }
  int terminal() const { return 2 * cfg_.game.L * cfg_.grid; }
  double Center(int g) const { return (g + 0.5) / cfg_.grid; }
  // Next filter cell after defender action d and observation o at l.
  int NextCell(int g, int l, int d, int o) const;

  // Stop iff the cell centre strictly exceeds alpha.
  TabularStrategy ThresholdDefender(double alpha) const;
  // Stop iff g >= k; k = grid never stops.
  TabularStrategy CellThresholdDefender(int k) const;

  // Best defender value from b1 over all cell thresholds against `attacker`.
  double BestThresholdValue(const Strategy& attacker, int* best_k = nullptr) const;

  // Exploitability oracle restricted to threshold defenders; the returned
  // value never falls below the current strategy's value.
  BestResponseOracle ThresholdOracle(std::shared_ptr<const Strategy> current_defender) const;

 private:
  BeliefGameConfig cfg_;
  std::vector<std::vector<double>> z_;  // z(o|0), z(o|1)
  std::vector<int> next_cell_;          // [l][d][g][o]
  ModelKernel kernel_;
};

}  // namespace secrl::flow

#endif  // SECRL_USECASES_FLOW_BELIEF_GAME_H_
