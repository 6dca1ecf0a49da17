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

#ifndef SECRL_EXPERIMENT_REGISTRY_H_
#define SECRL_EXPERIMENT_REGISTRY_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"
#include "secrl/usecases/flow_belief_game.h"

namespace secrl::experiment {

// A built model plus the side information algorithms and baselines need.
struct ModelInstance {
  std::string name;
  nlohmann::json params;  // caller-supplied model_params
  std::shared_ptr<const ModelKernel> kernel;
  // Opponent used when a single-agent method runs on this model: the null
  // attacker for MDP/POMDP models, uniform over feasible actions for games.
  StrategyPtr default_attacker;
  // Flow models: states counted by belief-threshold strategies.
  std::vector<char> intrusion_mask;
  // Flow game: belief-augmented game used by fictitious play with SPSA.
  std::shared_ptr<const flow::BeliefGame> belief_game;
  // Recovery: replica count and per-replica observation rows.
  int replicas = 0;
  std::vector<std::vector<double>> obs_per_replica;
};

struct ModelEntry {
  std::string name;
  std::string description;
  nlohmann::json parameters;  // parameter name -> default value
  std::function<ModelInstance(const nlohmann::json& params)> build;
};

const std::vector<ModelEntry>& ModelRegistry();
// Throws UnknownModel for unregistered names.
const ModelEntry& FindModel(const std::string& name);
ModelInstance BuildModel(const std::string& name, const nlohmann::json& params);
// GET /models payload: [{"name", "description", "kind", "parameters"}].
nlohmann::json ModelsJson();

}  // namespace secrl::experiment

#endif  // SECRL_EXPERIMENT_REGISTRY_H_
