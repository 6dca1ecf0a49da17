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

#ifndef SECRL_EXPERIMENT_CONFIG_H_
#define SECRL_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/learning/ppo.h"
#include "secrl/learning/rollout.h"
#include "secrl/learning/spsa.h"

namespace secrl::experiment {

inline const std::vector<std::string> kModels = {"flow-pomdp",      "flow-game",
                                                 "segmentation-game", "replication-mdp",
                                                 "replication-game", "recovery-pomdp"};
inline const std::vector<std::string> kAlgorithms = {
    "spsa", "rollout", "pg", "fictitious-play", "threshold-baseline", "alert-baseline"};

// Empty when the pairing is a recommended one (including the baselines on the
// models they were designed for); otherwise a human-readable warning.
std::string PairingWarning(const std::string& model, const std::string& algorithm);

// Algorithm-specific knobs; which keys are accepted depends on the algorithm.
struct AlgorithmSettings {
  int eval_episodes = 1000;
  int max_episode_steps = 1000;
  int eval_every = 50;
  // spsa (and the fictitious-play SPSA responder)
  SpsaParams spsa;
  int episodes_per_evaluation = 20;
  double theta0 = 0.0;
  // threshold-baseline
  double alpha = 0.75;
  // rollout
  RolloutParams rollout;
  std::string base = "random";  // "random" | "threshold"
  double base_alpha = 0.75;
  // pg (and the fictitious-play policy-gradient responder)
  PgParams pg;
  std::string features = "auto";  // "auto" | "state" | "belief" | "observation"
  // fictitious-play
  int rounds = 50;
  std::string defender_responder = "auto";  // "auto" | "exact" | "pg" | "spsa"
  std::string attacker_responder = "exact";  // "exact" | "pg"
  // alert-baseline
  std::vector<double> quantiles = {0.5, 0.9, 0.99};
  int priority_threshold = 2;

  // Throws ConfigError naming the offending algorithm_params field.
  static AlgorithmSettings FromJson(const std::string& algorithm, const nlohmann::json& doc);
};

struct ExperimentConfig {
  std::string model;
  nlohmann::json model_params;
  std::string algorithm;
  nlohmann::json algorithm_params;
  AlgorithmSettings settings;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4};
  std::string output_dir = "out";
  int jobs = 1;
  // Off by default so per-seed CSVs are byte-identical across runs.
  bool record_wall_time = false;

  // Throws ConfigError whose detail starts with the field path.
  static ExperimentConfig FromJson(const nlohmann::json& doc);
  static ExperimentConfig Load(const std::string& path);
  nlohmann::json ToJson() const;
};

// Parses "1,2,3" into seeds; throws ConfigError on malformed input.
std::vector<uint64_t> ParseSeedList(const std::string& text);

}  // namespace secrl::experiment

#endif  // SECRL_EXPERIMENT_CONFIG_H_
