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

#ifndef SECRL_USECASES_RECOVERY_H_
#define SECRL_USECASES_RECOVERY_H_

#include <utility>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"

namespace secrl::recovery {

// K replicas with bit states (1 = compromised) and bit actions (1 = recover).
// States, actions and joint observations are indexed little-endian: replica
// l is bit l (or base-|O_l| digit l).
struct Config {
  int K = 3;
  // Undirected neighbor relation; defaults to a line 0 - 1 - ... - K-1.
  std::vector<std::pair<int, int>> edges;
  // p(o^l | s^l): row 0 safe, row 1 compromised.
  std::vector<std::vector<double>> obs_per_replica;
  double gamma = 0.99;
  int max_replicas = 6;

  static Config Default(int K = 3);
  static std::vector<std::vector<double>> DefaultObservation();
  void Validate() const;
  static Config FromJson(const nlohmann::json& doc);
};

// Number of compromised neighbors of replica l in joint state s.
int CompromisedNeighbors(const Config& cfg, int s, int l);

// min{0.2 (1 + N), 1}.
double CompromiseProbability(int compromised_neighbors);

// -sum_l (2 s^l (1 - a^l) + a^l (1 - s^l)).
double Reward(int K, int s, int a);

ModelKernel Build(const Config& cfg);

inline int Bit(int x, int l) { return (x >> l) & 1; }

// Per-replica component of a joint observation index.
inline int ReplicaObservation(int joint, int l, int per_replica) {
  for (int k = 0; k < l; ++k) joint /= per_replica;
  return joint % per_replica;
}

}  // namespace secrl::recovery

#endif  // SECRL_USECASES_RECOVERY_H_
