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

#ifndef SECRL_USECASES_REPLICATION_H_
#define SECRL_USECASES_REPLICATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"

namespace secrl::replication {

inline constexpr int kWait = 0;
inline constexpr int kAdd = 1;

// State: healthy replica count 0..s_max. Action 1 adds a replica.
struct Config {
  int s_max = 5;
  int N_1 = 3;
  // "parametric": each healthy replica fails independently with fail_prob,
  // then an add succeeds with add_prob. "file": load kernel_path.
  std::string kernel_source = "parametric";
  std::string kernel_path;
  double fail_prob = 0.1;
  double add_prob = 0.9;
  double epsilon_A = 0.95;
  double p_A = 0.01;
  int r_min = 1;
  // Weight on unavailability in the scalarized per-step reward
  // -(a + lambda * [s < r_min]).
  double lambda = 10.0;
  double gamma = 0.99;

  void Validate() const;
  static Config FromJson(const nlohmann::json& doc);
};

// Transition rows only; rewards are set by the builders.
ModelKernel BuildMdp(const Config& cfg);

// Attacker action k targets min(k, s) healthy replicas, each compromised with
// p_A before the MDP dynamics apply.
ModelKernel BuildGame(const Config& cfg);

// Distribution of the healthy count after an attack on k replicas.
std::vector<double> AttackOutcome(int s, int k, double p_A, int s_max);

struct AvailabilityReport {
  double average_cost = 0.0;  // long-run fraction of steps with a = 1
  double availability = 0.0;  // long-run fraction of steps with s >= r_min
  std::vector<double> occupancy;
};

// Long-run averages of a state-based policy on a single-agent replication
// kernel, starting from N_1.
class AvailabilityEvaluator {
 public:
  AvailabilityEvaluator(const ModelKernel& kernel, int N_1, int r_min)
      : kernel_(kernel), N_1_(N_1), r_min_(r_min) {}

  // Power iteration on the lazy chain (I + P) / 2, which has the same
  // stationary behaviour and is aperiodic.
  AvailabilityReport Stationary(const Strategy& policy, double tolerance = 1e-13,
                                int max_iterations = 1000000) const;
  AvailabilityReport MonteCarlo(const Strategy& policy, int steps, uint64_t seed) const;

 private:
  const ModelKernel& kernel_;
  int N_1_;
  int r_min_;
};

struct ConstrainedSolution {
  double lambda = 0.0;
  std::vector<int> policy;
  AvailabilityReport report;
  bool feasible = false;
};

// Minimizes long-run cost subject to availability >= epsilon_A by bisection
// on the Lagrange weight, solving each scalarized problem with relative
// value iteration.
ConstrainedSolution SolveConstrained(const Config& cfg, double lambda_max = 1e4,
                                     double tolerance = 1e-3);

// Average-reward optimal deterministic policy for per-step reward
// -(a + lambda [s < r_min]).
std::vector<int> RelativeValueIteration(const ModelKernel& kernel, double lambda, int r_min);

}  // namespace secrl::replication

#endif  // SECRL_USECASES_REPLICATION_H_
