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

#ifndef SECRL_USECASES_SEGMENTATION_H_
#define SECRL_USECASES_SEGMENTATION_H_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"

namespace secrl::segmentation {

// Tree of nodes rooted at an implicit gateway (parent index -1).
struct InfraGraph {
  std::vector<std::string> nodes;
  std::vector<int> parent;
  std::vector<int> workflow;
  std::vector<std::string> zones;
  std::vector<int> initial_zone;
  // Nodes in this zone are inactive; -1 when no zone shuts nodes down.
  int shutdown_zone = -1;

  int size() const { return static_cast<int>(nodes.size()); }
  // Throws InvalidConfig naming the violated constraint.
  void Validate() const;
  static InfraGraph FromJson(const nlohmann::json& doc);
  nlohmann::json ToJson() const;
  // A path gw - n0 - n1 - ... in one workflow, all in zone 0 of `zones`.
  static InfraGraph Chain(int n, int num_zones = 1);
};

// Attacker-side node classes.
inline constexpr int kClean = 0;        // (R, I) = (0, 0)
inline constexpr int kDiscovered = 1;   // (1, 0)
inline constexpr int kCompromised = 2;  // (1, 1)

// Local actions.
inline constexpr int kNull = 0;
inline constexpr int kRecon = 1;
inline constexpr int kCompromise = 2;
inline constexpr int kMigrate = 1;

struct Config {
  InfraGraph graph = InfraGraph::Chain(2);
  double eta = 1.0;
  double gamma = 0.99;
  double p_recon = 1.0;
  double p_compromise = 0.8;
  // z(o_i | class): one row per node class (clean, discovered, compromised).
  std::vector<std::vector<double>> alert_model = DefaultAlertModel();
  int max_nodes = 5;
  std::size_t max_rows = 2000000;

  static std::vector<std::vector<double>> DefaultAlertModel();
  void Validate() const;
  static Config FromJson(const nlohmann::json& doc);
};

// Joint encodings: node i is digit i. State digit = class * |Z| + zone;
// defender digit in {null, migrate}; attacker digit in {null, recon,
// compromise}; observation digit indexes the alert model columns.
class Layout {
 public:
  explicit Layout(const Config& cfg);
  int num_states() const { return num_states_; }
  int num_defender_actions() const { return num_defender_; }
  int num_attacker_actions() const { return num_attacker_; }
  int num_observations() const { return num_observations_; }
  int NodeClass(int state, int i) const { return Digit(state, i, per_node_) / zones_; }
  int NodeZone(int state, int i) const { return Digit(state, i, per_node_) % zones_; }
  int DefenderLocal(int d, int i) const { return (d >> i) & 1; }
  int AttackerLocal(int a, int i) const { return Digit(a, i, 3); }
  int ObservationLocal(int o, int i) const { return Digit(o, i, obs_per_node_); }

 private:
  int Digit(int x, int i, int base) const {
    for (int k = 0; k < i; ++k) x /= base;
    return x % base;
  }
  int n_, zones_, per_node_, obs_per_node_;
  int num_states_, num_defender_, num_attacker_, num_observations_;
};

// Workflow utility of node i: 1 iff i and all its ancestors are active and
// not compromised.
int WorkflowUtility(const Config& cfg, const Layout& layout, int state, int i);

// One node's term: eta * u - v^I - c^A(a^D), with c^A(migrate) = 1.
inline double NodeReward(double eta, int utility, int intruded, int defender_local) {
  return eta * utility - intruded - (defender_local == kMigrate ? 1.0 : 0.0);
}

// Per-step reward sum_i (eta u_i - v^I_i - c^A(a^D_i)) with c^A(migrate) = 1.
double Reward(const Config& cfg, const Layout& layout, int state, int d);

// Compromise on an undiscovered node is infeasible.
bool AttackerFeasible(const Layout& layout, int n, int state, int a);

ModelKernel Build(const Config& cfg);

}  // namespace secrl::segmentation

#endif  // SECRL_USECASES_SEGMENTATION_H_
