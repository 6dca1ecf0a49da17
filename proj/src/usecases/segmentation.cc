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

#include "secrl/usecases/segmentation.h"

#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"

namespace secrl::segmentation {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) Fail(ErrorCode::kInvalidConfig, what);
}

int IntPow(int base, int exp) {
  long long v = 1;
  for (int k = 0; k < exp; ++k) {
    v *= base;
    if (v > (1LL << 30)) Fail(ErrorCode::kDimensionCap, "joint space exceeds 2^30");
  }
  return static_cast<int>(v);
}

const char* kClassNames[] = {"00", "10", "11"};
const char* kAttackNames[] = {"null", "recon", "compromise"};
const char* kDefenseNames[] = {"null", "migrate"};

}  // namespace

void InfraGraph::Validate() const {
  const int n = size();
  Require(n >= 1, "graph: needs at least one node");
  Require(static_cast<int>(parent.size()) == n && static_cast<int>(workflow.size()) == n &&
              static_cast<int>(initial_zone.size()) == n,
          "graph: per-node arrays must match the node count");
  Require(!zones.empty(), "graph: needs at least one zone");
  for (int i = 0; i < n; ++i) {
    Require(parent[i] >= -1 && parent[i] < n && parent[i] != i, "graph: bad parent index");
    Require(initial_zone[i] >= 0 && initial_zone[i] < static_cast<int>(zones.size()),
            "graph: every node needs exactly one valid zone");
    // Walking up must reach the gateway: the edge relation is a tree.
    int steps = 0;
    for (int j = i; j != -1; j = parent[j]) {
      Require(++steps <= n, "graph: edges must form a tree rooted at the gateway");
    }
    // Workflows are subtrees that share only the gateway.
    if (parent[i] != -1) {
      Require(workflow[i] == workflow[parent[i]], "graph: workflows may only overlap at the gateway");
    }
  }
  Require(shutdown_zone >= -1 && shutdown_zone < static_cast<int>(zones.size()),
          "graph: shutdown_zone out of range");
}

InfraGraph InfraGraph::Chain(int n, int num_zones) {
  InfraGraph g;
  for (int i = 0; i < n; ++i) {
    g.nodes.push_back("n" + std::to_string(i));
    g.parent.push_back(i - 1);
    g.workflow.push_back(0);
    g.initial_zone.push_back(0);
  }
  for (int z = 0; z < num_zones; ++z) g.zones.push_back("z" + std::to_string(z));
  return g;
}

InfraGraph InfraGraph::FromJson(const nlohmann::json& doc) {
  InfraGraph g;
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    Fail(ErrorCode::kInvalidConfig, "graph.nodes: missing array");
  }
  g.zones = JsonGetOr<std::vector<std::string>>(doc, "zones", {"z0"});
  g.shutdown_zone = JsonGetOr<int>(doc, "shutdown_zone", -1);
  std::vector<std::string> parents;
  for (const auto& node : doc["nodes"]) {
    g.nodes.push_back(JsonRequire<std::string>(node, "name"));
    parents.push_back(JsonGetOr<std::string>(node, "parent", "gw"));
    g.workflow.push_back(JsonGetOr<int>(node, "workflow", 0));
    g.initial_zone.push_back(JsonGetOr<int>(node, "zone", 0));
  }
  for (const auto& p : parents) {
    if (p == "gw") {
      g.parent.push_back(-1);
      continue;
    }
    int idx = -1;
    for (int i = 0; i < g.size(); ++i) {
      if (g.nodes[i] == p) idx = i;
    }
    Require(idx >= 0, "graph: unknown parent '" + p + "'");
    g.parent.push_back(idx);
  }
  g.Validate();
  return g;
}

nlohmann::json InfraGraph::ToJson() const {
  nlohmann::json nodes_json = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) {
    nodes_json.push_back({{"name", nodes[i]},
                          {"parent", parent[i] < 0 ? std::string("gw") : nodes[parent[i]]},
                          {"workflow", workflow[i]},
                          {"zone", initial_zone[i]}});
  }
  return {{"nodes", nodes_json}, {"zones", zones}, {"shutdown_zone", shutdown_zone}};
}

std::vector<std::vector<double>> Config::DefaultAlertModel() {
  return {{0.7, 0.2, 0.1}, {0.5, 0.3, 0.2}, {0.1, 0.3, 0.6}};
}

void Config::Validate() const {
  graph.Validate();
  if (graph.size() > max_nodes) {
    Fail(ErrorCode::kDimensionCap, "graph: " + std::to_string(graph.size()) +
                                       " nodes exceed the cap of " + std::to_string(max_nodes));
  }
  Require(eta >= 0.0, "eta: must be >= 0");
  Require(gamma >= 0.0 && gamma < 1.0, "gamma: must lie in [0, 1)");
  Require(p_recon >= 0.0 && p_recon <= 1.0, "p_recon: must lie in [0, 1]");
  Require(p_compromise >= 0.0 && p_compromise <= 1.0, "p_compromise: must lie in [0, 1]");
  Require(alert_model.size() == 3 && !alert_model[0].empty(),
          "alert_model: need one row per node class");
  for (const auto& row : alert_model) {
    Require(row.size() == alert_model[0].size(), "alert_model: rows must have equal length");
    double t = 0.0;
    for (double v : row) {
      Require(v >= 0.0, "alert_model: entries must be nonnegative");
      t += v;
    }
    Require(std::abs(t - 1.0) <= 1e-9, "alert_model: rows must sum to 1");
  }
  const int n = graph.size();
  const double rows = std::pow(3.0 * graph.zones.size(), n) * std::pow(2.0, n) * std::pow(3.0, n);
  if (rows > static_cast<double>(max_rows)) {
    Fail(ErrorCode::kDimensionCap, "joint kernel would need " + std::to_string(rows) +
                                       " rows (cap " + std::to_string(max_rows) + ")");
  }
}

Config Config::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"graph", "eta", "gamma", "p_recon", "p_compromise", "alert_model",
                      "max_nodes", "max_rows"});
  Config c;
  if (doc.is_object() && doc.contains("graph")) c.graph = InfraGraph::FromJson(doc["graph"]);
  c.eta = JsonGetOr<double>(doc, "eta", c.eta);
  c.gamma = JsonGetOr<double>(doc, "gamma", c.gamma);
  c.p_recon = JsonGetOr<double>(doc, "p_recon", c.p_recon);
  c.p_compromise = JsonGetOr<double>(doc, "p_compromise", c.p_compromise);
  c.alert_model = JsonGetOr<std::vector<std::vector<double>>>(doc, "alert_model", c.alert_model);
  c.max_nodes = JsonGetOr<int>(doc, "max_nodes", c.max_nodes);
  c.max_rows = JsonGetOr<std::size_t>(doc, "max_rows", c.max_rows);
  c.Validate();
  return c;
}

Layout::Layout(const Config& cfg)
    : n_(cfg.graph.size()),
      zones_(static_cast<int>(cfg.graph.zones.size())),
      per_node_(3 * zones_),
      obs_per_node_(static_cast<int>(cfg.alert_model[0].size())) {
  num_states_ = IntPow(per_node_, n_);
  num_defender_ = IntPow(2, n_);
  num_attacker_ = IntPow(3, n_);
  num_observations_ = IntPow(obs_per_node_, n_);
}

int WorkflowUtility(const Config& cfg, const Layout& layout, int state, int i) {
  for (int j = i; j != -1; j = cfg.graph.parent[j]) {
    if (layout.NodeClass(state, j) == kCompromised) return 0;
    if (layout.NodeZone(state, j) == cfg.graph.shutdown_zone) return 0;
  }
  return 1;
}

double Reward(const Config& cfg, const Layout& layout, int state, int d) {
  double r = 0.0;
  for (int i = 0; i < cfg.graph.size(); ++i) {
    r += NodeReward(cfg.eta, WorkflowUtility(cfg, layout, state, i),
                    layout.NodeClass(state, i) == kCompromised ? 1 : 0,
                    layout.DefenderLocal(d, i));
  }
  return r;
}

bool AttackerFeasible(const Layout& layout, int n, int state, int a) {
  for (int i = 0; i < n; ++i) {
    if (layout.AttackerLocal(a, i) == kCompromise && layout.NodeClass(state, i) == kClean) {
      return false;
    }
  }
  return true;
}

ModelKernel Build(const Config& cfg) {
  cfg.Validate();
  const Layout layout(cfg);
  const int n = cfg.graph.size();
  const int zones = static_cast<int>(cfg.graph.zones.size());
  const int per_node = 3 * zones;

  std::vector<std::string> states, dacts, aacts, obs;
  for (int s = 0; s < layout.num_states(); ++s) {
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (i) name.push_back('|');
      name += cfg.graph.nodes[i] + ":" + kClassNames[layout.NodeClass(s, i)] + "@" +
              cfg.graph.zones[layout.NodeZone(s, i)];
    }
    states.push_back(name);
  }
  for (int d = 0; d < layout.num_defender_actions(); ++d) {
    std::string name;
    for (int i = 0; i < n; ++i) name += std::string(i ? "," : "") + kDefenseNames[layout.DefenderLocal(d, i)];
    dacts.push_back(name);
  }
  for (int a = 0; a < layout.num_attacker_actions(); ++a) {
    std::string name;
    for (int i = 0; i < n; ++i) name += std::string(i ? "," : "") + kAttackNames[layout.AttackerLocal(a, i)];
    aacts.push_back(name);
  }
  for (int o = 0; o < layout.num_observations(); ++o) {
    std::string name;
    for (int i = 0; i < n; ++i) name += std::string(i ? "," : "") + std::to_string(layout.ObservationLocal(o, i));
    obs.push_back(name);
  }

  KernelBuilder b(states, dacts, aacts);
  std::vector<int> place(n, 1);
  for (int i = 1; i < n; ++i) place[i] = place[i - 1] * per_node;
  b.SetTransitionFunction([&](int s, int d, int a, std::vector<Successor>& out) {
    out.assign(1, {0, 1.0});
    for (int i = 0; i < n; ++i) {
      const int cls = layout.NodeClass(s, i);
      const int zone = layout.NodeZone(s, i);
      // Up to two local outcomes: (digit, prob).
      int d0 = cls * zones + zone, d1 = -1;
      double p1 = 0.0;
      if (layout.DefenderLocal(d, i) == kMigrate) {
        d0 = kClean * zones + (zone + 1) % zones;
      } else {
        const int act = layout.AttackerLocal(a, i);
        if (act == kRecon && cls == kClean) {
          d1 = kDiscovered * zones + zone;
          p1 = cfg.p_recon;
        } else if (act == kCompromise && cls == kDiscovered) {
          d1 = kCompromised * zones + zone;
          p1 = cfg.p_compromise;
        }
      }
      std::vector<Successor> next;
      for (const Successor& e : out) {
        if (p1 < 1.0) next.push_back({e.next + d0 * place[i], e.prob * (1.0 - p1)});
        if (d1 >= 0 && p1 > 0.0) next.push_back({e.next + d1 * place[i], e.prob * p1});
      }
      out = std::move(next);
    }
  });
  std::vector<double> rewards(static_cast<std::size_t>(layout.num_states()) *
                              layout.num_defender_actions() * layout.num_attacker_actions());
  std::size_t idx = 0;
  for (int s = 0; s < layout.num_states(); ++s) {
    for (int d = 0; d < layout.num_defender_actions(); ++d) {
      const double r = Reward(cfg, layout, s, d);
      for (int a = 0; a < layout.num_attacker_actions(); ++a) rewards[idx++] = r;
    }
  }
  b.SetRewards(std::move(rewards));
  for (int s = 0; s < layout.num_states(); ++s) {
    for (int a = 0; a < layout.num_attacker_actions(); ++a) {
      if (!AttackerFeasible(layout, n, s, a)) b.SetAttackerFeasible(s, a, false);
    }
  }
  std::vector<double> table(static_cast<std::size_t>(layout.num_states()) *
                            layout.num_observations());
  for (int s = 0; s < layout.num_states(); ++s) {
    for (int o = 0; o < layout.num_observations(); ++o) {
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= cfg.alert_model[layout.NodeClass(s, i)][layout.ObservationLocal(o, i)];
      table[static_cast<std::size_t>(s) * layout.num_observations() + o] = p;
    }
  }
  b.SetObservations(obs, std::move(table));
  b.SetDiscount(cfg.gamma);
  int s1 = 0;
  for (int i = 0; i < n; ++i) s1 += (kClean * zones + cfg.graph.initial_zone[i]) * place[i];
  std::vector<double> b1(layout.num_states(), 0.0);
  b1[s1] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

}  // namespace secrl::segmentation
