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

#include "secrl/experiment/registry.h"

#include "secrl/core/error.h"
#include "secrl/sysid/mixture.h"
#include "secrl/usecases/flow.h"
#include "secrl/usecases/recovery.h"
#include "secrl/usecases/replication.h"
#include "secrl/usecases/segmentation.h"

namespace secrl::experiment {
namespace {

using nlohmann::json;

json FlowObservationDefaults() {
  const auto obs = flow::ObservationConfig::Default();
  return {{"bins", obs.bins},
          {"no_intrusion", sysid::ToJson(obs.no_intrusion)},
          {"intrusion", sysid::ToJson(obs.intrusion)}};
}

ModelInstance Finish(std::string name, const json& params, ModelKernel kernel) {
  ModelInstance m;
  m.name = std::move(name);
  m.params = params;
  m.kernel = std::make_shared<const ModelKernel>(std::move(kernel));
  if (m.kernel->is_game()) {
    m.default_attacker =
        std::make_shared<TabularStrategy>(TabularStrategy::UniformFeasibleAttacker(*m.kernel));
  } else {
    m.default_attacker = std::make_shared<FixedStrategy>(FixedStrategy::Pure(0, 1));
  }
  return m;
}

std::vector<ModelEntry> MakeRegistry() {
  std::vector<ModelEntry> r;
  {
    const flow::PomdpConfig d;
    r.push_back({"flow-pomdp", "Flow-control optimal stopping POMDP",
                 {{"L", d.L}, {"p", d.p}, {"R_sla", d.R_sla}, {"R_st", d.R_st},
                  {"R_int", d.R_int}, {"gamma", d.gamma}, {"obs", FlowObservationDefaults()}},
                 [](const json& p) {
                   const auto cfg = flow::PomdpConfig::FromJson(p);
                   ModelInstance m = Finish("flow-pomdp", p, flow::BuildPomdp(cfg));
                   m.intrusion_mask = flow::IntrusionMask(cfg.L);
                   return m;
                 }});
  }
  {
    const flow::BeliefGameConfig d;
    r.push_back({"flow-game", "Flow-control zero-sum stopping game",
                 {{"L", d.game.L}, {"phi", flow::GameConfig::DefaultPhi(d.game.L)},
                  {"R_st", d.game.R_st}, {"R_cost", d.game.R_cost}, {"R_int", d.game.R_int},
                  {"gamma", d.game.gamma}, {"obs", FlowObservationDefaults()},
                  {"grid", d.grid}, {"q_nominal", d.q_nominal}},
                 [](const json& p) {
                   const auto cfg = flow::BeliefGameConfig::FromJson(p);
                   ModelInstance m = Finish("flow-game", p, flow::BuildGame(cfg.game));
                   m.intrusion_mask = flow::IntrusionMask(cfg.game.L);
                   m.belief_game = std::make_shared<const flow::BeliefGame>(cfg);
                   return m;
                 }});
  }
  {
    const segmentation::Config d;
    r.push_back({"segmentation-game", "Network segmentation zero-sum game",
                 {{"graph", d.graph.ToJson()}, {"eta", d.eta}, {"gamma", d.gamma},
                  {"p_recon", d.p_recon}, {"p_compromise", d.p_compromise},
                  {"alert_model", d.alert_model}, {"max_nodes", d.max_nodes},
                  {"max_rows", d.max_rows}},
                 [](const json& p) {
                   return Finish("segmentation-game", p,
                                 segmentation::Build(segmentation::Config::FromJson(p)));
                 }});
  }
  {
    const replication::Config d;
    const json defaults = {{"s_max", d.s_max},         {"N_1", d.N_1},
                           {"kernel_source", d.kernel_source}, {"kernel_path", d.kernel_path},
                           {"fail_prob", d.fail_prob}, {"add_prob", d.add_prob},
                           {"epsilon_A", d.epsilon_A}, {"p_A", d.p_A},
                           {"r_min", d.r_min},         {"lambda", d.lambda},
                           {"gamma", d.gamma}};
    r.push_back({"replication-mdp", "Replication control MDP", defaults, [](const json& p) {
                   return Finish("replication-mdp", p,
                                 replication::BuildMdp(replication::Config::FromJson(p)));
                 }});
    r.push_back({"replication-game", "Replication control zero-sum game", defaults,
                 [](const json& p) {
                   return Finish("replication-game", p,
                                 replication::BuildGame(replication::Config::FromJson(p)));
                 }});
  }
  {
    const auto d = recovery::Config::Default();
    json edges = json::array();
    for (const auto& [a, b] : d.edges) edges.push_back({a, b});
    r.push_back({"recovery-pomdp", "Replica recovery POMDP",
                 {{"K", d.K}, {"edges", edges}, {"obs_per_replica", d.obs_per_replica},
                  {"gamma", d.gamma}, {"max_replicas", d.max_replicas}},
                 [](const json& p) {
                   const auto cfg = recovery::Config::FromJson(p);
                   ModelInstance m = Finish("recovery-pomdp", p, recovery::Build(cfg));
                   m.replicas = cfg.K;
                   m.obs_per_replica = cfg.obs_per_replica;
                   return m;
                 }});
  }
  return r;
}

}  // namespace

const std::vector<ModelEntry>& ModelRegistry() {
  static const std::vector<ModelEntry> registry = MakeRegistry();
  return registry;
}

const ModelEntry& FindModel(const std::string& name) {
  for (const auto& e : ModelRegistry()) {
    if (e.name == name) return e;
  }
  Fail(ErrorCode::kUnknownModel, "no registered model named '" + name + "'");
}

ModelInstance BuildModel(const std::string& name, const nlohmann::json& params) {
  return FindModel(name).build(params.is_null() ? json::object() : params);
}

nlohmann::json ModelsJson() {
  json out = json::array();
  for (const auto& e : ModelRegistry()) {
    const bool game = e.name.find("-game") != std::string::npos;
    out.push_back({{"name", e.name},
                   {"description", e.description},
                   {"kind", game ? "game" : (e.name == "replication-mdp" ? "mdp" : "pomdp")},
                   {"parameters", e.parameters}});
  }
  return out;
}

}  // namespace secrl::experiment
