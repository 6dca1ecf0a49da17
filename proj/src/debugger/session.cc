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

#include "secrl/debugger/session.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "secrl/core/belief.h"
#include "secrl/core/json_util.h"
#include "secrl/core/kernel_json.h"
#include "secrl/core/validate.h"
#include "secrl/experiment/alert_baseline.h"
#include "secrl/experiment/registry.h"
#include "secrl/usecases/flow.h"

namespace secrl::debugger {
namespace {

using nlohmann::json;

json Labeled(int index, const std::vector<std::string>& names) {
  if (index < 0) return nullptr;
  return {{"index", index}, {"name", names[index]}};
}

StrategyPtr ParseAttacker(const json& spec, const experiment::ModelInstance& model) {
  const ModelKernel& k = *model.kernel;
  if (spec.is_null() || spec == "default") return model.default_attacker;
  if (spec == "uniform") {
    return std::make_shared<TabularStrategy>(TabularStrategy::UniformFeasibleAttacker(k));
  }
  if (spec == "null") {
    return std::make_shared<FixedStrategy>(FixedStrategy::Pure(0, k.num_attacker_actions()));
  }
  if (!spec.is_object() || spec.value("type", "") != "table") {
    Fail(ErrorCode::kInvalidStrategy,
         "attacker: expected \"default\", \"uniform\", \"null\" or {\"type\": \"table\"}");
  }
  std::vector<double> table;
  try {
    table = spec.at("table").get<std::vector<double>>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kInvalidStrategy, "attacker.table: expected a flat array of numbers");
  }
  const int ns = k.num_states(), na = k.num_attacker_actions();
  if (table.size() != static_cast<std::size_t>(ns) * na) {
    Fail(ErrorCode::kInvalidStrategy, "attacker.table: expected num_states x num_attacker_actions");
  }
  for (int s = 0; s < ns; ++s) {
    double sum = 0.0;
    for (int a = 0; a < na; ++a) {
      const double p = table[static_cast<std::size_t>(s) * na + a];
      if (!(p >= 0.0)) Fail(ErrorCode::kInvalidStrategy, "attacker.table: negative entry");
      if (p > 0.0 && !k.AttackerFeasible(s, a)) {
        Fail(ErrorCode::kInvalidStrategy, "attacker.table: mass on an infeasible action in state " +
                                              k.state_names()[s]);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      Fail(ErrorCode::kInvalidStrategy, "attacker.table: row " + std::to_string(s) +
                                            " does not sum to 1");
    }
  }
  return std::make_shared<TabularStrategy>(ns, na, std::move(table));
}

StrategyPtr ParseDefender(const json& spec, const experiment::ModelInstance& model,
                          std::vector<char>& mask) {
  if (spec.is_null()) return nullptr;
  const ModelKernel& k = *model.kernel;
  const std::string type = spec.is_object() ? spec.value("type", "") : "";
  if (type == "threshold") {
    if (spec.contains("intrusion_states")) {
      mask.assign(k.num_states(), 0);
      for (const auto& s : spec["intrusion_states"]) {
        if (!s.is_number_integer() || s.get<int>() < 0 || s.get<int>() >= k.num_states()) {
          Fail(ErrorCode::kInvalidStrategy, "defender_strategy.intrusion_states: bad state index");
        }
        mask[s.get<int>()] = 1;
      }
    }
    if (mask.empty()) {
      Fail(ErrorCode::kInvalidStrategy,
           "defender_strategy: threshold needs a flow model or intrusion_states");
    }
    if (k.num_defender_actions() != 2) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy: threshold needs two defender actions");
    }
    const double alpha = spec.value("alpha", 0.75);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy.alpha: must lie in [0, 1]");
    }
    return std::make_shared<ThresholdStrategy>(alpha, mask, flow::kStop, flow::kContinue, 2);
  }
  if (type == "table") {
    if (!k.fully_observed()) {
      Fail(ErrorCode::kInvalidStrategy,
           "defender_strategy: state tables need a fully observed model");
    }
    std::vector<double> table;
    try {
      table = spec.at("table").get<std::vector<double>>();
    } catch (const json::exception&) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy.table: expected an array of numbers");
    }
    if (table.size() != static_cast<std::size_t>(k.num_states()) * k.num_defender_actions()) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy.table: wrong size");
    }
    try {
      return std::make_shared<TabularStrategy>(k.num_states(), k.num_defender_actions(),
                                               std::move(table));
    } catch (const Error& e) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy.table: " + e.detail());
    }
  }
  if (type == "alert-baseline") {
    if (model.replicas == 0) {
      Fail(ErrorCode::kInvalidStrategy, "defender_strategy: alert-baseline needs recovery-pomdp");
    }
    const auto& safe = model.obs_per_replica[0];
    return std::make_shared<experiment::AlertBaselineStrategy>(
        model.replicas, static_cast<int>(safe.size()), experiment::PriorityCutpoints(safe),
        spec.value("priority_threshold", static_cast<int>(experiment::kMedium)));
  }
  Fail(ErrorCode::kInvalidStrategy,
       "defender_strategy.type: expected threshold, table or alert-baseline");
}

experiment::ModelInstance ModelFromBody(const json& body) {
  if (body.contains("kernel")) {
    ModelKernel kernel = [&] {
      try {
        return KernelFromJson(body["kernel"]);
      } catch (const Error& e) {
        Fail(ErrorCode::kUnknownModel, "kernel: " + e.detail());
      }
    }();
    const ValidationReport report = ValidateKernel(kernel);
    if (!report.ok()) {
      json items = json::array();
      for (const auto& v : report.violations) {
        items.push_back({{"kind", ViolationKindName(v.kind)},
                         {"index", v.index},
                         {"deviation", v.deviation}});
      }
      throw ReportError(ErrorCode::kUnknownModel, "uploaded kernel failed validation", items);
    }
    experiment::ModelInstance m;
    m.name = "uploaded";
    m.params = json::object();
    m.kernel = std::make_shared<const ModelKernel>(std::move(kernel));
    if (m.kernel->is_game()) {
      m.default_attacker = std::make_shared<TabularStrategy>(
          TabularStrategy::UniformFeasibleAttacker(*m.kernel));
    } else {
      m.default_attacker = std::make_shared<FixedStrategy>(FixedStrategy::Pure(0, 1));
    }
    return m;
  }
  if (!body.contains("model") || !body["model"].is_string()) {
    Fail(ErrorCode::kUnknownModel, "model: expected a registered model name or a kernel");
  }
  const std::string name = body["model"].get<std::string>();
  experiment::FindModel(name);
  const json params = body.contains("model_params") ? body["model_params"] : json::object();
  try {
    return experiment::BuildModel(name, params);
  } catch (const Error& e) {
    Fail(ErrorCode::kInvalidConfig, "model_params." + e.detail());
  }
}

}  // namespace

EpisodeSession::EpisodeSession(std::string id, std::string model_name,
                               std::shared_ptr<const ModelKernel> kernel, StrategyPtr attacker,
                               StrategyPtr defender_strategy, std::vector<char> intrusion_mask,
                               uint64_t seed)
    : id_(std::move(id)),
      model_name_(std::move(model_name)),
      kernel_(std::move(kernel)),
      attacker_(std::move(attacker)),
      defender_strategy_(std::move(defender_strategy)),
      intrusion_mask_(std::move(intrusion_mask)),
      seed_(seed),
      rng_(DeriveSeed(seed, {0xdeb})) {
  belief_ = kernel_->initial_belief();
  attacker_table_ = StateActionTable(*attacker_, kernel_->num_states());
  state_ = SampleIndex(belief_, rng_);
  done_ = kernel_->IsTerminal(state_);
  Publish();
}

void EpisodeSession::Step(const json& action) {
  if (done_) Fail(ErrorCode::kSessionDone, "session " + id_ + " has finished");
  const auto& names = kernel_->defender_action_names();
  int d = -1;
  if (action.is_number_integer()) {
    d = action.get<int>();
  } else if (action.is_string()) {
    const auto it = std::find(names.begin(), names.end(), action.get<std::string>());
    if (it != names.end()) d = static_cast<int>(it - names.begin());
  }
  if (d < 0 || d >= kernel_->num_defender_actions()) {
    Fail(ErrorCode::kIllegalAction, "defender_action: " + action.dump() +
                                        " is not a defender action of this model");
  }
  InfoState ainfo;
  ainfo.state = state_;
  ainfo.time = t_;
  const int a = SampleAction(*attacker_, ainfo, rng_);
  const double r = kernel_->Reward(state_, d, a);
  const int next = kernel_->SampleNextState(state_, d, a, rng_);
  const int o = kernel_->SampleObservation(next, rng_);
  std::vector<double> predicted = PredictBelief(belief_, d, *kernel_, attacker_table_);
  try {
    const Belief b = ConditionBelief(predicted, o, *kernel_);
    belief_.assign(b.probs().begin(), b.probs().end());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroLikelihood) throw;
    belief_ = std::move(predicted);
  }
  history_.push_back({d, a, o, r});
  cumulative_ += r;
  discounted_ += discount_ * r;
  discount_ *= kernel_->discount();
  state_ = next;
  observation_ = o;
  ++t_;
  done_ = kernel_->IsTerminal(state_);
  Publish();
}

void EpisodeSession::Publish() {
  const ModelKernel& k = *kernel_;
  auto snap = std::make_shared<json>();
  json& j = *snap;
  j["id"] = id_;
  j["model"] = model_name_;
  j["seed"] = seed_;
  j["t"] = t_;
  j["done"] = done_;
  j["belief"] = belief_;
  if (!intrusion_mask_.empty()) {
    double mass = 0.0;
    for (std::size_t s = 0; s < belief_.size(); ++s) mass += intrusion_mask_[s] ? belief_[s] : 0.0;
    j["intrusion_mass"] = mass;
  }
  j["state_names"] = k.state_names();
  j["observation"] = Labeled(observation_, k.observation_names());
  j["reward"] = history_.empty() ? json(nullptr) : json(history_.back().reward);
  j["cumulative_reward"] = cumulative_;
  j["discounted_return"] = discounted_;
  json hist = json::array();
  for (const auto& h : history_) {
    hist.push_back({{"defender_action", Labeled(h.defender_action, k.defender_action_names())},
                    {"attacker_action", Labeled(h.attacker_action, k.attacker_action_names())},
                    {"observation", Labeled(h.observation, k.observation_names())},
                    {"reward", h.reward}});
  }
  j["history"] = std::move(hist);
  json actions = json::array();
  for (int d = 0; d < k.num_defender_actions(); ++d) {
    actions.push_back({{"index", d}, {"name", k.defender_action_names()[d]}, {"enabled", !done_}});
  }
  j["defender_actions"] = std::move(actions);
  const bool terminal = k.IsTerminal(state_);
  j["attacker_view"] = {
      {"state", state_},
      {"state_name", terminal ? std::string("\xE2\x88\x85") : k.state_names()[state_]},
      {"terminal", terminal},
      {"last_action", history_.empty()
                          ? json(nullptr)
                          : Labeled(history_.back().attacker_action, k.attacker_action_names())}};
  j["suggested"] = nullptr;
  if (defender_strategy_ && !done_) {
    InfoState info;
    info.state = k.fully_observed() ? state_ : -1;
    info.belief = belief_;
    info.observation = observation_;
    info.time = t_;
    std::vector<double> probs(defender_strategy_->num_actions());
    defender_strategy_->ActionProbabilities(info, probs);
    const int best = static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    j["suggested"] = Labeled(best, k.defender_action_names());
  }
  std::atomic_store(&snapshot_, std::shared_ptr<const json>(std::move(snap)));
}

SessionManager::SessionManager(std::chrono::seconds idle_ttl)
    : ttl_(idle_ttl), nonce_(std::random_device{}()) {
  nonce_ = (nonce_ << 32) ^ std::random_device{}();
}

json SessionManager::Create(const json& body) {
  PurgeExpired();
  if (!body.is_object()) Fail(ErrorCode::kInvalidConfig, "request body must be a JSON object");
  experiment::ModelInstance model = ModelFromBody(body);
  const StrategyPtr attacker =
      ParseAttacker(body.contains("attacker") ? body["attacker"] : json(nullptr), model);
  std::vector<char> mask = model.intrusion_mask;
  const StrategyPtr defender = ParseDefender(
      body.contains("defender_strategy") ? body["defender_strategy"] : json(nullptr), model, mask);
  std::string id;
  uint64_t seed;
  {
    std::unique_lock lock(mu_);
    const uint64_t n = counter_++;
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(DeriveSeed(nonce_, {n})));
    id = buf;
    // Without an explicit seed every session gets its own stream from its id.
    seed = DeriveSeed(nonce_, {n, 1});
  }
  if (body.contains("seed")) {
    try {
      seed = body["seed"].get<uint64_t>();
    } catch (const json::exception&) {
      Fail(ErrorCode::kInvalidConfig, "seed: expected a nonnegative integer");
    }
  }
  auto session = std::make_shared<EpisodeSession>(id, model.name, model.kernel, attacker, defender,
                                                  mask, seed);
  json snap = *session->snapshot();
  std::unique_lock lock(mu_);
  sessions_[id] = {std::move(session), std::chrono::steady_clock::now()};
  return snap;
}

std::shared_ptr<EpisodeSession> SessionManager::Find(const std::string& id) {
  std::unique_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) Fail(ErrorCode::kUnknownSession, "no session '" + id + "'");
  it->second.last_access = std::chrono::steady_clock::now();
  return it->second.session;
}

json SessionManager::Step(const std::string& id, const json& body) {
  auto session = Find(id);
  if (!body.is_object() || !body.contains("defender_action")) {
    Fail(ErrorCode::kIllegalAction, "defender_action: missing field");
  }
  std::lock_guard<std::mutex> lock(session->mutex());
  session->Step(body["defender_action"]);
  return *session->snapshot();
}

json SessionManager::Snapshot(const std::string& id) { return *Find(id)->snapshot(); }

void SessionManager::Delete(const std::string& id) {
  std::unique_lock lock(mu_);
  if (sessions_.erase(id) == 0) Fail(ErrorCode::kUnknownSession, "no session '" + id + "'");
}

json SessionManager::Models() const { return experiment::ModelsJson(); }

std::size_t SessionManager::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

std::size_t SessionManager::PurgeExpired() {
  const auto now = std::chrono::steady_clock::now();
  std::unique_lock lock(mu_);
  return std::erase_if(sessions_, [&](const auto& kv) {
    return now - kv.second.last_access > ttl_;
  });
}

}  // namespace secrl::debugger
