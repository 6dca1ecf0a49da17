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

#include "secrl/experiment/config.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"

namespace secrl::experiment {
namespace {

using nlohmann::json;

bool Contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Runs f, re-raising any library error as ConfigError under `path`.
template <typename F>
auto AtPath(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, path + "." + e.detail());
  }
}

void RequireOneOf(const std::string& path, const std::string& value,
                  const std::vector<std::string>& allowed) {
  if (Contains(allowed, value)) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  Fail(ErrorCode::kConfigError, path + ": '" + value + "' is not one of {" + list + "}");
}

void RequirePositive(const std::string& path, int v) {
  if (v < 1) Fail(ErrorCode::kConfigError, path + ": must be >= 1");
}

}  // namespace

std::string PairingWarning(const std::string& model, const std::string& algorithm) {
  static const std::vector<std::pair<std::string, std::string>> kRecommended = {
      {"flow-pomdp", "spsa"},
      {"replication-mdp", "pg"},
      {"recovery-pomdp", "rollout"},
      {"flow-game", "fictitious-play"},
      {"segmentation-game", "fictitious-play"},
      {"replication-game", "pg"},
      {"flow-pomdp", "threshold-baseline"},
      {"flow-game", "threshold-baseline"},
      {"recovery-pomdp", "alert-baseline"},
  };
  for (const auto& [m, a] : kRecommended) {
    if (m == model && a == algorithm) return "";
  }
  return "algorithm '" + algorithm + "' is not a recommended pairing for model '" + model + "'";
}

AlgorithmSettings AlgorithmSettings::FromJson(const std::string& algorithm, const json& doc) {
  const std::string root = "algorithm_params";
  if (!doc.is_null() && !doc.is_object()) {
    Fail(ErrorCode::kConfigError, root + ": must be a JSON object");
  }
  std::vector<std::string> keys;
  if (algorithm == "spsa") {
    keys = {"spsa", "episodes_per_evaluation", "eval_every", "eval_episodes",
            "max_episode_steps", "theta0"};
  } else if (algorithm == "threshold-baseline") {
    keys = {"alpha", "eval_episodes", "max_episode_steps"};
  } else if (algorithm == "alert-baseline") {
    keys = {"quantiles", "priority_threshold", "eval_episodes", "max_episode_steps"};
  } else if (algorithm == "rollout") {
    keys = {"rollout", "base", "base_alpha", "eval_episodes", "max_episode_steps"};
  } else if (algorithm == "pg") {
    keys = {"pg", "features"};
  } else {
    keys = {"rounds", "eval_every", "defender_responder", "attacker_responder", "spsa", "pg",
            "features"};
  }
  AlgorithmSettings s;
  AtPath(root, [&] {
    JsonCheckKeys(doc, keys);
    s.eval_episodes = JsonGetOr<int>(doc, "eval_episodes", s.eval_episodes);
    s.max_episode_steps = JsonGetOr<int>(doc, "max_episode_steps", s.max_episode_steps);
    s.eval_every = JsonGetOr<int>(doc, "eval_every", algorithm == "fictitious-play" ? 1 : 50);
    s.episodes_per_evaluation =
        JsonGetOr<int>(doc, "episodes_per_evaluation", s.episodes_per_evaluation);
    s.theta0 = JsonGetOr<double>(doc, "theta0", s.theta0);
    s.alpha = JsonGetOr<double>(doc, "alpha", s.alpha);
    s.base = JsonGetOr<std::string>(doc, "base", s.base);
    s.base_alpha = JsonGetOr<double>(doc, "base_alpha", s.base_alpha);
    s.features = JsonGetOr<std::string>(doc, "features", s.features);
    s.rounds = JsonGetOr<int>(doc, "rounds", s.rounds);
    s.defender_responder = JsonGetOr<std::string>(doc, "defender_responder", s.defender_responder);
    s.attacker_responder = JsonGetOr<std::string>(doc, "attacker_responder", s.attacker_responder);
    s.quantiles = JsonGetOr<std::vector<double>>(doc, "quantiles", s.quantiles);
    s.priority_threshold = JsonGetOr<int>(doc, "priority_threshold", s.priority_threshold);
    return 0;
  });
  const json empty = json::object();
  auto sub = [&](const char* key) -> const json& {
    return doc.is_object() && doc.contains(key) ? doc[key] : empty;
  };
  s.spsa = AtPath(root + ".spsa", [&] { return SpsaParams::FromJson(sub("spsa")); });
  s.rollout = AtPath(root + ".rollout", [&] { return RolloutParams::FromJson(sub("rollout")); });
  s.pg = AtPath(root + ".pg", [&] { return PgParams::FromJson(sub("pg")); });

  RequirePositive(root + ".eval_episodes", s.eval_episodes);
  RequirePositive(root + ".max_episode_steps", s.max_episode_steps);
  RequirePositive(root + ".eval_every", s.eval_every);
  RequirePositive(root + ".episodes_per_evaluation", s.episodes_per_evaluation);
  RequirePositive(root + ".rounds", s.rounds);
  if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) {
    Fail(ErrorCode::kConfigError, root + ".alpha: must lie in [0, 1]");
  }
  if (!(s.base_alpha >= 0.0 && s.base_alpha <= 1.0)) {
    Fail(ErrorCode::kConfigError, root + ".base_alpha: must lie in [0, 1]");
  }
  if (s.priority_threshold < 0 || s.priority_threshold > 3) {
    Fail(ErrorCode::kConfigError, root + ".priority_threshold: must lie in 0..3");
  }
  RequireOneOf(root + ".base", s.base, {"random", "threshold"});
  RequireOneOf(root + ".features", s.features, {"auto", "state", "belief", "observation"});
  RequireOneOf(root + ".defender_responder", s.defender_responder,
               {"auto", "exact", "pg", "spsa"});
  RequireOneOf(root + ".attacker_responder", s.attacker_responder, {"exact", "pg"});
  return s;
}

ExperimentConfig ExperimentConfig::FromJson(const json& doc) {
  if (!doc.is_object()) Fail(ErrorCode::kConfigError, "config: must be a JSON object");
  AtPath("config", [&] {
    JsonCheckKeys(doc, {"model", "model_params", "algorithm", "algorithm_params", "seeds",
                        "output_dir", "jobs", "record_wall_time"});
    return 0;
  });
  for (const char* key : {"model", "model_params", "algorithm"}) {
    if (!doc.contains(key)) Fail(ErrorCode::kConfigError, std::string(key) + ": missing field");
  }
  ExperimentConfig c;
  auto get = [&](const char* key, auto fallback) {
    return AtPath("config", [&] { return JsonGetOr<decltype(fallback)>(doc, key, fallback); });
  };
  c.model = get("model", std::string());
  RequireOneOf("model", c.model, kModels);
  c.model_params = doc["model_params"];
  if (!c.model_params.is_object()) {
    Fail(ErrorCode::kConfigError, "model_params: must be a JSON object");
  }
  c.algorithm = get("algorithm", std::string());
  RequireOneOf("algorithm", c.algorithm, kAlgorithms);
  c.algorithm_params = doc.contains("algorithm_params") ? doc["algorithm_params"] : json::object();
  c.settings = AlgorithmSettings::FromJson(c.algorithm, c.algorithm_params);
  c.seeds = get("seeds", c.seeds);
  if (c.seeds.empty()) Fail(ErrorCode::kConfigError, "seeds: must not be empty");
  c.output_dir = get("output_dir", c.output_dir);
  c.jobs = get("jobs", c.jobs);
  RequirePositive("jobs", c.jobs);
  c.record_wall_time = get("record_wall_time", c.record_wall_time);
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfigError, "config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfigError, std::string("config: invalid JSON: ") + e.what());
  }
  return FromJson(doc);
}

json ExperimentConfig::ToJson() const {
  return {{"model", model},
          {"model_params", model_params},
          {"algorithm", algorithm},
          {"algorithm_params", algorithm_params.is_null() ? json::object() : algorithm_params},
          {"seeds", seeds},
          {"output_dir", output_dir},
          {"jobs", jobs},
          {"record_wall_time", record_wall_time}};
}

std::vector<uint64_t> ParseSeedList(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      if (item.empty() || item[0] == '-') throw std::invalid_argument("negative");
      seeds.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      Fail(ErrorCode::kConfigError, "--seeds: '" + item + "' is not a nonnegative integer");
    }
  }
  if (seeds.empty()) Fail(ErrorCode::kConfigError, "--seeds: empty list");
  return seeds;
}

}  // namespace secrl::experiment
