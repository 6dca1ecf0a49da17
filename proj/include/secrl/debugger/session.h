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

#ifndef SECRL_DEBUGGER_SESSION_H_
#define SECRL_DEBUGGER_SESSION_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "secrl/core/error.h"
#include "secrl/core/kernel.h"
#include "secrl/core/random.h"
#include "secrl/core/strategy.h"

namespace secrl::debugger {

// Error carrying a structured attachment (e.g. a kernel validation report).
class ReportError : public Error {
 public:
  ReportError(ErrorCode code, const std::string& detail, nlohmann::json report)
      : Error(code, detail), report_(std::move(report)) {}
  const nlohmann::json& report() const { return report_; }

 private:
  nlohmann::json report_;
};

struct HistoryEntry {
  int defender_action;
  int attacker_action;
  int observation;
  double reward;
};

// A live episode. Steps are serialized by the owning manager; the published
// snapshot is immutable and replaced atomically after every step.
class EpisodeSession {
 public:
  EpisodeSession(std::string id, std::string model_name,
                 std::shared_ptr<const ModelKernel> kernel, StrategyPtr attacker,
                 StrategyPtr defender_strategy, std::vector<char> intrusion_mask, uint64_t seed);

  const std::string& id() const { return id_; }
  // Throws SessionDone or IllegalAction; `action` is an index or a name.
  void Step(const nlohmann::json& action);
  std::shared_ptr<const nlohmann::json> snapshot() const {
    return std::atomic_load(&snapshot_);
  }
  std::mutex& mutex() { return mu_; }

 private:
  void Publish();

  std::string id_;
  std::string model_name_;
  std::shared_ptr<const ModelKernel> kernel_;
  StrategyPtr attacker_;
  StrategyPtr defender_strategy_;
  std::vector<char> intrusion_mask_;
  uint64_t seed_;
  Rng rng_;
  int t_ = 1;
  int state_ = 0;
  int observation_ = -1;
  bool done_ = false;
  double cumulative_ = 0.0;
  double discounted_ = 0.0;
  double discount_ = 1.0;
  std::vector<double> belief_;
  std::vector<double> attacker_table_;
  std::vector<HistoryEntry> history_;
  std::mutex mu_;
  std::shared_ptr<const nlohmann::json> snapshot_;
};

class SessionManager {
 public:
  explicit SessionManager(std::chrono::seconds idle_ttl = std::chrono::minutes(30));

  // Body: {"model": name, "model_params": {...}} or {"kernel": canonical JSON},
  // plus optional "attacker", "defender_strategy" and "seed". Returns the
  // initial snapshot (which carries the session id).
  nlohmann::json Create(const nlohmann::json& body);
  // Body: {"defender_action": index-or-name}.
  nlohmann::json Step(const std::string& id, const nlohmann::json& body);
  nlohmann::json Snapshot(const std::string& id);
  void Delete(const std::string& id);
  nlohmann::json Models() const;

  std::size_t size() const;
  // Drops sessions idle for longer than the TTL; returns how many.
  std::size_t PurgeExpired();

 private:
  struct Slot {
    std::shared_ptr<EpisodeSession> session;
    std::chrono::steady_clock::time_point last_access;
  };
  std::shared_ptr<EpisodeSession> Find(const std::string& id);

  std::chrono::seconds ttl_;
  uint64_t nonce_;
  uint64_t counter_ = 0;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Slot> sessions_;
};

}  // namespace secrl::debugger

#endif  // SECRL_DEBUGGER_SESSION_H_
