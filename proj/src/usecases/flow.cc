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

#include "secrl/usecases/flow.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"

namespace secrl::flow {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) Fail(ErrorCode::kInvalidConfig, what);
}

std::vector<std::string> StateNames(int L) {
  std::vector<std::string> names;
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) names.push_back("s" + std::to_string(s) + "_l" + std::to_string(l));
  }
  names.push_back("terminal");
  return names;
}

void CheckObservation(const ObservationConfig& obs) {
  auto rows = obs.Rows();
  Require(rows.size() == 2 && rows[0].size() == rows[1].size() && !rows[0].empty(),
          "obs: need two rows of equal, nonzero length");
  for (const auto& row : rows) {
    double total = 0.0;
    for (double v : row) {
      Require(v >= 0.0, "obs: entries must be nonnegative");
      total += v;
    }
    Require(std::abs(total - 1.0) <= 1e-9, "obs: rows must sum to 1");
  }
}

ObservationConfig ObservationFromJson(const nlohmann::json& doc) {
  ObservationConfig obs = ObservationConfig::Default();
  if (doc.is_null()) return obs;
  JsonCheckKeys(doc, {"bins", "no_intrusion", "intrusion", "table"});
  obs.bins = JsonGetOr<int>(doc, "bins", obs.bins);
  if (doc.contains("no_intrusion")) obs.no_intrusion = sysid::MixtureFromJson(doc["no_intrusion"]);
  if (doc.contains("intrusion")) obs.intrusion = sysid::MixtureFromJson(doc["intrusion"]);
  obs.table = JsonGetOr<std::vector<std::vector<double>>>(doc, "table", {});
  return obs;
}

// Observation table over all states; the terminal row copies s = 0.
std::vector<double> ObservationTable(const ObservationConfig& obs, int L) {
  auto rows = obs.Rows();
  std::vector<double> table;
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) table.insert(table.end(), rows[s].begin(), rows[s].end());
  }
  table.insert(table.end(), rows[0].begin(), rows[0].end());
  return table;
}

}  // namespace

ObservationConfig ObservationConfig::Default() {
  // Implementer-chosen shapes over 0..22000: one component without intrusion,
  // three with intrusion; both concentrated below 5000, with the intrusion
  // mixture carrying extra mass at larger counts.
  ObservationConfig obs;
  obs.no_intrusion = {{{1.0, 1500.0, 900.0}}, 0, 22000};
  obs.intrusion = {{{0.55, 3000.0, 1300.0}, {0.3, 9000.0, 2500.0}, {0.15, 16000.0, 3000.0}},
                   0,
                   22000};
  return obs;
}

std::vector<std::vector<double>> ObservationConfig::Rows() const {
  if (!table.empty()) return table;
  return {sysid::DiscretizeMixtureBinned(no_intrusion, bins),
          sysid::DiscretizeMixtureBinned(intrusion, bins)};
}

std::vector<std::string> ObservationConfig::Names() const {
  std::vector<std::string> names;
  if (!table.empty()) {
    for (std::size_t o = 0; o < table[0].size(); ++o) names.push_back(std::to_string(o));
    return names;
  }
  const int64_t range = no_intrusion.support_max - no_intrusion.support_min + 1;
  const int64_t width = (range + bins - 1) / bins;
  for (int b = 0; b < bins; ++b) {
    const int64_t lo = no_intrusion.support_min + b * width;
    const int64_t hi = std::min(no_intrusion.support_max, lo + width - 1);
    names.push_back(std::to_string(lo) + "-" + std::to_string(hi));
  }
  return names;
}

void PomdpConfig::Validate() const {
  Require(L >= 1, "L: must be >= 1");
  Require(p > 0.0 && p < 1.0, "p: must lie in (0, 1)");
  Require(R_st > 0.0, "R_st: must be > 0");
  Require(R_sla > 0.0, "R_sla: must be > 0");
  Require(R_int < 0.0, "R_int: must be < 0");
  Require(gamma >= 0.0 && gamma < 1.0, "gamma: must lie in [0, 1)");
  CheckObservation(obs);
}

PomdpConfig PomdpConfig::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"L", "p", "R_sla", "R_st", "R_int", "gamma", "obs"});
  PomdpConfig c;
  c.L = JsonGetOr<int>(doc, "L", c.L);
  c.p = JsonGetOr<double>(doc, "p", c.p);
  c.R_sla = JsonGetOr<double>(doc, "R_sla", c.R_sla);
  c.R_st = JsonGetOr<double>(doc, "R_st", c.R_st);
  c.R_int = JsonGetOr<double>(doc, "R_int", c.R_int);
  c.gamma = JsonGetOr<double>(doc, "gamma", c.gamma);
  if (doc.is_object() && doc.contains("obs")) c.obs = ObservationFromJson(doc["obs"]);
  c.Validate();
  return c;
}

std::vector<double> GameConfig::DefaultPhi(int L) {
  std::vector<double> phi;
  for (int k = 0; k < L; ++k) phi.push_back(std::min(0.9, 0.3 * (k + 1)));
  return phi;
}

void GameConfig::Validate() const {
  Require(L >= 1, "L: must be >= 1");
  Require(static_cast<int>(phi.size()) == L, "phi: must have L entries");
  for (std::size_t k = 0; k < phi.size(); ++k) {
    Require(phi[k] >= 0.0 && phi[k] <= 1.0, "phi: entries must lie in [0, 1]");
    if (k > 0) Require(phi[k] >= phi[k - 1], "phi: must be nondecreasing in stops taken");
  }
  Require(R_st > 0.0, "R_st: must be > 0");
  Require(R_cost < 0.0, "R_cost: must be < 0");
  Require(R_int < 0.0, "R_int: must be < 0");
  Require(gamma >= 0.0 && gamma < 1.0, "gamma: must lie in [0, 1)");
  CheckObservation(obs);
}

GameConfig GameConfig::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"L", "phi", "R_st", "R_cost", "R_int", "gamma", "obs"});
  GameConfig c;
  c.L = JsonGetOr<int>(doc, "L", c.L);
  c.phi = JsonGetOr<std::vector<double>>(doc, "phi", DefaultPhi(std::max(c.L, 1)));
  c.R_st = JsonGetOr<double>(doc, "R_st", c.R_st);
  c.R_cost = JsonGetOr<double>(doc, "R_cost", c.R_cost);
  c.R_int = JsonGetOr<double>(doc, "R_int", c.R_int);
  c.gamma = JsonGetOr<double>(doc, "gamma", c.gamma);
  if (doc.is_object() && doc.contains("obs")) c.obs = ObservationFromJson(doc["obs"]);
  c.Validate();
  return c;
}

ModelKernel BuildPomdp(const PomdpConfig& cfg) {
  cfg.Validate();
  const int L = cfg.L;
  const int term = TerminalIndex(L);
  KernelBuilder b(StateNames(L), {"continue", "stop"});
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) {
      const int x = StateIndex(L, s, l);
      for (int a : {kContinue, kStop}) {
        const int next_l = l - a;
        if (next_l == 0) {
          b.SetTransition(x, a, 0, {{term, 1.0}});
        } else if (s == 0) {
          b.SetTransition(x, a, 0,
                          {{StateIndex(L, 0, next_l), 1.0 - cfg.p}, {StateIndex(L, 1, next_l), cfg.p}});
        } else {
          b.SetTransition(x, a, 0, {{StateIndex(L, 1, next_l), 1.0}});
        }
      }
      b.SetReward(x, kContinue, 0, cfg.R_sla + s * cfg.R_int / L);
      b.SetReward(x, kStop, 0, s * cfg.R_st / L);
    }
  }
  b.SetTransition(term, kContinue, 0, {{term, 1.0}});
  b.SetTransition(term, kStop, 0, {{term, 1.0}});
  b.MarkTerminal(term);
  b.SetObservations(cfg.obs.Names(), ObservationTable(cfg.obs, L));
  b.SetDiscount(cfg.gamma);
  std::vector<double> b1(2 * L + 1, 0.0);
  b1[InitialIndex(L)] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

ModelKernel BuildGame(const GameConfig& cfg) {
  cfg.Validate();
  const int L = cfg.L;
  const int term = TerminalIndex(L);
  KernelBuilder b(StateNames(L), {"continue", "stop"}, {"continue", "stop"});
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) {
      const int x = StateIndex(L, s, l);
      const double phi = cfg.PhiAt(l);
      for (int d : {kContinue, kStop}) {
        for (int a : {kContinue, kStop}) {
          const int next_l = l - d;
          if (next_l == 0 || (s == 1 && a == kStop)) {
            b.SetTransition(x, d, a, {{term, 1.0}});
          } else if (s == 0) {
            b.SetTransition(x, d, a, {{StateIndex(L, a == kStop ? 1 : 0, next_l), 1.0}});
          } else {
            b.SetTransition(x, d, a, {{StateIndex(L, 1, next_l), 1.0 - phi}, {term, phi}});
          }
          double r = 0.0;
          if (s == 0 && d == kStop) r = cfg.R_cost / l;
          if (s == 1 && a == kContinue) r = d == kStop ? cfg.R_st / l : cfg.R_int;
          b.SetReward(x, d, a, r);
        }
      }
    }
  }
  for (int d : {kContinue, kStop}) {
    for (int a : {kContinue, kStop}) b.SetTransition(term, d, a, {{term, 1.0}});
  }
  b.MarkTerminal(term);
  b.SetObservations(cfg.obs.Names(), ObservationTable(cfg.obs, L));
  b.SetDiscount(cfg.gamma);
  std::vector<double> b1(2 * L + 1, 0.0);
  b1[InitialIndex(L)] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

std::vector<char> IntrusionMask(int L) {
  std::vector<char> mask(2 * L + 1, 0);
  for (int l = 1; l <= L; ++l) mask[StateIndex(L, 1, l)] = 1;
  return mask;
}

ThresholdStrategy MakeThresholdStrategy(double alpha, int L) {
  return ThresholdStrategy(alpha, IntrusionMask(L), kStop, kContinue, 2);
}

TabularStrategy StationaryAttacker(int L, double q) {
  if (!(q >= 0.0 && q <= 1.0)) Fail(ErrorCode::kInvalidConfig, "q: must lie in [0, 1]");
  const int ns = 2 * L + 1;
  std::vector<double> table(2 * ns, 0.0);
  for (int x = 0; x < ns; ++x) table[2 * x + kContinue] = 1.0;
  for (int l = 1; l <= L; ++l) {
    const int x = StateIndex(L, 0, l);
    table[2 * x + kContinue] = 1.0 - q;
    table[2 * x + kStop] = q;
  }
  return TabularStrategy(ns, 2, table);
}

}  // namespace secrl::flow
