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

#ifndef SECRL_USECASES_FLOW_H_
#define SECRL_USECASES_FLOW_H_

#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"
#include "secrl/sysid/mixture.h"

namespace secrl::flow {

inline constexpr int kContinue = 0;
inline constexpr int kStop = 1;

// Alert-count observation model shared by the flow POMDP and game. The raw
// count space (default 0..22000) is compressed into `bins` equal-width bins.
// An explicit two-row table, z(.|0) then z(.|1), overrides the mixtures.
struct ObservationConfig {
  int bins = 100;
  sysid::MixtureModel no_intrusion;
  sysid::MixtureModel intrusion;
  std::vector<std::vector<double>> table;

  static ObservationConfig Default();
  // z(o|s) rows for s = 0 and s = 1.
  std::vector<std::vector<double>> Rows() const;
  std::vector<std::string> Names() const;
};

struct PomdpConfig {
  int L = 3;
  double p = 0.01;
  double R_sla = 1.0;
  double R_st = 5.0;
  double R_int = -10.0;
  double gamma = 0.99;
  ObservationConfig obs = ObservationConfig::Default();

  void Validate() const;
  static PomdpConfig FromJson(const nlohmann::json& doc);
};

struct GameConfig {
  int L = 3;
  // phi[k] is the stop-success probability after k stops have been taken,
  // so it is indexed by L - l and must be nondecreasing.
  std::vector<double> phi;
  double R_st = 5.0;
  double R_cost = -1.0;
  double R_int = -10.0;
  double gamma = 0.99;
  ObservationConfig obs = ObservationConfig::Default();

  // phi for l stops remaining.
  double PhiAt(int l) const { return phi[L - l]; }
  void Validate() const;
  static GameConfig FromJson(const nlohmann::json& doc);
  static std::vector<double> DefaultPhi(int L);
};

// States are (s, l) for s in {0, 1}, l in 1..L, plus a terminal state.
inline int StateIndex(int L, int s, int l) { return s * L + (l - 1); }
inline int TerminalIndex(int L) { return 2 * L; }
inline int InitialIndex(int L) { return StateIndex(L, 0, L); }

ModelKernel BuildPomdp(const PomdpConfig& cfg);
ModelKernel BuildGame(const GameConfig& cfg);

// 1 for intrusion states (s = 1), 0 elsewhere.
std::vector<char> IntrusionMask(int L);

// Stop iff the belief mass on intrusion states strictly exceeds alpha.
ThresholdStrategy MakeThresholdStrategy(double alpha, int L);

// Game attacker that starts an intrusion with probability q in state 0 and
// never aborts it.
TabularStrategy StationaryAttacker(int L, double q);

}  // namespace secrl::flow

#endif  // SECRL_USECASES_FLOW_H_
