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

#include "secrl/usecases/flow_belief_game.h"

#include <algorithm>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"

namespace secrl::flow {
namespace {

int CellOf(double mu, int grid) {
  return std::clamp(static_cast<int>(mu * grid), 0, grid - 1);
}

}  // namespace

BeliefGameConfig BeliefGameConfig::FromJson(const nlohmann::json& doc) {
  BeliefGameConfig c;
  nlohmann::json game = doc.is_object() ? doc : nlohmann::json::object();
  c.grid = JsonGetOr<int>(game, "grid", c.grid);
  c.q_nominal = JsonGetOr<double>(game, "q_nominal", c.q_nominal);
  game.erase("grid");
  game.erase("q_nominal");
  c.game = GameConfig::FromJson(game);
  return c;
}

BeliefGame::BeliefGame(const BeliefGameConfig& cfg) : cfg_(cfg) {
  cfg_.game.Validate();
  if (cfg_.grid < 2 || cfg_.grid > 1000) Fail(ErrorCode::kInvalidConfig, "grid: must lie in [2, 1000]");
  if (!(cfg_.q_nominal > 0.0 && cfg_.q_nominal < 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "q_nominal: must lie in (0, 1)");
  }
  const int L = cfg_.game.L, G = cfg_.grid;
  z_ = cfg_.game.obs.Rows();
  const int no = static_cast<int>(z_[0].size());

  // Quantized filter table.
  next_cell_.assign(static_cast<std::size_t>(L) * 2 * G * no, 0);
  for (int l = 1; l <= L; ++l) {
    const double phi = cfg_.game.PhiAt(l);
    for (int d = 0; d < 2; ++d) {
      for (int g = 0; g < G; ++g) {
        const double mu = Center(g);
        // Prediction conditioned on the game continuing.
        double p0 = (1.0 - mu) * (1.0 - cfg_.q_nominal);
        double p1 = (1.0 - mu) * cfg_.q_nominal + mu * (1.0 - phi);
        for (int o = 0; o < no; ++o) {
          const double w0 = p0 * z_[0][o], w1 = p1 * z_[1][o];
          const double post = w0 + w1 > 0.0 ? w1 / (w0 + w1) : mu;
          next_cell_[((static_cast<std::size_t>(l - 1) * 2 + d) * G + g) * no + o] =
              CellOf(post, G);
        }
      }
    }
  }
  if (cfg_.game.obs.Rows()[0].empty()) Fail(ErrorCode::kInvalidConfig, "obs: empty");

  std::vector<std::string> names;
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) {
      for (int g = 0; g < G; ++g) {
        names.push_back("s" + std::to_string(s) + "_l" + std::to_string(l) + "_g" +
                        std::to_string(g));
      }
    }
  }
  names.push_back("terminal");
  const int term = terminal();
  KernelBuilder b(names, {"continue", "stop"}, {"continue", "stop"});
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= L; ++l) {
      const double phi = cfg_.game.PhiAt(l);
      for (int g = 0; g < G; ++g) {
        const int x = Index(s, l, g);
        for (int d = 0; d < 2; ++d) {
          for (int a = 0; a < 2; ++a) {
            const int nl = l - d;
            double r = 0.0;
            if (s == 0 && d == kStop) r = cfg_.game.R_cost / l;
            if (s == 1 && a == kContinue) r = d == kStop ? cfg_.game.R_st / l : cfg_.game.R_int;
            b.SetReward(x, d, a, r);
            if (nl == 0 || (s == 1 && a == kStop)) {
              b.SetTransition(x, d, a, {{term, 1.0}});
              continue;
            }
            // Underlying successor distribution excluding termination.
            double stay_prob = 1.0;
            int next_s = s == 0 ? (a == kStop ? 1 : 0) : 1;
            std::vector<Successor> row;
            if (s == 1) {
              stay_prob = 1.0 - phi;
              if (phi > 0.0) row.push_back({term, phi});
            }
            if (stay_prob > 0.0) {
              for (int o = 0; o < no; ++o) {
                const double po = z_[next_s][o];
                if (po == 0.0) continue;
                row.push_back({Index(next_s, nl, NextCell(g, l, d, o)), stay_prob * po});
              }
            }
            b.SetTransition(x, d, a, std::move(row));
          }
        }
      }
    }
  }
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) b.SetTransition(term, d, a, {{term, 1.0}});
  }
  b.MarkTerminal(term);
  b.SetFullyObserved();
  b.SetDiscount(cfg_.game.gamma);
  std::vector<double> b1(names.size(), 0.0);
  b1[Index(0, L, 0)] = 1.0;
  b.SetInitialBelief(b1);
  kernel_ = b.Build();
}

int BeliefGame::NextCell(int g, int l, int d, int o) const {
  const int no = static_cast<int>(z_[0].size());
  return next_cell_[((static_cast<std::size_t>(l - 1) * 2 + d) * cfg_.grid + g) * no + o];
}

TabularStrategy BeliefGame::CellThresholdDefender(int k) const {
  const int ns = kernel_.num_states();
  std::vector<double> table(2 * ns, 0.0);
  for (int x = 0; x < ns; ++x) table[2 * x + kContinue] = 1.0;
  for (int s = 0; s < 2; ++s) {
    for (int l = 1; l <= cfg_.game.L; ++l) {
      for (int g = std::max(k, 0); g < cfg_.grid; ++g) {
        const int x = Index(s, l, g);
        table[2 * x + kContinue] = 0.0;
        table[2 * x + kStop] = 1.0;
      }
    }
  }
  return TabularStrategy(ns, 2, table);
}

TabularStrategy BeliefGame::ThresholdDefender(double alpha) const {
  int k = 0;
  while (k < cfg_.grid && !(Center(k) > alpha)) ++k;
  return CellThresholdDefender(k);
}

double BeliefGame::BestThresholdValue(const Strategy& attacker, int* best_k) const {
  double best = 0.0;
  int arg = -1;
  for (int k = 0; k <= cfg_.grid; ++k) {
    const double v = InitialValue(kernel_, EvaluatePolicy(kernel_, CellThresholdDefender(k), attacker));
    if (arg < 0 || v > best + 1e-12 * (1.0 + std::abs(best))) {
      best = v;
      arg = k;
    }
  }
  if (best_k) *best_k = arg;
  return best;
}

BestResponseOracle BeliefGame::ThresholdOracle(
    std::shared_ptr<const Strategy> current_defender) const {
  return [this, current_defender](const ModelKernel& kernel, const Strategy& attacker) {
    double v = BestThresholdValue(attacker);
    if (current_defender) {
      v = std::max(v, InitialValue(kernel, EvaluatePolicy(kernel, *current_defender, attacker)));
    }
    return v;
  };
}

}  // namespace secrl::flow
