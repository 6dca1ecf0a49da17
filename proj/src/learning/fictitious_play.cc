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

#include "secrl/learning/fictitious_play.h"

#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/random.h"

namespace secrl {
namespace {

TabularStrategy ObservationPolicyTable(const ModelKernel& kernel, const Strategy& policy) {
  const int ns = kernel.num_states();
  const int nd = policy.num_actions();
  std::vector<double> table(static_cast<std::size_t>(ns) * nd, 0.0), probs(nd);
  for (int o = 0; o < kernel.num_observations(); ++o) {
    InfoState info;
    info.observation = o;
    policy.ActionProbabilities(info, probs);
    for (int s = 0; s < ns; ++s) {
      const double z = kernel.ObservationProb(s, o);
      if (z == 0.0) continue;
      for (int d = 0; d < nd; ++d) table[static_cast<std::size_t>(s) * nd + d] += z * probs[d];
    }
  }
  return TabularStrategy(ns, nd, std::move(table));
}

}  // namespace

FictitiousPlayResult FictitiousPlay(const ModelKernel& kernel, const Responder& defender,
                                    const Responder& attacker, const FictitiousPlayParams& params,
                                    const ExploitabilityFn& exploitability) {
  if (params.rounds < 1 || params.eval_every < 1) {
    Fail(ErrorCode::kInvalidConfig, "fictitious_play: rounds and eval_every must be >= 1");
  }
  const int ns = kernel.num_states();
  FictitiousPlayResult r{TabularStrategy::Uniform(ns, kernel.num_defender_actions()),
                         TabularStrategy::UniformFeasibleAttacker(kernel),
                         {}};
  for (int t = 1; t <= params.rounds; ++t) {
    TabularStrategy def_br = defender(r.attacker, t);
    TabularStrategy att_br = attacker(r.defender, t);
    const double w = 1.0 / t;
    r.defender.BlendToward(def_br, w);
    r.attacker.BlendToward(att_br, w);
    if (t % params.eval_every == 0 || t == params.rounds) {
      const Exploitability e = exploitability ? exploitability(r.defender, r.attacker)
                                              : ComputeExploitability(kernel, r.defender, r.attacker);
      r.curve.push_back({t, e.total(), e.defender_gain, e.attacker_gain, e.value});
    }
    if (params.on_round) params.on_round(t);
  }
  return r;
}

Responder ExactDpResponder(const ModelKernel& kernel, Player player) {
  return [&kernel, player](const TabularStrategy& opponent, int) {
    return BestResponse(kernel, opponent, player).strategy;
  };
}

ModelKernel InducedResponderKernel(const ModelKernel& kernel, Player player,
                                   std::span<const double> opponent_table) {
  const int ns = kernel.num_states();
  const int nd = kernel.num_defender_actions();
  const int na = kernel.num_attacker_actions();
  const bool att = player == Player::kAttacker;
  const int nb = att ? na : nd;
  const int no = att ? nd : na;
  const std::vector<std::string>& names =
      att ? kernel.attacker_action_names() : kernel.defender_action_names();
  KernelBuilder b(kernel.state_names(), names);
  for (int s = 0; s < ns; ++s) {
    for (int x = 0; x < nb; ++x) {
      std::vector<Successor> row;
      double reward = 0.0;
      for (int y = 0; y < no; ++y) {
        const double w = opponent_table[static_cast<std::size_t>(s) * no + y];
        if (w == 0.0) continue;
        const int d = att ? y : x;
        const int a = att ? x : y;
        reward += w * (att ? -kernel.Reward(s, d, a) : kernel.Reward(s, d, a));
        for (const Successor& e : kernel.Transitions(s, d, a)) row.push_back({e.next, w * e.prob});
      }
      b.SetTransition(s, x, 0, std::move(row));
      b.SetReward(s, x, 0, reward);
    }
  }
  if (att || kernel.fully_observed()) {
    b.SetFullyObserved();
  } else {
    std::vector<double> table;
    for (int s = 0; s < ns; ++s) {
      auto row = kernel.ObservationRow(s);
      table.insert(table.end(), row.begin(), row.end());
    }
    b.SetObservations(kernel.observation_names(), std::move(table));
  }
  for (int s : kernel.terminal_states()) b.MarkTerminal(s);
  b.SetDiscount(kernel.discount());
  b.SetInitialBelief(kernel.initial_belief());
  return b.Build();
}

Responder PgResponder(const ModelKernel& kernel, Player player, PgParams params) {
  return [&kernel, player, params](const TabularStrategy& opponent, int round) {
    const ModelKernel induced = InducedResponderKernel(kernel, player, opponent.table());
    PgParams p = params;
    p.seed = DeriveSeed(params.seed, {static_cast<uint64_t>(round)});
    const FixedStrategy passive = FixedStrategy::Pure(0, 1);
    const FeatureKind features =
        induced.fully_observed() ? FeatureKind::kStateOneHot : FeatureKind::kObservationOneHot;
    const PgResult trained = TrainPg(induced, passive, features, p);
    if (features == FeatureKind::kStateOneHot) {
      return TabularStrategy::FromStrategy(*trained.policy, kernel.num_states());
    }
    return ObservationPolicyTable(kernel, *trained.policy);
  };
}

Responder ThresholdSpsaResponder(const ModelKernel& kernel,
                                 std::function<TabularStrategy(double alpha)> family,
                                 SpsaParams params) {
  return [&kernel, family = std::move(family), params](const TabularStrategy& opponent,
                                                       int round) {
    auto objective = [&](std::span<const double> theta, uint64_t) {
      const TabularStrategy d = family(Sigmoid(theta[0]));
      return InitialValue(kernel, EvaluatePolicy(kernel, d, opponent));
    };
    SpsaParams p = params;
    p.seed = DeriveSeed(params.seed, {static_cast<uint64_t>(round)});
    p.evaluate_iterates = false;
    const SpsaResult res = SpsaOptimize(objective, {0.0}, {-10.0}, {10.0}, p);
    return family(Sigmoid(res.theta[0]));
  };
}

}  // namespace secrl
