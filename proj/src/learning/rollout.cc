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

#include "secrl/learning/rollout.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "secrl/core/belief.h"
#include "secrl/core/bellman.h"
#include "secrl/core/dynamic_programming.h"
#include "secrl/core/error.h"
#include "secrl/core/json_util.h"

namespace secrl {
namespace {

// Per-call context shared by the nested estimators.
struct Context {
  const ModelKernel& kernel;
  const Strategy& base;
  const Strategy& attacker;
  const RolloutParams& params;
  std::vector<double> filter_table;  // attacker model used by belief updates
  bool track_belief;
};

std::vector<double> FilterTable(const ModelKernel& kernel, const Strategy& attacker) {
  if (attacker.IsStateBased()) return StateActionTable(attacker, kernel.num_states());
  const int na = kernel.num_attacker_actions();
  return std::vector<double>(static_cast<std::size_t>(kernel.num_states()) * na, 1.0 / na);
}

std::vector<double> Update(const Context& ctx, std::span<const double> belief, int d, int o) {
  std::vector<double> predicted = PredictBelief(belief, d, ctx.kernel, ctx.filter_table);
  try {
    Belief posterior = ConditionBelief(predicted, o, ctx.kernel);
    return {posterior.probs().begin(), posterior.probs().end()};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroLikelihood) throw;
    double t = 0.0;
    for (double p : predicted) t += p;
    for (double& p : predicted) p /= t;
    return predicted;
  }
}

int AttackerAction(const Context& ctx, int s, Rng& rng) {
  InfoState info;
  info.state = s;
  return SampleAction(ctx.attacker, info, rng);
}

// Discounted return of following the base strategy from state s.
double SimulateBase(const Context& ctx, int s, std::vector<double> belief, int observation,
                    int time, Rng& rng) {
  const ModelKernel& k = ctx.kernel;
  const double gamma = k.discount();
  double ret = 0.0, discount = 1.0;
  for (int t = 0; t < ctx.params.rollout_horizon && !k.IsTerminal(s); ++t) {
    InfoState info;
    info.state = k.fully_observed() ? s : -1;
    info.belief = belief;
    info.observation = observation;
    info.time = time + t;
    const int d = SampleAction(ctx.base, info, rng);
    const int a = AttackerAction(ctx, s, rng);
    ret += discount * k.Reward(s, d, a);
    discount *= gamma;
    s = k.SampleNextState(s, d, a, rng);
    if (!k.fully_observed()) {
      observation = k.SampleObservation(s, rng);
      if (ctx.track_belief) belief = Update(ctx, belief, d, observation);
    }
  }
  return ret;
}

double EstimateQ(const Context& ctx, std::span<const double> belief, int d, int depth, int time,
                 Rng& rng);

double EstimateMax(const Context& ctx, std::span<const double> belief, int depth, int time,
                   Rng& rng) {
  double best = -std::numeric_limits<double>::infinity();
  for (int d = 0; d < ctx.kernel.num_defender_actions(); ++d) {
    best = std::max(best, EstimateQ(ctx, belief, d, depth, time, rng));
  }
  return best;
}

double EstimateQ(const Context& ctx, std::span<const double> belief, int d, int depth, int time,
                 Rng& rng) {
  const ModelKernel& k = ctx.kernel;
  double total = 0.0;
  for (int m = 0; m < ctx.params.mc_samples; ++m) {
    const int s = SampleIndex(belief, rng);
    if (k.IsTerminal(s)) continue;
    const int a = AttackerAction(ctx, s, rng);
    const double r = k.Reward(s, d, a);
    const int next = k.SampleNextState(s, d, a, rng);
    int o = -1;
    std::vector<double> b;
    if (k.fully_observed()) {
      b.assign(k.num_states(), 0.0);
      b[next] = 1.0;
    } else {
      o = k.SampleObservation(next, rng);
      if (ctx.track_belief || depth > 1) b = Update(ctx, belief, d, o);
    }
    double tail;
    if (depth > 1) {
      tail = k.IsTerminal(next) ? 0.0 : EstimateMax(ctx, b, depth - 1, time + 1, rng);
    } else {
      tail = SimulateBase(ctx, next, std::move(b), o, time + 1, rng);
    }
    total += r + k.discount() * tail;
  }
  return total / ctx.params.mc_samples;
}

}  // namespace

void RolloutParams::Validate() const {
  if (rollout_horizon < 1 || lookahead_horizon < 1 || mc_samples < 1) {
    Fail(ErrorCode::kInvalidConfig, "rollout: horizons and mc_samples must be >= 1");
  }
}

RolloutParams RolloutParams::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"rollout_horizon", "lookahead_horizon", "mc_samples", "seed"});
  RolloutParams p;
  p.rollout_horizon = JsonGetOr<int>(doc, "rollout_horizon", p.rollout_horizon);
  p.lookahead_horizon = JsonGetOr<int>(doc, "lookahead_horizon", p.lookahead_horizon);
  p.mc_samples = JsonGetOr<int>(doc, "mc_samples", p.mc_samples);
  p.seed = JsonGetOr<uint64_t>(doc, "seed", p.seed);
  p.Validate();
  return p;
}

std::vector<double> RolloutQ(const ModelKernel& kernel, const Strategy& base,
                             const Strategy& attacker, std::span<const double> belief,
                             const RolloutParams& params, Rng& rng) {
  params.Validate();
  if (belief.size() != static_cast<std::size_t>(kernel.num_states())) {
    Fail(ErrorCode::kShapeMismatch, "rollout: belief has wrong size");
  }
  Context ctx{kernel, base, attacker, params, FilterTable(kernel, attacker),
              base.NeedsBelief() && !kernel.fully_observed()};
  std::vector<double> q(kernel.num_defender_actions());
  for (int d = 0; d < kernel.num_defender_actions(); ++d) {
    q[d] = EstimateQ(ctx, belief, d, params.lookahead_horizon, 1, rng);
  }
  return q;
}

int RolloutAction(const ModelKernel& kernel, const Strategy& base, const Strategy& attacker,
                  std::span<const double> belief, const RolloutParams& params, Rng& rng) {
  const std::vector<double> q = RolloutQ(kernel, base, attacker, belief, params, rng);
  int best = 0;
  for (int d = 1; d < static_cast<int>(q.size()); ++d) {
    if (q[d] > q[best] + kTieTolerance * (1.0 + std::abs(q[best]))) best = d;
  }
  return best;
}

void RolloutStrategy::ActionProbabilities(const InfoState& info, std::span<double> out) const {
  std::vector<double> point;
  std::span<const double> belief = info.belief;
  if (belief.empty()) {
    if (info.state < 0) Fail(ErrorCode::kInvalidStrategy, "rollout needs a belief or a state");
    point.assign(kernel_.num_states(), 0.0);
    point[info.state] = 1.0;
    belief = point;
  }
  // FNV-1a over the belief bits.
  uint64_t h = 1469598103934665603ULL;
  for (double p : belief) {
    uint64_t bits;
    std::memcpy(&bits, &p, sizeof bits);
    h = (h ^ bits) * 1099511628211ULL;
  }
  Rng rng(DeriveSeed(params_.seed, {static_cast<uint64_t>(info.time), h}));
  const int d = RolloutAction(kernel_, base_, attacker_, belief, params_, rng);
  std::fill(out.begin(), out.end(), 0.0);
  out[d] = 1.0;
}

TabularStrategy ExactRolloutPolicy(const ModelKernel& kernel, const Strategy& base,
                                   const Strategy& attacker) {
  const int ns = kernel.num_states();
  const int nd = kernel.num_defender_actions();
  const std::vector<double> base_table = StateActionTable(base, ns);
  const std::vector<double> att_table = StateActionTable(attacker, ns);
  const TabularStrategy def(ns, nd, base_table);
  const TabularStrategy att(ns, kernel.num_attacker_actions(), att_table);
  const std::vector<double> values = EvaluatePolicy(kernel, def, att);
  std::vector<int> greedy(ns, 0);
  for (int s = 0; s < ns; ++s) {
    if (kernel.IsTerminal(s)) continue;
    double best = ResponderQ(kernel, Player::kDefender, att_table, values, s, 0);
    for (int d = 1; d < nd; ++d) {
      const double q = ResponderQ(kernel, Player::kDefender, att_table, values, s, d);
      if (q > best + kTieTolerance * (1.0 + std::abs(best))) {
        best = q;
        greedy[s] = d;
      }
    }
  }
  return TabularStrategy::Deterministic(greedy, nd);
}

}  // namespace secrl
