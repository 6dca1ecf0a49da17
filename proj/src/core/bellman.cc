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

#include "secrl/core/bellman.h"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "secrl/core/error.h"

namespace secrl {
namespace {

// Single-state optimality backup shared by both sweep flavours.
inline double BackupState(const ModelKernel& kernel, Player responder,
                          std::span<const double> opponent_table, std::span<const double> in,
                          int s, int* greedy) {
  const int nb = responder == Player::kDefender ? kernel.num_defender_actions()
                                                : kernel.num_attacker_actions();
  double best = 0.0;
  int best_b = -1;
  for (int b = 0; b < nb; ++b) {
    if (responder == Player::kAttacker && !kernel.AttackerFeasible(s, b)) continue;
    const double q = ResponderQ(kernel, responder, opponent_table, in, s, b);
    if (best_b < 0) {
      best = q;
      best_b = b;
      continue;
    }
    const double tol = kTieTolerance * (1.0 + std::abs(best));
    const bool better = responder == Player::kDefender ? q > best + tol : q < best - tol;
    if (better) {
      best = q;
      best_b = b;
    }
  }
  if (best_b < 0) {
    // No feasible action; fall back to the first action.
    best_b = 0;
    best = ResponderQ(kernel, responder, opponent_table, in, s, 0);
  }
  if (greedy) *greedy = best_b;
  return best;
}

}  // namespace

double ResponderQ(const ModelKernel& kernel, Player responder,
                  std::span<const double> opponent_table, std::span<const double> values, int s,
                  int b) {
  const double gamma = kernel.discount();
  const int nd = kernel.num_defender_actions();
  const int na = kernel.num_attacker_actions();
  double q = 0.0;
  if (responder == Player::kDefender) {
    const double* pa = opponent_table.data() + static_cast<std::size_t>(s) * na;
    for (int a = 0; a < na; ++a) {
      if (pa[a] == 0.0) continue;
      double cont = 0.0;
      for (const Successor& e : kernel.Transitions(s, b, a)) cont += e.prob * values[e.next];
      q += pa[a] * (kernel.Reward(s, b, a) + gamma * cont);
    }
  } else {
    const double* pd = opponent_table.data() + static_cast<std::size_t>(s) * nd;
    for (int d = 0; d < nd; ++d) {
      if (pd[d] == 0.0) continue;
      double cont = 0.0;
      for (const Successor& e : kernel.Transitions(s, d, b)) cont += e.prob * values[e.next];
      q += pd[d] * (kernel.Reward(s, d, b) + gamma * cont);
    }
  }
  return q;
}

InducedChain BuildInducedChain(const ModelKernel& kernel, std::span<const double> defender_table,
                               std::span<const double> attacker_table) {
  const int ns = kernel.num_states();
  const int nd = kernel.num_defender_actions();
  const int na = kernel.num_attacker_actions();
  if (defender_table.size() != static_cast<std::size_t>(ns) * nd ||
      attacker_table.size() != static_cast<std::size_t>(ns) * na) {
    Fail(ErrorCode::kShapeMismatch, "strategy tables do not match the kernel");
  }
  InducedChain chain;
  chain.offsets.reserve(ns + 1);
  chain.offsets.push_back(0);
  chain.reward.assign(ns, 0.0);
  std::vector<double> acc(ns, 0.0);
  std::vector<int> touched;
  for (int s = 0; s < ns; ++s) {
    touched.clear();
    double r = 0.0;
    for (int d = 0; d < nd; ++d) {
      const double pd = defender_table[static_cast<std::size_t>(s) * nd + d];
      if (pd == 0.0) continue;
      for (int a = 0; a < na; ++a) {
        const double pa = attacker_table[static_cast<std::size_t>(s) * na + a];
        if (pa == 0.0) continue;
        const double w = pd * pa;
        r += w * kernel.Reward(s, d, a);
        for (const Successor& e : kernel.Transitions(s, d, a)) {
          if (acc[e.next] == 0.0) touched.push_back(e.next);
          acc[e.next] += w * e.prob;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int t : touched) {
      chain.next.push_back(t);
      chain.prob.push_back(acc[t]);
      acc[t] = 0.0;
    }
    chain.reward[s] = r;
    chain.offsets.push_back(chain.next.size());
  }
  return chain;
}

namespace kernels {

double EvaluationSweep(const InducedChain& chain, double gamma, std::span<const double> in,
                       std::span<double> out) {
  const int ns = chain.num_states();
  double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta)
  for (int s = 0; s < ns; ++s) {
    double cont = 0.0;
    for (std::size_t k = chain.offsets[s]; k < chain.offsets[s + 1]; ++k) {
      cont += chain.prob[k] * in[chain.next[k]];
    }
    const double v = chain.reward[s] + gamma * cont;
    out[s] = v;
    delta = std::max(delta, std::abs(v - in[s]));
  }
  return delta;
}

double OptimalitySweep(const ModelKernel& kernel, Player responder,
                       std::span<const double> opponent_table, std::span<const double> in,
                       std::span<double> out, std::span<int> greedy) {
  const int ns = kernel.num_states();
  double delta = 0.0;
  const bool want_greedy = !greedy.empty();
#pragma omp parallel for schedule(dynamic, 64) reduction(max : delta)
  for (int s = 0; s < ns; ++s) {
    const double v = BackupState(kernel, responder, opponent_table, in, s,
                                 want_greedy ? &greedy[s] : nullptr);
    out[s] = v;
    delta = std::max(delta, std::abs(v - in[s]));
  }
  return delta;
}

}  // namespace kernels

namespace reference {

double EvaluationSweep(const InducedChain& chain, double gamma, std::span<const double> in,
                       std::span<double> out) {
  const int ns = chain.num_states();
  double delta = 0.0;
  for (int s = 0; s < ns; ++s) {
    double cont = 0.0;
    for (std::size_t k = chain.offsets[s]; k < chain.offsets[s + 1]; ++k) {
      cont += chain.prob[k] * in[chain.next[k]];
    }
    const double v = chain.reward[s] + gamma * cont;
    out[s] = v;
    delta = std::max(delta, std::abs(v - in[s]));
  }
  return delta;
}

double OptimalitySweep(const ModelKernel& kernel, Player responder,
                       std::span<const double> opponent_table, std::span<const double> in,
                       std::span<double> out, std::span<int> greedy) {
  const int ns = kernel.num_states();
  double delta = 0.0;
  for (int s = 0; s < ns; ++s) {
    const double v = BackupState(kernel, responder, opponent_table, in, s,
                                 greedy.empty() ? nullptr : &greedy[s]);
    out[s] = v;
    delta = std::max(delta, std::abs(v - in[s]));
  }
  return delta;
}

}  // namespace reference
}  // namespace secrl
