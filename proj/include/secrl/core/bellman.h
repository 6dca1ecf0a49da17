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

#ifndef SECRL_CORE_BELLMAN_H_
#define SECRL_CORE_BELLMAN_H_

#include <cstddef>
#include <span>
#include <vector>

#include "secrl/core/kernel.h"

namespace secrl {

// Markov chain induced by fixing both players' state-based strategies.
struct InducedChain {
  std::vector<std::size_t> offsets;
  std::vector<int> next;
  std::vector<double> prob;
  std::vector<double> reward;

  int num_states() const { return static_cast<int>(reward.size()); }
};

// Tables are |S| x |A_D| and |S| x |A_A|, row-major.
InducedChain BuildInducedChain(const ModelKernel& kernel, std::span<const double> defender_table,
                               std::span<const double> attacker_table);

// The sweep kernels come in two flavours with identical semantics: an OpenMP
// version parallel over states, and a serial reference kept for testing and
// benchmarking. Both are Jacobi sweeps, so results are bitwise identical.
namespace kernels {

// out = r + gamma * P * in; returns the sup-norm of out - in.
double EvaluationSweep(const InducedChain& chain, double gamma, std::span<const double> in,
                       std::span<double> out);

// One Bellman optimality sweep for `responder` against a fixed opponent
// table. The defender maximizes, the attacker minimizes over its feasible
// actions. Ties go to the lowest action index. `greedy` may be empty.
double OptimalitySweep(const ModelKernel& kernel, Player responder,
                       std::span<const double> opponent_table, std::span<const double> in,
                       std::span<double> out, std::span<int> greedy);

}  // namespace kernels

namespace reference {

double EvaluationSweep(const InducedChain& chain, double gamma, std::span<const double> in,
                       std::span<double> out);

double OptimalitySweep(const ModelKernel& kernel, Player responder,
                       std::span<const double> opponent_table, std::span<const double> in,
                       std::span<double> out, std::span<int> greedy);

}  // namespace reference

// Relative tie tolerance used by greedy action selection.
inline constexpr double kTieTolerance = 1e-12;

// Q-value of the responder's action `b` at state s (defender-centric value).
double ResponderQ(const ModelKernel& kernel, Player responder,
                  std::span<const double> opponent_table, std::span<const double> values, int s,
                  int b);

}  // namespace secrl

#endif  // SECRL_CORE_BELLMAN_H_
