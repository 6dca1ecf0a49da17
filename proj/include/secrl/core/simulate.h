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

#ifndef SECRL_CORE_SIMULATE_H_
#define SECRL_CORE_SIMULATE_H_

#include <cstdint>
#include <vector>

#include "secrl/core/kernel.h"
#include "secrl/core/random.h"
#include "secrl/core/strategy.h"

namespace secrl {

struct StepRecord {
  int state;
  int defender_action;
  int attacker_action;
  double reward;
  int next_state;
  int observation;
};

struct EpisodeOptions {
  int max_steps = 1000;
  // Kernel used by the defender's belief filter; defaults to the environment.
  // Must share the environment's state, action and observation spaces.
  const ModelKernel* filter_kernel = nullptr;
  // Attacker model assumed by the filter; defaults to the true attacker when
  // it is state-based and to its uniform distribution otherwise.
  const Strategy* filter_attacker = nullptr;
  int initial_state = -1;  // -1 samples from b1
  const std::vector<double>* initial_belief = nullptr;
  bool record = false;
};

struct EpisodeResult {
  double discounted_return = 0.0;
  double total_reward = 0.0;
  int steps = 0;
  bool terminated = false;
  std::vector<StepRecord> trajectory;
};

// Simulates one episode. The defender sees the last observation and the
// filtered belief (or the state when the kernel is fully observed); the
// attacker sees the true state. Stops on reaching a terminal state.
EpisodeResult RunEpisode(const ModelKernel& env, const Strategy& defender,
                         const Strategy& attacker, Rng& rng, const EpisodeOptions& options = {});

struct MonteCarloStats {
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double mean_steps = 0.0;
  std::vector<double> returns;
};

// Mean discounted return over `episodes` independent episodes; episode i uses
// DeriveSeed(seed, {i}), so the result does not depend on the thread count.
MonteCarloStats EvaluateMonteCarlo(const ModelKernel& env, const Strategy& defender,
                                   const Strategy& attacker, int episodes, uint64_t seed,
                                   const EpisodeOptions& options = {});

namespace reference {

MonteCarloStats EvaluateMonteCarlo(const ModelKernel& env, const Strategy& defender,
                                   const Strategy& attacker, int episodes, uint64_t seed,
                                   const EpisodeOptions& options = {});

}  // namespace reference

MonteCarloStats SummarizeReturns(std::vector<double> returns, double total_steps = 0.0);

}  // namespace secrl

#endif  // SECRL_CORE_SIMULATE_H_
