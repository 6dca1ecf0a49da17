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

#include "secrl/core/simulate.h"

#include <cmath>
#include <exception>

#include "secrl/core/belief.h"
#include "secrl/core/error.h"

namespace secrl {
namespace {

// Opponent table for the filter: |S| x |A| for state-based attackers, else
// the attacker's distribution at an uninformative information state.
std::vector<double> FilterOpponentTable(const Strategy& attacker, const ModelKernel& kernel) {
  if (attacker.IsStateBased()) return StateActionTable(attacker, kernel.num_states());
  const int na = kernel.num_attacker_actions();
  return std::vector<double>(na, 1.0 / na);
}

}  // namespace

EpisodeResult RunEpisode(const ModelKernel& env, const Strategy& defender,
                         const Strategy& attacker, Rng& rng, const EpisodeOptions& options) {
  const ModelKernel& filter = options.filter_kernel ? *options.filter_kernel : env;
  if (filter.num_states() != env.num_states() ||
      filter.num_observations() != env.num_observations()) {
    Fail(ErrorCode::kShapeMismatch, "filter kernel does not match the environment");
  }
  const bool track_belief = defender.NeedsBelief() && !env.fully_observed();
  std::vector<double> opponent_table;
  if (track_belief) {
    opponent_table = FilterOpponentTable(
        options.filter_attacker ? *options.filter_attacker : attacker, filter);
  }

  EpisodeResult result;
  int s = options.initial_state >= 0 ? options.initial_state
                                     : SampleIndex(env.initial_belief(), rng);
  std::vector<double> belief = options.initial_belief ? *options.initial_belief
                                                      : filter.initial_belief();
  if (env.fully_observed() && !options.initial_belief) {
    belief.assign(env.num_states(), 0.0);
    belief[s] = 1.0;
  }
  const double gamma = env.discount();
  double discount = 1.0;
  int observation = -1;
  std::vector<double> dprobs(env.num_defender_actions());
  std::vector<double> aprobs(env.num_attacker_actions());
  for (int t = 1; t <= options.max_steps; ++t) {
    if (env.IsTerminal(s)) {
      result.terminated = true;
      break;
    }
    InfoState dinfo;
    dinfo.state = env.fully_observed() ? s : -1;
    dinfo.belief = belief;
    dinfo.observation = observation;
    dinfo.time = t;
    defender.ActionProbabilities(dinfo, dprobs);
    const int d = SampleIndex(dprobs, rng);
    InfoState ainfo;
    ainfo.state = s;
    ainfo.time = t;
    attacker.ActionProbabilities(ainfo, aprobs);
    const int a = SampleIndex(aprobs, rng);
    const double r = env.Reward(s, d, a);
    const int next = env.SampleNextState(s, d, a, rng);
    const int o = env.SampleObservation(next, rng);
    result.discounted_return += discount * r;
    result.total_reward += r;
    discount *= gamma;
    ++result.steps;
    if (options.record) result.trajectory.push_back({s, d, a, r, next, o});
    if (track_belief) {
      std::vector<double> predicted = PredictBelief(belief, d, filter, opponent_table);
      try {
        Belief posterior = ConditionBelief(predicted, o, filter);
        belief.assign(posterior.probs().begin(), posterior.probs().end());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroLikelihood) throw;
        // The filter model cannot explain the observation; keep the prediction.
        double total = 0.0;
        for (double p : predicted) total += p;
        for (double& p : predicted) p /= total;
        belief = std::move(predicted);
      }
    } else if (env.fully_observed()) {
      std::fill(belief.begin(), belief.end(), 0.0);
      belief[next] = 1.0;
    }
    observation = o;
    s = next;
  }
  if (!result.terminated && env.IsTerminal(s)) result.terminated = true;
  return result;
}

MonteCarloStats SummarizeReturns(std::vector<double> returns, double total_steps) {
  MonteCarloStats stats;
  const double n = static_cast<double>(returns.size());
  if (returns.empty()) return stats;
  double sum = 0.0;
  for (double r : returns) sum += r;
  stats.mean = sum / n;
  double ss = 0.0;
  for (double r : returns) ss += (r - stats.mean) * (r - stats.mean);
  stats.stddev = returns.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  stats.std_error = stats.stddev / std::sqrt(n);
  stats.mean_steps = total_steps / n;
  stats.returns = std::move(returns);
  return stats;
}

MonteCarloStats EvaluateMonteCarlo(const ModelKernel& env, const Strategy& defender,
                                   const Strategy& attacker, int episodes, uint64_t seed,
                                   const EpisodeOptions& options) {
  std::vector<double> returns(episodes, 0.0);
  std::vector<int> steps(episodes, 0);
  EpisodeOptions opts = options;
  opts.record = false;
  // Exceptions cannot cross an OpenMP region; keep the first and rethrow.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < episodes; ++i) {
    try {
      Rng rng(DeriveSeed(seed, {static_cast<uint64_t>(i)}));
      EpisodeResult r = RunEpisode(env, defender, attacker, rng, opts);
      returns[i] = r.discounted_return;
      steps[i] = r.steps;
    } catch (...) {
#pragma omp critical(secrl_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  double total_steps = 0.0;
  for (int k : steps) total_steps += k;
  return SummarizeReturns(std::move(returns), total_steps);
}

namespace reference {

MonteCarloStats EvaluateMonteCarlo(const ModelKernel& env, const Strategy& defender,
                                   const Strategy& attacker, int episodes, uint64_t seed,
                                   const EpisodeOptions& options) {
  std::vector<double> returns(episodes, 0.0);
  double total_steps = 0.0;
  EpisodeOptions opts = options;
  opts.record = false;
  for (int i = 0; i < episodes; ++i) {
    Rng rng(DeriveSeed(seed, {static_cast<uint64_t>(i)}));
    EpisodeResult r = RunEpisode(env, defender, attacker, rng, opts);
    returns[i] = r.discounted_return;
    total_steps += r.steps;
  }
  return SummarizeReturns(std::move(returns), total_steps);
}

}  // namespace reference
}  // namespace secrl
