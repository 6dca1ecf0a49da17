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

#ifndef SECRL_ANALYSIS_MISSPECIFICATION_H_
#define SECRL_ANALYSIS_MISSPECIFICATION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"

namespace secrl {

// Largest L1 distance between matching transition rows of two kernels with
// identical state and action spaces (ShapeMismatch otherwise).
double TotalVariationAlpha(const ModelKernel& k1, const ModelKernel& k2);

// Largest |r(s, a_D, a_A)|.
double MaxAbsReward(const ModelKernel& k);

// alpha * gamma * beta / (1 - gamma)^2. InvalidDiscount unless 0 <= gamma < 1.
double MisspecificationBound(double alpha, double gamma, double beta);

struct MisspecReport {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double bound = 0.0;
  double measured_gap = 0.0;
  bool holds = false;

  nlohmann::json ToJson() const;
};

// Evaluates both kernels under the same (state-based) strategy pair and
// compares the sup-norm value gap with the bound. RewardMismatch when the
// kernels do not share rewards and discount.
MisspecReport BoundCheck(const ModelKernel& k, const ModelKernel& k_tilde,
                         const Strategy& defender, const Strategy& attacker);

// Spearman rank correlation with average ranks for ties.
double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y);

struct SweepRow {
  double misspecification;  // |p - p_tilde|
  double param;             // p_tilde
  double sim_mean, sim_std;
  double truth_mean, truth_std;
};

struct SweepSpec {
  // Builds the model for a parameter value.
  std::function<ModelKernel(double param)> build;
  // Learns a defender strategy on a model; must be deterministic in seed.
  std::function<std::shared_ptr<const Strategy>(const ModelKernel& model, uint64_t seed)> learn;
  // Attacker used during evaluation (defaults to the single null action).
  std::shared_ptr<const Strategy> attacker;
  double true_param = 0.0;
  std::vector<double> grid;  // p_tilde values
  int eval_episodes = 1000;
  int max_episode_steps = 1000;
  int seeds = 5;
  uint64_t base_seed = 0;
};

// For every grid value, learns on the p_tilde model and evaluates the result
// on it ("sim") and on the true model ("truth"). Cell (g, r) draws from
// DeriveSeed(base_seed, {g, r}); means and (population) standard deviations
// are taken over the per-seed Monte-Carlo means.
std::vector<SweepRow> SensitivitySweep(const SweepSpec& spec);

std::string SweepCsv(const std::vector<SweepRow>& rows);

}  // namespace secrl

#endif  // SECRL_ANALYSIS_MISSPECIFICATION_H_
