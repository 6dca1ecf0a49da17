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

#ifndef SECRL_EXPERIMENT_RUNNER_H_
#define SECRL_EXPERIMENT_RUNNER_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/analysis/misspecification.h"
#include "secrl/core/strategy.h"
#include "secrl/experiment/config.h"
#include "secrl/experiment/registry.h"

namespace secrl::experiment {

// One row of the fixed convergence-curve schema.
struct CurveRow {
  double wall_seconds = 0.0;
  long long round_or_update = 0;
  std::string metric_name;
  double mean = 0.0;
  double stddev = 0.0;
};

inline constexpr const char* kCurveHeader = "wall_seconds,round_or_update,metric_name,mean,stddev";

std::string CurveCsv(const std::vector<CurveRow>& rows);
std::vector<CurveRow> ParseCurveCsv(const std::string& text);

// Groups rows by (round_or_update, metric_name) in first-seen order and takes
// the mean and population standard deviation of the per-seed means.
std::vector<CurveRow> AggregateCurves(const std::vector<std::vector<CurveRow>>& per_seed);

// Runs one seed of the configured algorithm on an already built model.
std::vector<CurveRow> RunSeed(const ExperimentConfig& config, const ModelInstance& model,
                              uint64_t seed);

// Learns a defender strategy with a single-agent algorithm (spsa, pg,
// threshold-baseline, alert-baseline) on `kernel`, using `side` for the
// model's side information (intrusion mask, replica layout).
StrategyPtr LearnDefender(const std::string& algorithm, const AlgorithmSettings& settings,
                          const ModelKernel& kernel, const ModelInstance& side,
                          const Strategy& attacker, uint64_t seed);

struct RunOptions {
  bool override_pairing = false;
  std::optional<std::vector<uint64_t>> seeds;
  std::optional<std::string> output_dir;
  std::optional<int> jobs;
  std::ostream* log = nullptr;  // warnings; defaults to std::cerr
};

struct RunResult {
  std::string output_dir;
  std::vector<std::string> files;
  std::string pairing_warning;
  std::vector<std::vector<CurveRow>> per_seed;
  std::vector<CurveRow> aggregate;
  nlohmann::json summary;
};

// Writes config.json, seed_<seed>.csv per seed, aggregate.csv and
// summary.json into the output directory. Files written by a failing run are
// removed before the error propagates.
RunResult RunExperiment(ExperimentConfig config, const RunOptions& options = {});

// Sensitivity sweep over one scalar model parameter.
struct SweepConfig {
  std::string model;
  nlohmann::json model_params;
  std::string param;  // model_params key varied over the grid
  double true_value = 0.0;
  std::vector<double> grid;
  std::string algorithm;
  AlgorithmSettings settings;
  nlohmann::json algorithm_params;
  int seeds = 5;
  uint64_t base_seed = 0;
  int eval_episodes = 1000;
  int max_episode_steps = 1000;
  std::string output_dir = "sweep";

  static SweepConfig FromJson(const nlohmann::json& doc);
  static SweepConfig Load(const std::string& path);
  nlohmann::json ToJson() const;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double spearman_sim = 0.0;
  std::vector<std::string> files;
};

// Writes sweep.csv and sweep_summary.json into the output directory.
SweepResult RunSweep(const SweepConfig& config, const std::optional<std::string>& output_dir = {});

}  // namespace secrl::experiment

#endif  // SECRL_EXPERIMENT_RUNNER_H_
