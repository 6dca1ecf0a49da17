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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "secrl/core/error.h"
#include "secrl/core/validate.h"
#include "secrl/experiment/alert_baseline.h"
#include "secrl/experiment/config.h"
#include "secrl/experiment/registry.h"
#include "secrl/experiment/runner.h"
#include "secrl/usecases/recovery.h"

namespace secrl::experiment {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("secrl_experiment_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json SmallSpsaConfig(const fs::path& out) {
  return {{"model", "flow-pomdp"},
          {"model_params", json::object()},
          {"algorithm", "spsa"},
          {"algorithm_params",
           {{"spsa", {{"iterations", 40}}},
            {"episodes_per_evaluation", 5},
            {"eval_every", 10},
            {"eval_episodes", 50}}},
          {"seeds", {0, 1, 2, 3, 4}},
          {"output_dir", out.string()}};
}

std::string ConfigErrorDetail(const json& doc) {
  try {
    ExperimentConfig::FromJson(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    return e.detail();
  }
  ADD_FAILURE() << "expected ConfigError";
  return "";
}

TEST(Pairing, RecommendedPairsAreSilent) {
  for (const auto& [m, a] : std::vector<std::pair<std::string, std::string>>{
           {"flow-pomdp", "spsa"},
           {"replication-mdp", "pg"},
           {"recovery-pomdp", "rollout"},
           {"flow-game", "fictitious-play"},
           {"segmentation-game", "fictitious-play"},
           {"replication-game", "pg"}}) {
    EXPECT_EQ(PairingWarning(m, a), "") << m << " " << a;
  }
  EXPECT_NE(PairingWarning("flow-pomdp", "pg"), "");
  EXPECT_NE(PairingWarning("replication-mdp", "spsa"), "");
}

TEST(Config, MissingModelParamsNamesTheField) {
  json doc = SmallSpsaConfig("x");
  doc.erase("model_params");
  EXPECT_EQ(ConfigErrorDetail(doc).rfind("model_params", 0), 0u);
}

TEST(Config, ErrorsCarryFieldPaths) {
  json doc = SmallSpsaConfig("x");
  doc["algorithm_params"]["bogus"] = 1;
  EXPECT_EQ(ConfigErrorDetail(doc).rfind("algorithm_params.bogus", 0), 0u);
  doc = SmallSpsaConfig("x");
  doc["algorithm_params"]["spsa"]["c"] = "one";
  EXPECT_EQ(ConfigErrorDetail(doc).rfind("algorithm_params.spsa.c", 0), 0u);
  doc = SmallSpsaConfig("x");
  doc["model"] = "nope";
  EXPECT_EQ(ConfigErrorDetail(doc).rfind("model", 0), 0u);
  doc = SmallSpsaConfig("x");
  doc["seeds"] = json::array();
  EXPECT_EQ(ConfigErrorDetail(doc).rfind("seeds", 0), 0u);
  doc = SmallSpsaConfig("x");
  doc["extra"] = true;
  EXPECT_NE(ConfigErrorDetail(doc).find("extra"), std::string::npos);
}

TEST(Config, SeedListParsing) {
  EXPECT_EQ(ParseSeedList("3,1,4"), (std::vector<uint64_t>{3, 1, 4}));
  EXPECT_THROW(ParseSeedList("1,,2"), Error);
  EXPECT_THROW(ParseSeedList("-1"), Error);
  EXPECT_THROW(ParseSeedList("x"), Error);
}

TEST(Registry, EveryModelBuildsValidKernels) {
  const json models = ModelsJson();
  ASSERT_EQ(models.size(), kModels.size());
  for (const auto& name : kModels) {
    const ModelInstance m = BuildModel(name, json::object());
    EXPECT_TRUE(ValidateKernel(*m.kernel).ok()) << name;
    ASSERT_NE(m.default_attacker, nullptr);
    EXPECT_EQ(m.default_attacker->num_actions(), m.kernel->num_attacker_actions());
    // Registered defaults round-trip through the builder.
    const ModelInstance again = BuildModel(name, FindModel(name).parameters);
    EXPECT_EQ(again.kernel->num_states(), m.kernel->num_states()) << name;
  }
  EXPECT_THROW(BuildModel("nope", json::object()), Error);
}

TEST(AlertBaseline, CutpointsFromQuantiles) {
  const std::vector<double> safe = {0.5, 0.4, 0.09, 0.01};
  EXPECT_EQ(PriorityCutpoints(safe), (std::vector<int>{0, 1, 2}));
  const std::vector<int> cuts = {0, 1, 2};
  EXPECT_EQ(AlertPriority(0, cuts), kVeryLow);
  EXPECT_EQ(AlertPriority(1, cuts), kLow);
  EXPECT_EQ(AlertPriority(2, cuts), kMedium);
  EXPECT_EQ(AlertPriority(3, cuts), kHigh);
  EXPECT_THROW(PriorityCutpoints(safe, {0.9, 0.5}), Error);
}

TEST(AlertBaseline, RecoversExactlyTheReplicasAtMediumOrAbove) {
  const AlertBaselineStrategy s(3, 4, {0, 1, 2});
  const std::vector<int> high_on_2 = {kLow, kLow, kHigh};
  EXPECT_EQ(s.ActionForPriorities(high_on_2), 1 << 2);
  const std::vector<int> all_low = {kLow, kLow, kLow};
  EXPECT_EQ(s.ActionForPriorities(all_low), 0);
  const std::vector<int> all_high = {kHigh, kHigh, kHigh};
  EXPECT_EQ(s.ActionForPriorities(all_high), 7);
  const std::vector<int> medium = {kMedium, kVeryLow, kLow};
  EXPECT_EQ(s.ActionForPriorities(medium), 1);
}

TEST(AlertBaseline, DecodesJointRecoveryObservations) {
  const auto cfg = recovery::Config::Default(3);
  const ModelKernel k = recovery::Build(cfg);
  const int per = static_cast<int>(cfg.obs_per_replica[0].size());
  const std::vector<int> cuts = PriorityCutpoints(cfg.obs_per_replica[0]);
  const AlertBaselineStrategy baseline(3, per, cuts);
  const Strategy& s = baseline;
  for (int o = 0; o < k.num_observations(); ++o) {
    int expected = 0;
    for (int l = 0; l < 3; ++l) {
      if (AlertPriority(recovery::ReplicaObservation(o, l, per), cuts) >= kMedium) {
        expected |= 1 << l;
      }
    }
    InfoState info;
    info.observation = o;
    const auto probs = s.ActionProbabilities(info);
    EXPECT_EQ(probs[expected], 1.0) << k.observation_names()[o];
  }
  const auto first = s.ActionProbabilities(InfoState{});
  EXPECT_EQ(first[0], 1.0);
}

TEST(Curves, CsvRoundTripIsExact) {
  const std::vector<CurveRow> rows = {{0.0, 0, "eval_return", 51.123456789012345, 0.1},
                                      {1.5, 7, "threshold", 1.0 / 3.0, 0.0}};
  const auto back = ParseCurveCsv(CurveCsv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].wall_seconds, rows[i].wall_seconds);
    EXPECT_EQ(back[i].round_or_update, rows[i].round_or_update);
    EXPECT_EQ(back[i].metric_name, rows[i].metric_name);
    EXPECT_EQ(back[i].mean, rows[i].mean);
    EXPECT_EQ(back[i].stddev, rows[i].stddev);
  }
  EXPECT_THROW(ParseCurveCsv("bad header\n"), Error);
}

TEST(Run, FiveSeedSpsaWritesAllArtifacts) {
  const fs::path out = TempDir("five");
  std::ostringstream log;
  RunOptions opts;
  opts.log = &log;
  const RunResult r = RunExperiment(ExperimentConfig::FromJson(SmallSpsaConfig(out)), opts);
  EXPECT_EQ(log.str(), "");
  for (int s = 0; s < 5; ++s) {
    EXPECT_TRUE(fs::exists(out / ("seed_" + std::to_string(s) + ".csv")));
  }
  for (const char* f : {"aggregate.csv", "summary.json", "config.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const json summary = json::parse(ReadFile(out / "summary.json"));
  EXPECT_EQ(summary["seeds"].size(), 5u);
  EXPECT_TRUE(summary["aggregate_final"].contains("eval_return"));
  // The snapshot reproduces the run.
  const auto snap = ExperimentConfig::FromJson(json::parse(ReadFile(out / "config.json")));
  EXPECT_EQ(snap.seeds.size(), 5u);
  EXPECT_EQ(r.files.size(), 8u);
  fs::remove_all(out);
}

TEST(Run, AggregateMatchesRecomputationFromSeedFiles) {
  const fs::path out = TempDir("aggregate");
  RunExperiment(ExperimentConfig::FromJson(SmallSpsaConfig(out)));
  std::map<std::pair<long long, std::string>, std::vector<double>> cells;
  for (int s = 0; s < 5; ++s) {
    for (const auto& row :
         ParseCurveCsv(ReadFile(out / ("seed_" + std::to_string(s) + ".csv")))) {
      cells[{row.round_or_update, row.metric_name}].push_back(row.mean);
    }
  }
  const auto agg = ParseCurveCsv(ReadFile(out / "aggregate.csv"));
  ASSERT_EQ(agg.size(), cells.size());
  for (const auto& row : agg) {
    const auto& v = cells.at({row.round_or_update, row.metric_name});
    ASSERT_EQ(v.size(), 5u);
    double mean = 0.0;
    for (double x : v) mean += x / 5.0;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean) / 5.0;
    EXPECT_NEAR(row.mean, mean, 1e-12);
    EXPECT_NEAR(row.stddev, std::sqrt(var), 1e-12);
  }
  fs::remove_all(out);
}

TEST(Run, SeedFilesAreByteIdenticalAcrossRunsAndJobCounts) {
  const fs::path a = TempDir("det_a"), b = TempDir("det_b");
  RunExperiment(ExperimentConfig::FromJson(SmallSpsaConfig(a)));
  RunOptions opts;
  opts.jobs = 3;
  opts.output_dir = b.string();
  RunExperiment(ExperimentConfig::FromJson(SmallSpsaConfig(a)), opts);
  for (const char* f : {"seed_0.csv", "seed_3.csv", "aggregate.csv"}) {
    EXPECT_EQ(ReadFile(a / f), ReadFile(b / f)) << f;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, UnrecommendedPairingWarnsAndProceeds) {
  const fs::path out = TempDir("pairing");
  json doc = {{"model", "flow-game"},
              {"model_params", {{"L", 1}}},
              {"algorithm", "spsa"},
              {"algorithm_params",
               {{"spsa", {{"iterations", 5}}}, {"eval_every", 5}, {"eval_episodes", 10}}},
              {"seeds", {1}},
              {"output_dir", out.string()}};
  std::ostringstream log;
  RunOptions opts;
  opts.log = &log;
  const RunResult r = RunExperiment(ExperimentConfig::FromJson(doc), opts);
  EXPECT_NE(log.str().find("warning"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "seed_1.csv"));
  EXPECT_FALSE(r.summary["pairing_warning"].is_null());

  std::ostringstream quiet;
  opts.log = &quiet;
  opts.override_pairing = true;
  RunExperiment(ExperimentConfig::FromJson(doc), opts);
  EXPECT_EQ(quiet.str(), "");
  fs::remove_all(out);
}

TEST(Run, FailedRunRemovesPartialOutputs) {
  const fs::path out = TempDir("partial");
  // alert-baseline needs the recovery model: fails inside the seed workers
  // after the config snapshot has been written.
  json doc = {{"model", "flow-pomdp"},
              {"model_params", json::object()},
              {"algorithm", "alert-baseline"},
              {"seeds", {0, 1}},
              {"output_dir", out.string()}};
  std::ostringstream log;
  RunOptions opts;
  opts.log = &log;
  try {
    RunExperiment(ExperimentConfig::FromJson(doc), opts);
    ADD_FAILURE() << "expected failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
  EXPECT_FALSE(fs::exists(out));
}

TEST(Run, BadModelParamsAreConfigErrorsWithPath) {
  json doc = SmallSpsaConfig(TempDir("badmodel"));
  doc["model_params"]["L"] = 0;
  try {
    RunExperiment(ExperimentConfig::FromJson(doc));
    ADD_FAILURE() << "expected failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    EXPECT_EQ(e.detail().rfind("model_params.", 0), 0u) << e.detail();
  }
}

TEST(Run, EveryAlgorithmRunsOnASmallModel) {
  const std::vector<json> configs = {
      {{"model", "flow-pomdp"}, {"algorithm", "threshold-baseline"},
       {"algorithm_params", {{"eval_episodes", 20}}}},
      {{"model", "recovery-pomdp"}, {"algorithm", "alert-baseline"},
       {"algorithm_params", {{"eval_episodes", 20}, {"max_episode_steps", 30}}}},
      {{"model", "recovery-pomdp"}, {"model_params", {{"K", 2}}}, {"algorithm", "rollout"},
       {"algorithm_params",
        {{"rollout", {{"rollout_horizon", 5}, {"mc_samples", 3}}},
         {"eval_episodes", 4},
         {"max_episode_steps", 10}}}},
      {{"model", "replication-mdp"}, {"algorithm", "pg"},
       {"algorithm_params",
        {{"pg", {{"updates", 2}, {"steps_between_updates", 64}, {"eval_episodes", 4}}}}}},
      {{"model", "replication-game"}, {"algorithm", "fictitious-play"},
       {"algorithm_params", {{"rounds", 3}}}},
      {{"model", "flow-game"}, {"model_params", {{"L", 1}, {"grid", 5}}},
       {"algorithm", "fictitious-play"},
       {"algorithm_params", {{"rounds", 3}, {"spsa", {{"iterations", 20}}}}}},
  };
  int i = 0;
  for (json doc : configs) {
    const fs::path out = TempDir("alg" + std::to_string(i++));
    if (!doc.contains("model_params")) doc["model_params"] = json::object();
    doc["seeds"] = {0};
    doc["output_dir"] = out.string();
    RunOptions opts;
    opts.override_pairing = true;
    const RunResult r = RunExperiment(ExperimentConfig::FromJson(doc), opts);
    ASSERT_FALSE(r.per_seed[0].empty()) << doc.dump();
    for (const auto& row : r.per_seed[0]) {
      EXPECT_TRUE(std::isfinite(row.mean)) << doc.dump();
    }
    fs::remove_all(out);
  }
}

TEST(Sweep, WritesTableAndRejectsMissingFields) {
  const fs::path out = TempDir("sweep");
  json doc = {{"model", "flow-pomdp"},
              {"model_params", json::object()},
              {"param", "p"},
              {"true_value", 0.01},
              {"grid", {0.01, 0.05}},
              {"algorithm", "threshold-baseline"},
              {"seeds", 2},
              {"eval_episodes", 50},
              {"output_dir", out.string()}};
  const SweepResult r = RunSweep(SweepConfig::FromJson(doc));
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_NEAR(r.rows[1].misspecification, 0.04, 1e-12);
  EXPECT_TRUE(fs::exists(out / "sweep.csv"));
  EXPECT_TRUE(fs::exists(out / "sweep_summary.json"));
  fs::remove_all(out);
  doc.erase("param");
  EXPECT_THROW(SweepConfig::FromJson(doc), Error);
}

}  // namespace
}  // namespace secrl::experiment
