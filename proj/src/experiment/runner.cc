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

#include "secrl/experiment/runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "secrl/core/dynamic_programming.h"
#include "secrl/core/error.h"
#include "secrl/core/json_util.h"
#include "secrl/core/random.h"
#include "secrl/core/simulate.h"
#include "secrl/experiment/alert_baseline.h"
#include "secrl/learning/fictitious_play.h"
#include "secrl/learning/ppo.h"
#include "secrl/learning/rollout.h"
#include "secrl/learning/spsa.h"
#include "secrl/usecases/flow.h"

namespace secrl::experiment {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kFileFormat, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kFileFormat, "write failed for '" + path.string() + "'");
}

class Clock {
 public:
  explicit Clock(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    if (!enabled_) return 0.0;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

ThresholdStrategy FlowThreshold(const ModelInstance& side, double alpha) {
  if (side.intrusion_mask.empty()) {
    Fail(ErrorCode::kConfigError,
         "algorithm: belief-threshold strategies need a flow model (flow-pomdp or flow-game)");
  }
  return ThresholdStrategy(alpha, side.intrusion_mask, flow::kStop, flow::kContinue, 2);
}

AlertBaselineStrategy AlertBaseline(const ModelInstance& side, const AlgorithmSettings& s) {
  if (side.replicas == 0) {
    Fail(ErrorCode::kConfigError, "algorithm: alert-baseline needs the recovery-pomdp model");
  }
  const auto& safe = side.obs_per_replica[0];
  std::vector<int> cuts;
  try {
    cuts = PriorityCutpoints(safe, s.quantiles);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, "algorithm_params.quantiles: " + e.detail());
  }
  return AlertBaselineStrategy(side.replicas, static_cast<int>(safe.size()), cuts,
                               s.priority_threshold);
}

EpisodeOptions EvalOptions(const AlgorithmSettings& s) {
  EpisodeOptions eo;
  eo.max_steps = s.max_episode_steps;
  return eo;
}

SpsaResult TrainThreshold(const AlgorithmSettings& s, const ModelKernel& kernel,
                          const ModelInstance& side, const Strategy& attacker, uint64_t seed) {
  FlowThreshold(side, 0.5);  // checks the model up front
  const EpisodeOptions eo = EvalOptions(s);
  auto objective = [&](std::span<const double> theta, uint64_t sd) {
    const ThresholdStrategy d = FlowThreshold(side, Sigmoid(theta[0]));
    return EvaluateMonteCarlo(kernel, d, attacker, s.episodes_per_evaluation, sd, eo).mean;
  };
  SpsaParams p = s.spsa;
  p.seed = DeriveSeed(seed, {1});
  p.evaluate_iterates = false;
  return SpsaOptimize(objective, {s.theta0}, {-10.0}, {10.0}, p);
}

FeatureKind PgFeatures(const AlgorithmSettings& s, const ModelKernel& kernel) {
  if (s.features == "state") return FeatureKind::kStateOneHot;
  if (s.features == "belief") return FeatureKind::kBelief;
  if (s.features == "observation") return FeatureKind::kObservationOneHot;
  return kernel.fully_observed() ? FeatureKind::kStateOneHot : FeatureKind::kBelief;
}

PgResult TrainPolicy(const AlgorithmSettings& s, const ModelKernel& kernel,
                     const Strategy& attacker, uint64_t seed) {
  PgParams p = s.pg;
  p.seed = DeriveSeed(seed, {1});
  return TrainPg(kernel, attacker, PgFeatures(s, kernel), p);
}

std::vector<CurveRow> RunFictitiousPlay(const AlgorithmSettings& s, const ModelInstance& model,
                                        uint64_t seed, const Clock& clock) {
  if (!model.kernel->is_game()) {
    Fail(ErrorCode::kConfigError, "algorithm: fictitious-play needs a game model");
  }
  const bool belief_game = model.belief_game != nullptr;
  const ModelKernel& kernel = belief_game ? model.belief_game->kernel() : *model.kernel;
  std::string dr = s.defender_responder;
  if (dr == "auto") dr = belief_game ? "spsa" : (kernel.fully_observed() ? "exact" : "pg");
  if (dr == "spsa" && !belief_game) {
    Fail(ErrorCode::kConfigError,
         "algorithm_params.defender_responder: spsa needs the flow-game model");
  }
  SpsaParams sp = s.spsa;
  sp.seed = DeriveSeed(seed, {1});
  PgParams pp = s.pg;
  pp.seed = DeriveSeed(seed, {2});
  PgParams pa = s.pg;
  pa.seed = DeriveSeed(seed, {3});

  Responder defender;
  if (dr == "spsa") {
    auto bg = model.belief_game;
    defender = ThresholdSpsaResponder(
        kernel, [bg](double alpha) { return bg->ThresholdDefender(alpha); }, sp);
  } else if (dr == "exact") {
    defender = ExactDpResponder(kernel, Player::kDefender);
  } else {
    defender = PgResponder(kernel, Player::kDefender, pp);
  }
  Responder attacker = s.attacker_responder == "pg" ? PgResponder(kernel, Player::kAttacker, pa)
                                                    : ExactDpResponder(kernel, Player::kAttacker);
  ExploitabilityFn exploit;
  if (dr == "spsa") {
    auto bg = model.belief_game;
    exploit = [bg, &kernel](const TabularStrategy& d, const TabularStrategy& a) {
      ExploitabilityOptions opts;
      opts.defender_oracle = bg->ThresholdOracle(std::make_shared<TabularStrategy>(d));
      return ComputeExploitability(kernel, d, a, opts);
    };
  }
  std::vector<CurveRow> rows;
  FictitiousPlayParams fp;
  fp.rounds = s.rounds;
  fp.eval_every = s.eval_every;
  const FictitiousPlayResult res = FictitiousPlay(kernel, defender, attacker, fp, exploit);
  for (const auto& pt : res.curve) {
    const double t = clock.Seconds();
    rows.push_back({t, pt.round, "exploitability", pt.exploitability, 0.0});
    rows.push_back({t, pt.round, "defender_gain", pt.defender_gain, 0.0});
    rows.push_back({t, pt.round, "attacker_gain", pt.attacker_gain, 0.0});
    rows.push_back({t, pt.round, "value", pt.value, 0.0});
  }
  return rows;
}

}  // namespace

std::string CurveCsv(const std::vector<CurveRow>& rows) {
  std::string out = std::string(kCurveHeader) + "\n";
  for (const auto& r : rows) {
    out += Num(r.wall_seconds) + "," + std::to_string(r.round_or_update) + "," + r.metric_name +
           "," + Num(r.mean) + "," + Num(r.stddev) + "\n";
  }
  return out;
}

std::vector<CurveRow> ParseCurveCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    Fail(ErrorCode::kFileFormat, "curve CSV: unexpected header");
  }
  std::vector<CurveRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 5) Fail(ErrorCode::kFileFormat, "curve CSV: expected 5 columns: " + line);
    try {
      rows.push_back({std::stod(f[0]), std::stoll(f[1]), f[2], std::stod(f[3]), std::stod(f[4])});
    } catch (const std::exception&) {
      Fail(ErrorCode::kFileFormat, "curve CSV: bad number in: " + line);
    }
  }
  return rows;
}

std::vector<CurveRow> AggregateCurves(const std::vector<std::vector<CurveRow>>& per_seed) {
  std::vector<std::pair<long long, std::string>> order;
  std::map<std::pair<long long, std::string>, std::vector<const CurveRow*>> groups;
  for (const auto& rows : per_seed) {
    for (const auto& r : rows) {
      const auto key = std::make_pair(r.round_or_update, r.metric_name);
      auto [it, fresh] = groups.try_emplace(key);
      if (fresh) order.push_back(key);
      it->second.push_back(&r);
    }
  }
  std::vector<CurveRow> out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    const double n = static_cast<double>(g.size());
    double wall = 0.0, mean = 0.0;
    for (const CurveRow* r : g) {
      wall += r->wall_seconds;
      mean += r->mean;
    }
    wall /= n;
    mean /= n;
    double var = 0.0;
    for (const CurveRow* r : g) var += (r->mean - mean) * (r->mean - mean);
    out.push_back({wall, key.first, key.second, mean, std::sqrt(var / n)});
  }
  return out;
}

StrategyPtr LearnDefender(const std::string& algorithm, const AlgorithmSettings& s,
                          const ModelKernel& kernel, const ModelInstance& side,
                          const Strategy& attacker, uint64_t seed) {
  if (algorithm == "spsa") {
    const SpsaResult res = TrainThreshold(s, kernel, side, attacker, seed);
    return std::make_shared<ThresholdStrategy>(FlowThreshold(side, Sigmoid(res.theta[0])));
  }
  if (algorithm == "pg") return TrainPolicy(s, kernel, attacker, seed).policy;
  if (algorithm == "threshold-baseline") {
    return std::make_shared<ThresholdStrategy>(FlowThreshold(side, s.alpha));
  }
  if (algorithm == "alert-baseline") {
    return std::make_shared<AlertBaselineStrategy>(AlertBaseline(side, s));
  }
  Fail(ErrorCode::kConfigError,
       "algorithm: '" + algorithm + "' does not produce a standalone defender strategy");
}

std::vector<CurveRow> RunSeed(const ExperimentConfig& config, const ModelInstance& model,
                              uint64_t seed) {
  const AlgorithmSettings& s = config.settings;
  const ModelKernel& kernel = *model.kernel;
  const Strategy& attacker = *model.default_attacker;
  const EpisodeOptions eo = EvalOptions(s);
  const Clock clock(config.record_wall_time);
  std::vector<CurveRow> rows;
  auto evaluate = [&](const Strategy& d, long long round, const std::string& name,
                      uint64_t sd) {
    const MonteCarloStats st = EvaluateMonteCarlo(kernel, d, attacker, s.eval_episodes, sd, eo);
    rows.push_back({clock.Seconds(), round, name, st.mean, st.stddev});
  };
  const std::string& alg = config.algorithm;
  if (alg == "spsa") {
    const SpsaResult res = TrainThreshold(s, kernel, model, attacker, seed);
    std::vector<std::pair<long long, double>> points = {{0, s.theta0}};
    for (std::size_t i = 0; i < res.history.size(); ++i) {
      const auto& h = res.history[i];
      if (h.iteration % s.eval_every == 0 || i + 1 == res.history.size()) {
        points.emplace_back(h.iteration, h.theta[0]);
      }
    }
    for (const auto& [it, theta] : points) {
      const double alpha = Sigmoid(theta);
      evaluate(FlowThreshold(model, alpha), it, "eval_return",
               DeriveSeed(seed, {2, static_cast<uint64_t>(it)}));
      rows.push_back({clock.Seconds(), it, "threshold", alpha, 0.0});
    }
  } else if (alg == "pg") {
    const PgResult res = TrainPolicy(s, kernel, attacker, seed);
    for (const auto& pt : res.curve) {
      rows.push_back({clock.Seconds(), pt.update, "eval_return", pt.mean, pt.stddev});
    }
  } else if (alg == "rollout") {
    std::shared_ptr<const Strategy> base;
    if (s.base == "threshold") {
      base = std::make_shared<ThresholdStrategy>(FlowThreshold(model, s.base_alpha));
    } else {
      const int nd = kernel.num_defender_actions();
      base = std::make_shared<FixedStrategy>(std::vector<double>(nd, 1.0 / nd));
    }
    RolloutParams rp = s.rollout;
    rp.seed = DeriveSeed(seed, {1});
    const RolloutStrategy rollout(kernel, *base, attacker, rp);
    // Paired evaluation: both policies see the same episode seeds.
    const uint64_t sd = DeriveSeed(seed, {2});
    evaluate(*base, 0, "base_return", sd);
    evaluate(rollout, 0, "rollout_return", sd);
  } else if (alg == "fictitious-play") {
    rows = RunFictitiousPlay(s, model, seed, clock);
  } else if (alg == "threshold-baseline") {
    evaluate(FlowThreshold(model, s.alpha), 0, "eval_return", DeriveSeed(seed, {2}));
  } else if (alg == "alert-baseline") {
    evaluate(AlertBaseline(model, s), 0, "eval_return", DeriveSeed(seed, {2}));
  } else {
    Fail(ErrorCode::kConfigError, "algorithm: unknown '" + alg + "'");
  }
  return rows;
}

namespace {

ModelInstance BuildForConfig(const std::string& model, const json& params) {
  try {
    return BuildModel(model, params);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, "model_params." + e.detail());
  }
}

json FinalMetrics(const std::vector<CurveRow>& rows) {
  json out = json::object();
  for (const auto& r : rows) {
    if (!out.contains(r.metric_name) ||
        out[r.metric_name]["round_or_update"].get<long long>() <= r.round_or_update) {
      out[r.metric_name] = {
          {"round_or_update", r.round_or_update}, {"mean", r.mean}, {"stddev", r.stddev}};
    }
  }
  return out;
}

// Removes what a failed run wrote.
class OutputGuard {
 public:
  explicit OutputGuard(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    created_dir_ = !fs::exists(dir_, ec);
    fs::create_directories(dir_, ec);
    if (ec) Fail(ErrorCode::kConfigError, "output_dir: cannot create '" + dir_.string() + "'");
  }
  ~OutputGuard() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
  }
  fs::path Add(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    files_.push_back(dir_ / name);
    return files_.back();
  }
  std::vector<std::string> Commit() {
    committed_ = true;
    std::vector<std::string> out;
    for (const auto& f : files_) out.push_back(f.string());
    return out;
  }

 private:
  fs::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::mutex mu_;
  std::vector<fs::path> files_;
};

}  // namespace

RunResult RunExperiment(ExperimentConfig config, const RunOptions& options) {
  std::ostream& log = options.log ? *options.log : std::cerr;
  if (options.seeds) {
    if (options.seeds->empty()) Fail(ErrorCode::kConfigError, "--seeds: empty list");
    config.seeds = *options.seeds;
  }
  if (options.output_dir) config.output_dir = *options.output_dir;
  if (options.jobs) {
    if (*options.jobs < 1) Fail(ErrorCode::kConfigError, "--jobs: must be >= 1");
    config.jobs = *options.jobs;
  }
  RunResult result;
  result.pairing_warning = PairingWarning(config.model, config.algorithm);
  if (!result.pairing_warning.empty() && !options.override_pairing) {
    log << "warning: " << result.pairing_warning
        << " (pass --override-pairing to silence this warning)\n";
  }
  const ModelInstance model = BuildForConfig(config.model, config.model_params);

  OutputGuard guard(config.output_dir);
  WriteFile(guard.Add("config.json"), config.ToJson().dump(2) + "\n");

  const std::size_t n = config.seeds.size();
  result.per_seed.assign(n, {});
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        result.per_seed[i] = RunSeed(config, model, config.seeds[i]);
        WriteFile(guard.Add("seed_" + std::to_string(config.seeds[i]) + ".csv"),
                  CurveCsv(result.per_seed[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = static_cast<int>(std::min<std::size_t>(config.jobs, n));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  result.aggregate = AggregateCurves(result.per_seed);
  WriteFile(guard.Add("aggregate.csv"), CurveCsv(result.aggregate));
  json seeds = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    seeds.push_back({{"seed", config.seeds[i]},
                     {"file", "seed_" + std::to_string(config.seeds[i]) + ".csv"},
                     {"final", FinalMetrics(result.per_seed[i])}});
  }
  result.summary = {{"model", config.model},
                    {"algorithm", config.algorithm},
                    {"pairing_warning", result.pairing_warning.empty()
                                            ? json(nullptr)
                                            : json(result.pairing_warning)},
                    {"seeds", seeds},
                    {"aggregate_final", FinalMetrics(result.aggregate)}};
  WriteFile(guard.Add("summary.json"), result.summary.dump(2) + "\n");
  result.output_dir = config.output_dir;
  result.files = guard.Commit();
  return result;
}

SweepConfig SweepConfig::FromJson(const json& doc) {
  if (!doc.is_object()) Fail(ErrorCode::kConfigError, "config: must be a JSON object");
  try {
    JsonCheckKeys(doc, {"model", "model_params", "param", "true_value", "grid", "algorithm",
                        "algorithm_params", "seeds", "base_seed", "eval_episodes",
                        "max_episode_steps", "output_dir"});
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigError, e.detail());
  }
  for (const char* key : {"model", "model_params", "param", "true_value", "grid", "algorithm"}) {
    if (!doc.contains(key)) Fail(ErrorCode::kConfigError, std::string(key) + ": missing field");
  }
  SweepConfig c;
  try {
    c.model = JsonRequire<std::string>(doc, "model");
    c.model_params = doc["model_params"];
    c.param = JsonRequire<std::string>(doc, "param");
    c.true_value = JsonRequire<double>(doc, "true_value");
    c.grid = JsonRequire<std::vector<double>>(doc, "grid");
    c.algorithm = JsonRequire<std::string>(doc, "algorithm");
    c.algorithm_params = doc.contains("algorithm_params") ? doc["algorithm_params"]
                                                          : json::object();
    c.seeds = JsonGetOr<int>(doc, "seeds", c.seeds);
    c.base_seed = JsonGetOr<uint64_t>(doc, "base_seed", c.base_seed);
    c.eval_episodes = JsonGetOr<int>(doc, "eval_episodes", c.eval_episodes);
    c.max_episode_steps = JsonGetOr<int>(doc, "max_episode_steps", c.max_episode_steps);
    c.output_dir = JsonGetOr<std::string>(doc, "output_dir", c.output_dir);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, e.detail());
  }
  if (std::find(kModels.begin(), kModels.end(), c.model) == kModels.end()) {
    Fail(ErrorCode::kConfigError, "model: unknown '" + c.model + "'");
  }
  if (!c.model_params.is_object()) {
    Fail(ErrorCode::kConfigError, "model_params: must be a JSON object");
  }
  if (c.grid.empty()) Fail(ErrorCode::kConfigError, "grid: must not be empty");
  if (c.seeds < 1) Fail(ErrorCode::kConfigError, "seeds: must be >= 1");
  if (c.eval_episodes < 1) Fail(ErrorCode::kConfigError, "eval_episodes: must be >= 1");
  if (c.max_episode_steps < 1) Fail(ErrorCode::kConfigError, "max_episode_steps: must be >= 1");
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), c.algorithm) == kAlgorithms.end()) {
    Fail(ErrorCode::kConfigError, "algorithm: unknown '" + c.algorithm + "'");
  }
  c.settings = AlgorithmSettings::FromJson(c.algorithm, c.algorithm_params);
  return c;
}

SweepConfig SweepConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfigError, "config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfigError, std::string("config: invalid JSON: ") + e.what());
  }
  return FromJson(doc);
}

json SweepConfig::ToJson() const {
  return {{"model", model},
          {"model_params", model_params},
          {"param", param},
          {"true_value", true_value},
          {"grid", grid},
          {"algorithm", algorithm},
          {"algorithm_params", algorithm_params},
          {"seeds", seeds},
          {"base_seed", base_seed},
          {"eval_episodes", eval_episodes},
          {"max_episode_steps", max_episode_steps},
          {"output_dir", output_dir}};
}

SweepResult RunSweep(const SweepConfig& config, const std::optional<std::string>& output_dir) {
  auto with_param = [&](double v) {
    json p = config.model_params;
    p[config.param] = v;
    return p;
  };
  const ModelInstance side = BuildForConfig(config.model, with_param(config.true_value));
  for (double v : config.grid) BuildForConfig(config.model, with_param(v));
  // Fails early on algorithms without a standalone strategy.
  if (config.algorithm == "rollout" || config.algorithm == "fictitious-play") {
    Fail(ErrorCode::kConfigError,
         "algorithm: sweeps need spsa, pg, threshold-baseline or alert-baseline");
  }
  SweepSpec spec;
  spec.build = [&](double v) { return *BuildModel(config.model, with_param(v)).kernel; };
  spec.learn = [&](const ModelKernel& model, uint64_t seed) {
    return LearnDefender(config.algorithm, config.settings, model, side, *side.default_attacker,
                         seed);
  };
  spec.attacker = side.default_attacker;
  spec.true_param = config.true_value;
  spec.grid = config.grid;
  spec.eval_episodes = config.eval_episodes;
  spec.max_episode_steps = config.max_episode_steps;
  spec.seeds = config.seeds;
  spec.base_seed = config.base_seed;

  OutputGuard guard(output_dir.value_or(config.output_dir));
  WriteFile(guard.Add("sweep_config.json"), config.ToJson().dump(2) + "\n");
  SweepResult result;
  result.rows = SensitivitySweep(spec);
  std::vector<double> mis, sim;
  double tmin = 1e300, tmax = -1e300, tsum = 0.0;
  for (const auto& r : result.rows) {
    mis.push_back(r.misspecification);
    sim.push_back(r.sim_mean);
    tmin = std::min(tmin, r.truth_mean);
    tmax = std::max(tmax, r.truth_mean);
    tsum += r.truth_mean;
  }
  result.spearman_sim = result.rows.size() > 1 ? SpearmanRho(mis, sim) : 0.0;
  const double tmean = tsum / static_cast<double>(result.rows.size());
  WriteFile(guard.Add("sweep.csv"), SweepCsv(result.rows));
  const json summary = {
      {"spearman_misspecification_vs_sim", result.spearman_sim},
      {"truth_min", tmin},
      {"truth_max", tmax},
      {"truth_relative_range", tmean != 0.0 ? (tmax - tmin) / std::abs(tmean) : 0.0}};
  WriteFile(guard.Add("sweep_summary.json"), summary.dump(2) + "\n");
  result.files = guard.Commit();
  return result;
}

}  // namespace secrl::experiment
