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


// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: acceptance_test <path-to-secrl-cli> [criterion...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "random_configs.h"
#include "secrl/analysis/misspecification.h"
#include "secrl/core/belief.h"
#include "secrl/core/dynamic_programming.h"
#include "secrl/core/error.h"
#include "secrl/core/random.h"
#include "secrl/core/simulate.h"
#include "secrl/core/strategy.h"
#include "secrl/core/validate.h"
#include "secrl/debugger/session.h"
#include "secrl/experiment/config.h"
#include "secrl/experiment/registry.h"
#include "secrl/experiment/runner.h"
#include "secrl/learning/fictitious_play.h"
#include "secrl/learning/ppo.h"
#include "secrl/learning/rollout.h"
#include "secrl/sysid/mixture.h"
#include "secrl/usecases/flow.h"
#include "secrl/usecases/recovery.h"
#include "secrl/usecases/replication.h"
#include "secrl/usecases/segmentation.h"
#include "testing.h"

namespace secrl {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

std::string g_cli;

// ---- 1: kernel validity ----

Outcome KernelValidity() {
  struct Builder {
    const char* name;
    std::function<ModelKernel(Rng&)> build;
  };
  const std::vector<Builder> builders = {
      {"flow-pomdp", [](Rng& r) { return flow::BuildPomdp(testing::RandomPomdpConfig(r)); }},
      {"flow-game", [](Rng& r) { return flow::BuildGame(testing::RandomGameConfig(r)); }},
      {"recovery", [](Rng& r) { return recovery::Build(testing::RandomRecoveryConfig(r)); }},
      {"replication-mdp",
       [](Rng& r) { return replication::BuildMdp(testing::RandomReplicationConfig(r)); }},
      {"replication-game",
       [](Rng& r) { return replication::BuildGame(testing::RandomReplicationConfig(r)); }},
      {"segmentation",
       [](Rng& r) { return segmentation::Build(testing::RandomSegmentationConfig(r)); }},
  };
  std::size_t violations = 0;
  std::string first;
  for (std::size_t b = 0; b < builders.size(); ++b) {
    Rng rng(DeriveSeed(101, {b}));
    for (int i = 0; i < 500; ++i) {
      const ValidationReport r = ValidateKernel(builders[b].build(rng));
      if (!r.ok() && first.empty()) first = std::string(builders[b].name) + ": " + r.ToString();
      violations += r.violations.size();
    }
  }
  return {violations == 0,
          std::to_string(builders.size()) + " builders x 500 configs, " +
              std::to_string(violations) + " violations" + (first.empty() ? "" : "; " + first)};
}

// ---- 2: bound holds on random pairs ----

ModelKernel PerturbRows(const ModelKernel& k, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  KernelBuilder b(k.state_names(), k.defender_action_names());
  for (int s = 0; s < k.num_states(); ++s) {
    for (int d = 0; d < k.num_defender_actions(); ++d) {
      std::vector<Successor> row;
      double total = 0.0;
      for (const Successor& e : k.Transitions(s, d, 0)) {
        const double p = std::max(0.0, e.prob + scale * (u(rng) - 0.5));
        row.push_back({e.next, p});
        total += p;
      }
      if (total <= 0.0) row = {{s, total = 1.0}};
      for (auto& e : row) e.prob /= total;
      b.SetTransition(s, d, 0, row);
      b.SetReward(s, d, 0, k.Reward(s, d, 0));
    }
  }
  b.SetInitialBelief(k.initial_belief());
  b.SetDiscount(k.discount());
  return b.Build();
}

TabularStrategy RandomTable(std::mt19937_64& rng, int ns, int na) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> table(ns * na);
  for (int s = 0; s < ns; ++s) {
    double t = 0.0;
    for (int a = 0; a < na; ++a) t += (table[na * s + a] = u(rng));
    for (int a = 0; a < na; ++a) table[na * s + a] /= t;
  }
  return TabularStrategy(ns, na, table);
}

Outcome BoundTheorem() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int held = 0;
  double worst_ratio = 0.0, zero_gap = 0.0;
  const FixedStrategy null_attacker = FixedStrategy::Pure(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double gamma = 0.5 + 0.49 * u(rng);
    const ModelKernel k = testing::RandomMdp(rng, 10, 4, gamma);
    const ModelKernel kt = PerturbRows(k, rng, u(rng));
    const TabularStrategy pi = RandomTable(rng, 10, 4);
    const MisspecReport r = BoundCheck(k, kt, pi, null_attacker);
    held += r.holds;
    if (r.bound > 0) worst_ratio = std::max(worst_ratio, r.measured_gap / r.bound);
    const MisspecReport same = BoundCheck(k, k, pi, null_attacker);
    zero_gap = std::max(zero_gap, same.measured_gap);
    if (same.alpha != 0.0 || !same.holds) held = -1000;
  }
  return {held == 200 && zero_gap <= 1e-9,
          Fmt("holds %.0f/200, max gap/bound %.3g, max gap at alpha=0 %.3g", held, worst_ratio,
              zero_gap)};
}

// ---- 3: bound arithmetic ----

Outcome BoundArithmetic() {
  const double b = MisspecificationBound(0.02, 0.99, 10.0);
  return {b == 1980.0, Fmt("bound(0.02, 0.99, 10) = %.17g", b)};
}

// ---- 4: belief filter vs joint enumeration ----

// Posterior over the final state given actions and observations, summed over
// every state path with nonzero probability.
void EnumeratePaths(const ModelKernel& k, const std::vector<int>& actions,
                    const std::vector<int>& obs, int depth, int state, double weight,
                    std::vector<std::vector<double>>& mass) {
  mass[depth][state] += weight;
  if (depth == static_cast<int>(actions.size())) return;
  for (const Successor& e : k.Transitions(state, actions[depth], 0)) {
    const double w = weight * e.prob * k.ObservationProb(e.next, obs[depth]);
    if (w > 0.0) EnumeratePaths(k, actions, obs, depth + 1, e.next, w, mass);
  }
}

Outcome BeliefOracle() {
  Rng rng(404);
  double worst = 0.0;
  int trajectories = 0;
  while (trajectories < 100) {
    flow::PomdpConfig cfg = testing::RandomPomdpConfig(rng);
    cfg.p = testing::Draw(rng, 0.01, 0.5);
    const ModelKernel k = flow::BuildPomdp(cfg);
    const int ns = k.num_states();
    int s = SampleIndex(k.initial_belief(), rng);
    std::vector<int> actions, obs;
    for (int t = 0; t < 20 && !k.IsTerminal(s); ++t) {
      const int l = s % cfg.L + 1;
      const int d = (l > 1 && testing::DrawInt(rng, 0, 4) == 0) ? flow::kStop : flow::kContinue;
      s = k.SampleNextState(s, d, 0, rng);
      actions.push_back(d);
      obs.push_back(k.SampleObservation(s, rng));
    }
    if (actions.size() != 20) continue;
    ++trajectories;
    std::vector<std::vector<double>> mass(21, std::vector<double>(ns, 0.0));
    for (int s0 = 0; s0 < ns; ++s0) {
      if (k.initial_belief()[s0] > 0) {
        EnumeratePaths(k, actions, obs, 0, s0, k.initial_belief()[s0], mass);
      }
    }
    const std::vector<double> passive = {1.0};
    Belief b = Belief::Initial(k);
    for (int t = 0; t < 20; ++t) {
      b = BeliefUpdate(b, actions[t], obs[t], k, passive);
      double z = 0.0;
      for (double x : mass[t + 1]) z += x;
      for (int j = 0; j < ns; ++j) worst = std::max(worst, std::abs(b[j] - mass[t + 1][j] / z));
    }
  }
  return {worst < 1e-10, Fmt("100 trajectories x 20 steps, max abs error %.3g", worst)};
}

// ---- 5: SPSA vs grid ----

Outcome SpsaVsGrid() {
  const experiment::ModelInstance model = experiment::BuildModel("flow-pomdp", {{"p", 0.01}});
  const ModelKernel& k = *model.kernel;
  const FixedStrategy passive = FixedStrategy::Pure(0, 1);
  const int episodes = 10000;
  const uint64_t eval_seed = 5005;
  double best = -1e300, best_alpha = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const ThresholdStrategy pi = flow::MakeThresholdStrategy(i / 100.0, 3);
    const double v = EvaluateMonteCarlo(k, pi, passive, episodes, eval_seed).mean;
    if (v > best) best = v, best_alpha = i / 100.0;
  }
  const experiment::AlgorithmSettings settings = experiment::AlgorithmSettings::FromJson(
      "spsa", {{"spsa",
                {{"c", 1.0}, {"epsilon", 0.101}, {"lambda", 0.602}, {"A", 100}, {"a", 1.0},
                 {"iterations", 1000}}},
               {"episodes_per_evaluation", 20}});
  int within = 0;
  std::string values;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const StrategyPtr pi = experiment::LearnDefender("spsa", settings, k, model, passive, seed);
    const double v = EvaluateMonteCarlo(k, *pi, passive, episodes, eval_seed).mean;
    within += v >= best - 0.02 * std::abs(best);
    values += Fmt(" %.2f", v);
  }
  return {within >= 4, Fmt("grid optimum %.3f at alpha %.2f; %.0f/5 seeds within 2%%:", best,
                           best_alpha, within) +
                           values};
}

// ---- 6: rollout improvement ----

Outcome RolloutImprovement() {
  const ModelKernel k = recovery::Build(recovery::Config::Default(3));
  const int na = k.num_defender_actions();
  const FixedStrategy base(std::vector<double>(na, 1.0 / na));
  const FixedStrategy passive = FixedStrategy::Pure(0, 1);
  RolloutParams params;  // horizon 20, lookahead 1, 20 samples
  const int trials = 100, episodes = 10, steps = 25;
  EpisodeOptions opts;
  opts.max_steps = steps;
  int wins = 0;
  double gain = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    params.seed = DeriveSeed(606, {static_cast<uint64_t>(trial), 1});
    const RolloutStrategy rollout(k, base, passive, params);
    double rb = 0.0, rr = 0.0;
    for (int e = 0; e < episodes; ++e) {
      const uint64_t seed = DeriveSeed(606, {static_cast<uint64_t>(trial), 0,
                                             static_cast<uint64_t>(e)});
      Rng a(seed), b(seed);
      rb += RunEpisode(k, base, passive, a, opts).total_reward / episodes;
      rr += RunEpisode(k, rollout, passive, b, opts).total_reward / episodes;
    }
    wins += rr > rb;
    gain += (rr - rb) / trials;
  }
  return {wins >= 95, Fmt("rollout beats base in %.0f/100 trials, mean gain %.2f per episode",
                          wins, gain)};
}

// ---- 7: fictitious play ----

Outcome FictitiousPlayEquilibrium() {
  const ModelKernel mp = testing::MatchingPennies();
  FictitiousPlayParams p;
  p.rounds = 10000;
  p.eval_every = 10000;
  const auto r = FictitiousPlay(mp, ExactDpResponder(mp, Player::kDefender),
                                ExactDpResponder(mp, Player::kAttacker), p);
  double dev = 0.0;
  for (int i = 0; i < 2; ++i) {
    dev = std::max({dev, std::abs(r.defender.Row(0)[i] - 0.5), std::abs(r.attacker.Row(0)[i] - 0.5)});
  }
  const double mp_exploit = r.curve.back().exploitability;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int solved = 0;
  for (int g = 0; g < 20; ++g) {
    std::vector<std::vector<double>> payoff(3, std::vector<double>(3));
    for (auto& row : payoff) for (double& x : row) x = u(rng);
    const testing::MatrixSolution nash = testing::SolveMatrixGame(payoff);
    if (!nash.found) continue;
    ++solved;
    const ModelKernel k = testing::MatrixGame(payoff);
    std::vector<double> dt = nash.row, at = nash.col;
    dt.insert(dt.end(), {1.0, 0.0, 0.0});
    at.insert(at.end(), {1.0, 0.0, 0.0});
    worst = std::max(worst, ComputeExploitability(k, TabularStrategy(2, 3, dt),
                                                  TabularStrategy(2, 3, at))
                                .total());
  }
  return {dev <= 0.05 && mp_exploit < 0.05 && solved == 20 && worst < 1e-6,
          Fmt("pennies max deviation %.4f, exploitability %.4f; ", dev, mp_exploit) +
              Fmt("%.0f/20 Nash solved, max exploitability %.3g", solved, worst)};
}

// ---- 8: flow-game exploitability trend ----

Outcome FlowGameTrend() {
  const experiment::ExperimentConfig cfg = experiment::ExperimentConfig::FromJson(
      {{"model", "flow-game"},
       {"model_params", {{"L", 1}, {"grid", 10}}},
       {"algorithm", "fictitious-play"},
       {"algorithm_params", {{"rounds", 100}, {"eval_every", 1}, {"spsa", {{"iterations", 200}}}}}});
  const experiment::ModelInstance model = experiment::BuildModel(cfg.model, cfg.model_params);
  int halved = 0;
  std::string values;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    double first = NAN, last = NAN;
    long long last_round = -1;
    for (const auto& row : experiment::RunSeed(cfg, model, seed)) {
      if (row.metric_name != "exploitability") continue;
      if (row.round_or_update == 1) first = row.mean;
      if (row.round_or_update > last_round) last_round = row.round_or_update, last = row.mean;
    }
    halved += last <= 0.5 * first;
    values += Fmt(" %.3f->%.3f", first, last);
  }
  return {halved >= 4, Fmt("%.0f/5 seeds halved:", halved) + values};
}

// ---- 9: EM identification ----

Outcome EmIdentification() {
  const std::vector<double> w = {0.3, 0.5, 0.2}, mu = {0.0, 5.0, 11.0}, sd = {1.0, 1.5, 2.0};
  Rng rng(909);
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::vector<double> xs(20000);
  for (double& x : xs) {
    const int c = pick(rng);
    x = std::normal_distribution<double>(mu[c], sd[c])(rng);
  }
  const sysid::GmmFit fit = sysid::FitGmm(xs, 3, 9);
  std::vector<double> got;
  for (const auto& c : fit.model.components) got.push_back(c.mean);
  std::sort(got.begin(), got.end());
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(got[i] - mu[i]));
  // EM never lowers the likelihood; allow rounding at convergence only.
  double drop = 0.0;
  for (std::size_t i = 1; i < fit.log_likelihood.size(); ++i) {
    drop = std::max(drop, fit.log_likelihood[i - 1] - fit.log_likelihood[i]);
  }
  const double scale = 1e-12 * std::abs(fit.log_likelihood.back());
  return {got.size() == 3 && err <= 0.1 && drop <= scale,
          Fmt("max mean error %.4f, largest log-likelihood drop %.3g over %.0f iterations", err,
              drop, static_cast<double>(fit.log_likelihood.size()))};
}

// ---- 10: policy gradient ----

ModelKernel RewardingAction() {
  KernelBuilder b({"s0", "s1"}, {"a0", "a1"});
  for (int s = 0; s < 2; ++s) {
    for (int d = 0; d < 2; ++d) {
      b.SetTransition(s, d, 0, {{0, 0.5}, {1, 0.5}});
      b.SetReward(s, d, 0, d == 0 ? 1.0 : 0.0);
    }
  }
  b.SetFullyObserved();
  b.SetDiscount(0.99);
  b.SetInitialBelief({0.5, 0.5});
  return b.Build();
}

Outcome PolicyGradient() {
  // (a) clipped-surrogate gradient vs central differences.
  Rng rng(1010);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst_rel = 0.0;
  for (int point = 0; point < 20; ++point) {
    const PolicyNetwork net(5, 3, 1 + point % 2, 8);
    std::vector<double> theta(net.num_parameters());
    for (double& t : theta) t = 0.7 * n(rng);
    PolicyNetwork::Batch batch;
    for (int i = 0; i < 16; ++i) {
      for (int f = 0; f < 5; ++f) batch.features.push_back(n(rng));
      batch.actions.push_back(static_cast<int>(rng() % 3));
      std::vector<double> probs(3);
      net.Forward(theta, std::span<const double>(&batch.features[5 * i], 5), probs, nullptr);
      batch.old_log_probs.push_back(std::log(probs[batch.actions.back()]) + 0.3 * n(rng));
      batch.advantages.push_back(n(rng));
      batch.returns.push_back(n(rng));
    }
    std::vector<double> grad;
    net.Loss(theta, batch, 0.2, 0.102, 2e-4, &grad);
    double diff = 0.0, ng = 0.0, nf = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      std::vector<double> tp = theta, tm = theta;
      tp[i] += 1e-6;
      tm[i] -= 1e-6;
      const double fd = (net.Loss(tp, batch, 0.2, 0.102, 2e-4, nullptr) -
                         net.Loss(tm, batch, 0.2, 0.102, 2e-4, nullptr)) /
                        2e-6;
      diff += (grad[i] - fd) * (grad[i] - fd);
      ng += grad[i] * grad[i];
      nf += fd * fd;
    }
    worst_rel = std::max(worst_rel, std::sqrt(diff) / std::max(std::sqrt(ng), std::sqrt(nf)));
  }
  // (b) two-state MDP where action 0 always pays.
  const ModelKernel two = RewardingAction();
  PgParams p;
  p.updates = 40;
  p.max_episode_steps = 100;
  p.eval_episodes = 10;
  const FixedStrategy passive = FixedStrategy::Pure(0, 1);
  const PgResult r = TrainPg(two, passive, FeatureKind::kStateOneHot, p);
  const std::vector<double> table = StateActionTable(*r.policy, 2);
  const double optimal_share = std::min(table[0], table[2]);
  // (c) small replication MDP vs the exact optimum.
  const experiment::ModelInstance rep =
      experiment::BuildModel("replication-mdp", {{"s_max", 5}, {"N_1", 3}});
  const ModelKernel& k = *rep.kernel;
  const double optimum = InitialValue(k, BestResponse(k, passive, Player::kDefender).values);
  const experiment::AlgorithmSettings settings = experiment::AlgorithmSettings::FromJson(
      "pg", {{"pg",
                {{"updates", 30}, {"learning_rate", 1e-3}, {"eval_episodes", 50},
                 {"max_episode_steps", 200}}}});
  int close = 0;
  std::string values;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const StrategyPtr pi = experiment::LearnDefender("pg", settings, k, rep, passive, seed);
    const double v = InitialValue(
        k, EvaluatePolicy(k, TabularStrategy::FromStrategy(*pi, k.num_states()), passive));
    close += v >= optimum - 0.1 * std::abs(optimum);
    values += Fmt(" %.2f", v);
  }
  return {worst_rel <= 1e-4 && optimal_share >= 0.95 && close >= 3,
          Fmt("gradient rel error %.3g, two-state optimal share %.3f; ", worst_rel,
              optimal_share) +
              Fmt("replication optimum %.2f, %.0f/5 within 10%%:", optimum, close) + values};
}

// ---- 11: sensitivity sweep ----

Outcome SensitivitySweepTrend() {
  const experiment::SweepConfig cfg = experiment::SweepConfig::FromJson(
      {{"model", "flow-pomdp"},
       {"model_params", json::object()},
       {"param", "p"},
       {"true_value", 0.01},
       {"grid", {0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10}},
       {"algorithm", "spsa"},
       {"algorithm_params", {{"spsa", {{"iterations", 1000}}}, {"episodes_per_evaluation", 20}}},
       {"seeds", 5},
       {"eval_episodes", 1000}});
  const fs::path dir = fs::temp_directory_path() / "secrl_acceptance_sweep";
  fs::remove_all(dir);
  const experiment::SweepResult res = experiment::RunSweep(cfg, dir.string());
  fs::remove_all(dir);
  double lo = 1e300, hi = -1e300;
  for (const SweepRow& row : res.rows) {
    lo = std::min(lo, row.truth_mean);
    hi = std::max(hi, row.truth_mean);
  }
  const double variation = (hi - lo) / std::max(std::abs(hi), std::abs(lo));
  return {res.spearman_sim <= -0.9 && variation < 0.25,
          Fmt("spearman(sim, |p - p~|) = %.3f, truth range [%.2f, %.2f]", res.spearman_sim, lo,
              hi) +
              Fmt(" varies %.1f%%", 100 * variation)};
}

// ---- 12: replay determinism ----

std::vector<std::string> PlaySession(debugger::SessionManager& m, const std::string& model,
                                     uint64_t seed, int steps) {
  json snap = m.Create({{"model", model}, {"seed", seed}});
  const std::string id = snap["id"];
  const int nd = static_cast<int>(snap["defender_actions"].size());
  std::mt19937_64 rng(seed + 17);
  std::vector<std::string> out;
  auto keep = [&](json s) {
    s.erase("id");
    out.push_back(s.dump());
  };
  keep(snap);
  for (int i = 0; i < steps && !snap["done"].get<bool>(); ++i) {
    snap = m.Step(id, {{"defender_action", static_cast<int>(rng() % nd)}});
    keep(snap);
  }
  return out;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ReplayDeterminism() {
  int sessions = 0, identical = 0;
  for (const json& entry : experiment::ModelsJson()) {
    const std::string model = entry["name"];
    for (uint64_t seed : {1u, 2u, 3u}) {
      debugger::SessionManager a, b;
      ++sessions;
      identical += PlaySession(a, model, seed, 40) == PlaySession(b, model, seed, 40);
    }
  }
  if (g_cli.empty()) {
    return {false, Fmt("%.0f/%.0f sessions identical; CLI path not given", identical, sessions)};
  }
  const fs::path dir = fs::temp_directory_path() / "secrl_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const json config = {{"model", "flow-pomdp"},
                       {"model_params", json::object()},
                       {"algorithm", "spsa"},
                       {"algorithm_params",
                        {{"spsa", {{"iterations", 100}}}, {"eval_every", 25}, {"eval_episodes", 200}}},
                       {"seeds", {7, 8}}};
  std::ofstream(dir / "config.json") << config.dump(2);
  int csvs = 0, same = 0;
  std::vector<std::string> runs;
  for (const char* name : {"a", "b"}) {
    const std::string cmd = "\"" + g_cli + "\" run \"" + (dir / "config.json").string() +
                            "\" --out \"" + (dir / name).string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cmd};
  }
  for (const char* file : {"seed_7.csv", "seed_8.csv", "aggregate.csv"}) {
    const std::string x = Slurp(dir / "a" / file), y = Slurp(dir / "b" / file);
    ++csvs;
    same += !x.empty() && x == y;
  }
  fs::remove_all(dir);
  return {identical == sessions && same == csvs,
          Fmt("%.0f/%.0f sessions bit-identical, ", identical, sessions) +
              Fmt("%.0f/%.0f CSVs byte-identical", same, csvs)};
}

}  // namespace
}  // namespace secrl

int main(int argc, char** argv) {
  using secrl::Outcome;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "kernel validity over random configs", secrl::KernelValidity},
      {2, "misspecification bound on random MDP pairs", secrl::BoundTheorem},
      {3, "bound arithmetic", secrl::BoundArithmetic},
      {4, "belief filter vs joint enumeration", secrl::BeliefOracle},
      {5, "SPSA threshold vs grid optimum", secrl::SpsaVsGrid},
      {6, "rollout improves a random base", secrl::RolloutImprovement},
      {7, "fictitious play equilibrium", secrl::FictitiousPlayEquilibrium},
      {8, "flow-game exploitability halves", secrl::FlowGameTrend},
      {9, "EM identification", secrl::EmIdentification},
      {10, "policy-gradient sanity", secrl::PolicyGradient},
      {11, "sensitivity sweep", secrl::SensitivitySweepTrend},
      {12, "replay determinism", secrl::ReplayDeterminism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && std::all_of(arg.begin(), arg.end(), ::isdigit)) {
      only.insert(std::stoi(arg));
    } else {
      secrl::g_cli = arg;
    }
  }
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
