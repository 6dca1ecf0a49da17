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

#include "secrl/usecases/replication.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"
#include "secrl/core/kernel_json.h"
#include "secrl/core/random.h"
#include "secrl/core/validate.h"

namespace secrl::replication {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) Fail(ErrorCode::kInvalidConfig, what);
}

std::vector<double> Binomial(int n, double p) {
  std::vector<double> out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    out[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) *
             std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  return out;
}

std::vector<std::string> CountNames(int s_max) {
  std::vector<std::string> names;
  for (int s = 0; s <= s_max; ++s) names.push_back(std::to_string(s));
  return names;
}

// Per-(s, a) successor rows of the single-agent dynamics.
std::vector<std::vector<Successor>> BaseRows(const Config& cfg) {
  std::vector<std::vector<Successor>> rows;
  if (cfg.kernel_source == "file") {
    ModelKernel k = LoadKernel(cfg.kernel_path);
    if (k.num_states() != cfg.s_max + 1 || k.num_defender_actions() != 2 ||
        k.num_attacker_actions() != 1) {
      Fail(ErrorCode::kFileFormat, cfg.kernel_path + ": expected s_max + 1 states and 2 actions");
    }
    ValidationReport report = ValidateKernel(k);
    if (!report.ok()) Fail(ErrorCode::kFileFormat, cfg.kernel_path + ": " + report.ToString());
    for (int s = 0; s <= cfg.s_max; ++s) {
      for (int a = 0; a < 2; ++a) {
        auto t = k.Transitions(s, a, 0);
        rows.emplace_back(t.begin(), t.end());
      }
    }
    return rows;
  }
  for (int s = 0; s <= cfg.s_max; ++s) {
    const std::vector<double> survive = Binomial(s, 1.0 - cfg.fail_prob);
    for (int a = 0; a < 2; ++a) {
      std::vector<Successor> row;
      for (int k = 0; k <= s; ++k) {
        if (survive[k] == 0.0) continue;
        if (a == kAdd) {
          row.push_back({std::min(cfg.s_max, k + 1), survive[k] * cfg.add_prob});
          if (cfg.add_prob < 1.0) row.push_back({k, survive[k] * (1.0 - cfg.add_prob)});
        } else {
          row.push_back({k, survive[k]});
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double ScalarizedReward(const Config& cfg, int s, int a) {
  return -(a + (s < cfg.r_min ? cfg.lambda : 0.0));
}

}  // namespace

void Config::Validate() const {
  Require(s_max >= 1, "s_max: must be >= 1");
  Require(N_1 >= 0 && N_1 <= s_max, "N_1: must lie in [0, s_max]");
  Require(kernel_source == "parametric" || kernel_source == "file",
          "kernel_source: must be 'parametric' or 'file'");
  if (kernel_source == "file") Require(!kernel_path.empty(), "kernel_path: required for file");
  Require(fail_prob >= 0.0 && fail_prob <= 1.0, "fail_prob: must lie in [0, 1]");
  Require(add_prob >= 0.0 && add_prob <= 1.0, "add_prob: must lie in [0, 1]");
  Require(epsilon_A > 0.0 && epsilon_A < 1.0, "epsilon_A: must lie in (0, 1)");
  Require(p_A >= 0.0 && p_A <= 1.0, "p_A: must lie in [0, 1]");
  Require(r_min >= 0 && r_min <= s_max, "r_min: must lie in [0, s_max]");
  Require(lambda >= 0.0, "lambda: must be >= 0");
  Require(gamma >= 0.0 && gamma < 1.0, "gamma: must lie in [0, 1)");
}

Config Config::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"s_max", "N_1", "kernel_source", "kernel_path", "fail_prob", "add_prob",
                      "epsilon_A", "p_A", "r_min", "lambda", "gamma"});
  Config c;
  c.s_max = JsonGetOr<int>(doc, "s_max", c.s_max);
  c.N_1 = JsonGetOr<int>(doc, "N_1", c.N_1);
  c.kernel_source = JsonGetOr<std::string>(doc, "kernel_source", c.kernel_source);
  c.kernel_path = JsonGetOr<std::string>(doc, "kernel_path", c.kernel_path);
  c.fail_prob = JsonGetOr<double>(doc, "fail_prob", c.fail_prob);
  c.add_prob = JsonGetOr<double>(doc, "add_prob", c.add_prob);
  c.epsilon_A = JsonGetOr<double>(doc, "epsilon_A", c.epsilon_A);
  c.p_A = JsonGetOr<double>(doc, "p_A", c.p_A);
  c.r_min = JsonGetOr<int>(doc, "r_min", c.r_min);
  c.lambda = JsonGetOr<double>(doc, "lambda", c.lambda);
  c.gamma = JsonGetOr<double>(doc, "gamma", c.gamma);
  c.Validate();
  return c;
}

ModelKernel BuildMdp(const Config& cfg) {
  cfg.Validate();
  auto rows = BaseRows(cfg);
  KernelBuilder b(CountNames(cfg.s_max), {"wait", "add"});
  for (int s = 0; s <= cfg.s_max; ++s) {
    for (int a = 0; a < 2; ++a) {
      b.SetTransition(s, a, 0, rows[2 * s + a]);
      b.SetReward(s, a, 0, ScalarizedReward(cfg, s, a));
    }
  }
  b.SetFullyObserved();
  b.SetDiscount(cfg.gamma);
  std::vector<double> b1(cfg.s_max + 1, 0.0);
  b1[cfg.N_1] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

std::vector<double> AttackOutcome(int s, int k, double p_A, int s_max) {
  std::vector<double> out(s_max + 1, 0.0);
  const int targeted = std::min(k, s);
  const std::vector<double> lost = Binomial(targeted, p_A);
  for (int j = 0; j <= targeted; ++j) out[s - j] += lost[j];
  return out;
}

ModelKernel BuildGame(const Config& cfg) {
  cfg.Validate();
  auto rows = BaseRows(cfg);
  std::vector<std::string> attacks;
  for (int k = 0; k <= cfg.s_max; ++k) attacks.push_back("target" + std::to_string(k));
  KernelBuilder b(CountNames(cfg.s_max), {"wait", "add"}, attacks);
  for (int s = 0; s <= cfg.s_max; ++s) {
    for (int k = 0; k <= cfg.s_max; ++k) {
      const std::vector<double> mid = AttackOutcome(s, k, cfg.p_A, cfg.s_max);
      for (int a = 0; a < 2; ++a) {
        std::vector<Successor> row;
        for (int m = 0; m <= cfg.s_max; ++m) {
          if (mid[m] == 0.0) continue;
          for (const Successor& e : rows[2 * m + a]) row.push_back({e.next, mid[m] * e.prob});
        }
        b.SetTransition(s, a, k, std::move(row));
        b.SetReward(s, a, k, ScalarizedReward(cfg, s, a));
      }
    }
  }
  b.SetFullyObserved();
  b.SetDiscount(cfg.gamma);
  std::vector<double> b1(cfg.s_max + 1, 0.0);
  b1[cfg.N_1] = 1.0;
  b.SetInitialBelief(b1);
  return b.Build();
}

AvailabilityReport AvailabilityEvaluator::Stationary(const Strategy& policy, double tolerance,
                                                     int max_iterations) const {
  const int ns = kernel_.num_states();
  const std::vector<double> pi = StateActionTable(policy, ns);
  std::vector<double> mu(ns, 0.0), next(ns);
  mu[N_1_] = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int s = 0; s < ns; ++s) {
      if (mu[s] == 0.0) continue;
      next[s] += 0.5 * mu[s];
      for (int a = 0; a < 2; ++a) {
        const double w = 0.5 * mu[s] * pi[2 * s + a];
        if (w == 0.0) continue;
        for (const Successor& e : kernel_.Transitions(s, a, 0)) next[e.next] += w * e.prob;
      }
    }
    double delta = 0.0;
    for (int s = 0; s < ns; ++s) delta = std::max(delta, std::abs(next[s] - mu[s]));
    mu.swap(next);
    if (delta < tolerance) break;
  }
  AvailabilityReport r;
  for (int s = 0; s < ns; ++s) {
    r.average_cost += mu[s] * pi[2 * s + kAdd];
    if (s >= r_min_) r.availability += mu[s];
  }
  r.occupancy = std::move(mu);
  return r;
}

AvailabilityReport AvailabilityEvaluator::MonteCarlo(const Strategy& policy, int steps,
                                                     uint64_t seed) const {
  Rng rng(DeriveSeed(seed, {0xa7}));
  const int ns = kernel_.num_states();
  const std::vector<double> pi = StateActionTable(policy, ns);
  AvailabilityReport r;
  r.occupancy.assign(ns, 0.0);
  int s = N_1_;
  for (int t = 0; t < steps; ++t) {
    const int a = SampleIndex(std::span<const double>(pi.data() + 2 * s, 2), rng);
    r.occupancy[s] += 1.0;
    r.average_cost += a;
    if (s >= r_min_) r.availability += 1.0;
    s = kernel_.SampleNextState(s, a, 0, rng);
  }
  r.average_cost /= steps;
  r.availability /= steps;
  for (double& x : r.occupancy) x /= steps;
  return r;
}

std::vector<int> RelativeValueIteration(const ModelKernel& kernel, double lambda, int r_min) {
  const int ns = kernel.num_states();
  std::vector<double> h(ns, 0.0), next(ns);
  std::vector<int> policy(ns, 0);
  for (int it = 0; it < 1000000; ++it) {
    for (int s = 0; s < ns; ++s) {
      double best = -1e300;
      for (int a = 0; a < 2; ++a) {
        // Lazy chain: half the mass stays put.
        double q = -(a + (s < r_min ? lambda : 0.0)) + 0.5 * h[s];
        for (const Successor& e : kernel.Transitions(s, a, 0)) q += 0.5 * e.prob * h[e.next];
        if (q > best + 1e-12 * (1.0 + std::abs(best))) {
          best = q;
          policy[s] = a;
        }
      }
      next[s] = best;
    }
    const double ref = next[0];
    double lo = 1e300, hi = -1e300;
    for (int s = 0; s < ns; ++s) {
      const double diff = next[s] - h[s];
      lo = std::min(lo, diff);
      hi = std::max(hi, diff);
      next[s] -= ref;
    }
    h.swap(next);
    if (hi - lo < 1e-11 * (1.0 + lambda)) break;
  }
  return policy;
}

ConstrainedSolution SolveConstrained(const Config& cfg, double lambda_max, double tolerance) {
  ModelKernel k = BuildMdp(cfg);
  AvailabilityEvaluator eval(k, cfg.N_1, cfg.r_min);
  auto solve = [&](double lambda) {
    ConstrainedSolution sol;
    sol.lambda = lambda;
    sol.policy = RelativeValueIteration(k, lambda, cfg.r_min);
    sol.report = eval.Stationary(TabularStrategy::Deterministic(sol.policy, 2));
    sol.feasible = sol.report.availability >= cfg.epsilon_A;
    return sol;
  };
  ConstrainedSolution lo = solve(0.0);
  if (lo.feasible) return lo;
  ConstrainedSolution hi = solve(lambda_max);
  if (!hi.feasible) return hi;
  double a = 0.0, b = lambda_max;
  while (b - a > tolerance * std::max(1.0, a)) {
    const double mid = 0.5 * (a + b);
    ConstrainedSolution m = solve(mid);
    if (m.feasible) {
      b = mid;
      hi = m;
    } else {
      a = mid;
    }
  }
  return hi;
}

}  // namespace secrl::replication
