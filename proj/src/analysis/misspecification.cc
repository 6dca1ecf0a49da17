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

#include "secrl/analysis/misspecification.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "secrl/core/dynamic_programming.h"
#include "secrl/core/error.h"
#include "secrl/core/random.h"
#include "secrl/core/simulate.h"

namespace secrl {
namespace {

void RequireSameSpaces(const ModelKernel& a, const ModelKernel& b) {
  if (a.num_states() != b.num_states() || a.num_defender_actions() != b.num_defender_actions() ||
      a.num_attacker_actions() != b.num_attacker_actions()) {
    Fail(ErrorCode::kShapeMismatch, "kernels have different state or action spaces");
  }
}

double RowDistance(std::span<const Successor> x, std::span<const Successor> y) {
  // Rows are sorted by successor index.
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].next < y[j].next)) {
      d += std::abs(x[i++].prob);
    } else if (i == x.size() || y[j].next < x[i].next) {
      d += std::abs(y[j++].prob);
    } else {
      d += std::abs(x[i++].prob - y[j++].prob);
    }
  }
  return d;
}

std::vector<double> Ranks(const std::vector<double>& v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

void MeanStd(const std::vector<double>& v, double* mean, double* std) {
  *mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - *mean) * (x - *mean);
  *std = std::sqrt(ss / v.size());
}

struct Decimal {
  uint64_t mantissa;
  int exp;
};

// Shortest round-trip decimal of a finite nonnegative double.
bool ToDecimal(double x, Decimal* out) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  if (res.ec != std::errc()) return false;
  const std::string text(buf, res.ptr);
  const std::size_t e_pos = text.find('e');
  std::string digits;
  for (std::size_t i = 0; i < e_pos; ++i) {
    if (text[i] >= '0' && text[i] <= '9') digits.push_back(text[i]);
  }
  const int exp10 = std::stoi(text.substr(e_pos + 1));
  out->mantissa = std::stoull(digits);
  out->exp = exp10 - static_cast<int>(digits.size()) + 1;
  return true;
}

}  // namespace

double TotalVariationAlpha(const ModelKernel& k1, const ModelKernel& k2) {
  RequireSameSpaces(k1, k2);
  double alpha = 0.0;
  for (int s = 0; s < k1.num_states(); ++s) {
    for (int d = 0; d < k1.num_defender_actions(); ++d) {
      for (int a = 0; a < k1.num_attacker_actions(); ++a) {
        alpha = std::max(alpha, RowDistance(k1.Transitions(s, d, a), k2.Transitions(s, d, a)));
      }
    }
  }
  return alpha;
}

double MaxAbsReward(const ModelKernel& k) {
  double beta = 0.0;
  for (double r : k.rewards()) beta = std::max(beta, std::abs(r));
  return beta;
}

double MisspecificationBound(double alpha, double gamma, double beta) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    Fail(ErrorCode::kInvalidDiscount, "gamma must lie in [0, 1)");
  }
  if (!(alpha >= 0.0 && beta >= 0.0)) Fail(ErrorCode::kInvalidConfig, "alpha, beta must be >= 0");
  // Evaluate on the shortest decimal form of each input so that decimal
  // inputs give the decimal answer (0.02, 0.99, 10 -> 1980, not 1979.99...).
  Decimal a, g, b;
  if (ToDecimal(alpha, &a) && ToDecimal(gamma, &g) && ToDecimal(beta, &b) && g.exp < 0 &&
      g.exp >= -30) {
    unsigned __int128 scale = 1;
    for (int i = 0; i < -g.exp; ++i) scale *= 10;
    const unsigned __int128 d = scale - g.mantissa;  // (1 - gamma) * 10^-e
    unsigned __int128 num, den;
    if (!__builtin_mul_overflow(a.mantissa, g.mantissa, &num) &&
        !__builtin_mul_overflow(num, static_cast<unsigned __int128>(b.mantissa), &num) &&
        !__builtin_mul_overflow(d, d, &den)) {
      // bound = num / den * 10^(e_a + e_b - e_g)
      const unsigned __int128 q = num / den, r = num % den;
      long double v = static_cast<long double>(q) +
                      static_cast<long double>(r) / static_cast<long double>(den);
      const int e = a.exp + b.exp - g.exp;
      if (r == 0 && e >= 0) {
        // Exact integer result when it fits.
        unsigned __int128 n = q;
        bool ok = true;
        for (int i = 0; i < e && ok; ++i) ok = !__builtin_mul_overflow(n, 10, &n);
        if (ok) return static_cast<double>(n);
      }
      return static_cast<double>(v * std::pow(10.0L, static_cast<long double>(e)));
    }
  }
  return alpha * gamma * beta / ((1.0 - gamma) * (1.0 - gamma));
}

nlohmann::json MisspecReport::ToJson() const {
  return {{"alpha", alpha}, {"beta", beta},   {"gamma", gamma},
          {"bound", bound}, {"measured_gap", measured_gap}, {"holds", holds}};
}

MisspecReport BoundCheck(const ModelKernel& k, const ModelKernel& k_tilde,
                         const Strategy& defender, const Strategy& attacker) {
  RequireSameSpaces(k, k_tilde);
  if (k.discount() != k_tilde.discount()) {
    Fail(ErrorCode::kRewardMismatch, "kernels have different discount factors");
  }
  const auto r1 = k.rewards(), r2 = k_tilde.rewards();
  if (!std::equal(r1.begin(), r1.end(), r2.begin(), r2.end())) {
    Fail(ErrorCode::kRewardMismatch, "kernels must share the reward table");
  }
  MisspecReport rep;
  rep.alpha = TotalVariationAlpha(k, k_tilde);
  rep.beta = MaxAbsReward(k);
  rep.gamma = k.discount();
  rep.bound = MisspecificationBound(rep.alpha, rep.gamma, rep.beta);
  EvaluationOptions opts;
  opts.tolerance = 1e-12;
  const std::vector<double> j = EvaluatePolicy(k, defender, attacker, opts);
  const std::vector<double> jt = EvaluatePolicy(k_tilde, defender, attacker, opts);
  for (std::size_t s = 0; s < j.size(); ++s) {
    rep.measured_gap = std::max(rep.measured_gap, std::abs(j[s] - jt[s]));
  }
  rep.holds = rep.measured_gap <= rep.bound + 1e-9;
  return rep;
}

double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    Fail(ErrorCode::kShapeMismatch, "spearman: need two equal-length series of length >= 2");
  }
  const std::vector<double> rx = Ranks(x), ry = Ranks(y);
  double mx, sx, my, sy;
  MeanStd(rx, &mx, &sx);
  MeanStd(ry, &my, &sy);
  double cov = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) cov += (rx[i] - mx) * (ry[i] - my);
  cov /= rx.size();
  return cov / (sx * sy);
}

std::vector<SweepRow> SensitivitySweep(const SweepSpec& spec) {
  if (spec.grid.empty() || spec.seeds < 1 || spec.eval_episodes < 1) {
    Fail(ErrorCode::kInvalidConfig, "sweep: need a grid, seeds >= 1 and eval_episodes >= 1");
  }
  const ModelKernel truth = spec.build(spec.true_param);
  const int g_count = static_cast<int>(spec.grid.size());
  const int cells = g_count * spec.seeds;
  std::vector<double> sim(cells), real(cells);
  std::vector<ModelKernel> models;
  models.reserve(g_count);
  for (double p : spec.grid) models.push_back(spec.build(p));
  const std::shared_ptr<const Strategy> attacker =
      spec.attacker ? spec.attacker
                    : std::make_shared<const FixedStrategy>(FixedStrategy::Pure(0, 1));
  EpisodeOptions eo;
  eo.max_steps = spec.max_episode_steps;
  // Cells run serially; Monte-Carlo evaluation parallelizes inside.
  for (int c = 0; c < cells; ++c) {
    const int g = c / spec.seeds, r = c % spec.seeds;
    const uint64_t seed =
        DeriveSeed(spec.base_seed, {static_cast<uint64_t>(g), static_cast<uint64_t>(r)});
    const std::shared_ptr<const Strategy> learned = spec.learn(models[g], seed);
    sim[c] = EvaluateMonteCarlo(models[g], *learned, *attacker, spec.eval_episodes,
                                DeriveSeed(seed, {1}), eo)
                 .mean;
    real[c] = EvaluateMonteCarlo(truth, *learned, *attacker, spec.eval_episodes,
                                 DeriveSeed(seed, {2}), eo)
                  .mean;
  }
  std::vector<SweepRow> rows;
  for (int g = 0; g < g_count; ++g) {
    SweepRow row{std::abs(spec.true_param - spec.grid[g]), spec.grid[g], 0, 0, 0, 0};
    MeanStd({sim.begin() + g * spec.seeds, sim.begin() + (g + 1) * spec.seeds}, &row.sim_mean,
            &row.sim_std);
    MeanStd({real.begin() + g * spec.seeds, real.begin() + (g + 1) * spec.seeds},
            &row.truth_mean, &row.truth_std);
    rows.push_back(row);
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "misspecification,sim_mean,sim_std,truth_mean,truth_std\n";
  char buf[256];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.misspecification,
                  r.sim_mean, r.sim_std, r.truth_mean, r.truth_std);
    out += buf;
  }
  return out;
}

}  // namespace secrl
