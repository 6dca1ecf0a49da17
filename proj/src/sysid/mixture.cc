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

#include "secrl/sysid/mixture.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "secrl/core/error.h"
#include "secrl/core/random.h"

namespace secrl::sysid {
namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

double LogNormal(double x, double mean, double stddev) {
  const double z = (x - mean) / stddev;
  return -0.5 * z * z - std::log(stddev) - kLogSqrt2Pi;
}

// Normal mass on [lo, hi), evaluated on the tail side for accuracy.
double IntervalMass(double mean, double stddev, double lo, double hi) {
  const double a = (lo - mean) / (stddev * std::numbers::sqrt2);
  const double b = (hi - mean) / (stddev * std::numbers::sqrt2);
  if (a >= 0.0) return 0.5 * (std::erfc(a) - std::erfc(b));
  if (b <= 0.0) return 0.5 * (std::erfc(-b) - std::erfc(-a));
  return 1.0 - 0.5 * std::erfc(b) - 0.5 * std::erfc(-a);
}

double LogSumExp(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

std::vector<double> Normalize(std::vector<double> mass, const std::vector<double>& log_fallback) {
  double total = 0.0;
  for (double x : mass) total += x;
  if (total > 1e-300) {
    for (double& x : mass) x /= total;
    return mass;
  }
  // All mass underflowed: the mixture sits far outside the support. Use the
  // log density at each point instead.
  const double lse = LogSumExp(log_fallback);
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = std::exp(log_fallback[i] - lse);
  return mass;
}

}  // namespace

double MixtureModel::LogDensity(double x) const {
  std::vector<double> terms;
  for (const auto& c : components) {
    if (c.weight > 0.0) terms.push_back(std::log(c.weight) + LogNormal(x, c.mean, c.stddev));
  }
  return LogSumExp(terms);
}

double MixtureModel::Density(double x) const { return std::exp(LogDensity(x)); }

void MixtureModel::Check() const {
  if (components.empty()) Fail(ErrorCode::kInvalidConfig, "mixture has no components");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0)) Fail(ErrorCode::kInvalidConfig, "mixture weights must be >= 0");
    if (!(c.stddev > 0.0)) Fail(ErrorCode::kInvalidConfig, "mixture stddevs must be > 0");
    if (!std::isfinite(c.mean)) Fail(ErrorCode::kInvalidConfig, "mixture mean is not finite");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) Fail(ErrorCode::kInvalidConfig, "mixture weights must sum to 1");
  if (support_max < support_min) Fail(ErrorCode::kInvalidConfig, "mixture support is empty");
}

GmmFit FitGmm(const std::vector<double>& samples, int k, uint64_t seed,
              const GmmOptions& options) {
  if (k < 1) Fail(ErrorCode::kInvalidConfig, "component count must be >= 1");
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(10 * k)) {
    Fail(ErrorCode::kInvalidConfig, "need at least 10 samples per component");
  }
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : samples) var += (x - mean) * (x - mean);
  var /= n;
  GmmFit fit;
  double floor = options.variance_floor * var;
  if (!(floor > 0.0)) {
    floor = 1e-12;
    fit.warnings.push_back("samples have zero variance; using an absolute variance floor");
  }

  // k-means++ seeding: first mean uniform, later ones proportional to D^2.
  Rng rng(DeriveSeed(seed, {0x9d}));
  std::vector<double> means;
  means.push_back(samples[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
  std::vector<double> d2(n);
  while (static_cast<int>(means.size()) < k) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double m : means) best = std::min(best, (samples[i] - m) * (samples[i] - m));
      d2[i] = best;
    }
    double total = 0.0;
    for (double v : d2) total += v;
    if (total <= 0.0) {
      means.push_back(means.back());
      continue;
    }
    means.push_back(samples[SampleIndex(d2, rng)]);
  }
  std::vector<double> weights(k, 1.0 / k), vars(k, std::max(var, floor));
  std::vector<bool> warned(k, false);

  std::vector<double> resp(n * k);
  std::vector<double> logp(k);
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < options.max_iterations; ++it) {
    // E-step.
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < k; ++j) {
        logp[j] = weights[j] > 0.0
                      ? std::log(weights[j]) + LogNormal(samples[i], means[j], std::sqrt(vars[j]))
                      : -std::numeric_limits<double>::infinity();
      }
      const double lse = LogSumExp(logp);
      ll += lse;
      for (int j = 0; j < k; ++j) resp[i * k + j] = std::exp(logp[j] - lse);
    }
    fit.log_likelihood.push_back(ll);
    fit.iterations = it + 1;
    if (it > 0 && (ll - previous) / n < options.tolerance) {
      fit.converged = true;
      break;
    }
    previous = ll;
    // M-step.
    for (int j = 0; j < k; ++j) {
      double nk = 0.0, sx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        nk += resp[i * k + j];
        sx += resp[i * k + j] * samples[i];
      }
      weights[j] = nk / n;
      if (nk <= 0.0) continue;
      means[j] = sx / nk;
      double sv = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = samples[i] - means[j];
        sv += resp[i * k + j] * dx * dx;
      }
      vars[j] = sv / nk;
      if (vars[j] < floor) {
        vars[j] = floor;
        if (!warned[j]) {
          warned[j] = true;
          fit.warnings.push_back("DegenerateComponent: component " + std::to_string(j) +
                                 " variance clamped to the floor");
        }
      }
    }
  }
  for (int j = 0; j < k; ++j) {
    fit.model.components.push_back({weights[j], means[j], std::sqrt(vars[j])});
  }
  std::sort(fit.model.components.begin(), fit.model.components.end(),
            [](const MixtureComponent& a, const MixtureComponent& b) { return a.mean < b.mean; });
  // Renormalize weights so they sum to 1 to double precision.
  double wsum = 0.0;
  for (const auto& c : fit.model.components) wsum += c.weight;
  for (auto& c : fit.model.components) c.weight /= wsum;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  fit.model.support_min = static_cast<int64_t>(std::floor(*lo));
  fit.model.support_max = static_cast<int64_t>(std::ceil(*hi));
  return fit;
}

std::vector<double> DiscretizeMixture(const MixtureModel& m) {
  return DiscretizeMixtureBinned(m, static_cast<int>(m.support_max - m.support_min + 1));
}

std::vector<double> DiscretizeMixtureBinned(const MixtureModel& m, int bins) {
  m.Check();
  const int64_t range = m.support_max - m.support_min + 1;
  if (bins < 1 || bins > range) Fail(ErrorCode::kInvalidConfig, "bin count out of range");
  const int64_t width = (range + bins - 1) / bins;
  std::vector<double> mass(bins, 0.0), log_fallback(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    const int64_t first = m.support_min + b * width;
    const int64_t last = std::min(m.support_max, first + width - 1);
    if (first > last) {
      log_fallback[b] = -std::numeric_limits<double>::infinity();
      continue;
    }
    for (const auto& c : m.components) {
      mass[b] += c.weight * IntervalMass(c.mean, c.stddev, first - 0.5, last + 0.5);
    }
    const double mid = 0.5 * (first + last);
    log_fallback[b] = m.LogDensity(mid) + std::log(static_cast<double>(last - first + 1));
  }
  return Normalize(std::move(mass), log_fallback);
}

int BinOf(const MixtureModel& m, int bins, int64_t value) {
  const int64_t range = m.support_max - m.support_min + 1;
  const int64_t width = (range + bins - 1) / bins;
  const int64_t v = std::clamp(value, m.support_min, m.support_max);
  return static_cast<int>(std::min<int64_t>((v - m.support_min) / width, bins - 1));
}

nlohmann::json ToJson(const MixtureModel& m) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : m.components) {
    comps.push_back({{"weight", c.weight}, {"mean", c.mean}, {"stddev", c.stddev}});
  }
  return {{"components", comps}, {"support", {m.support_min, m.support_max}}};
}

MixtureModel MixtureFromJson(const nlohmann::json& doc) {
  MixtureModel m;
  try {
    for (const auto& c : doc.at("components")) {
      m.components.push_back(
          {c.at("weight").get<double>(), c.at("mean").get<double>(), c.at("stddev").get<double>()});
    }
    m.support_min = doc.at("support").at(0).get<int64_t>();
    m.support_max = doc.at("support").at(1).get<int64_t>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kFileFormat, std::string("mixture: ") + e.what());
  }
  m.Check();
  return m;
}

}  // namespace secrl::sysid
