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

#include "secrl/learning/spsa.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "secrl/core/error.h"
#include "secrl/core/json_util.h"
#include "secrl/core/random.h"

namespace secrl {

double SpsaParams::StepGain(int k) const { return a / std::pow(A + k + 1.0, lambda); }

double SpsaParams::PerturbationGain(int k) const { return c / std::pow(k + 1.0, epsilon); }

void SpsaParams::Validate() const {
  if (!(c > 0.0)) Fail(ErrorCode::kInvalidConfig, "spsa.c: must be > 0");
  if (!(a > 0.0)) Fail(ErrorCode::kInvalidConfig, "spsa.a: must be > 0");
  if (!(A >= 0.0)) Fail(ErrorCode::kInvalidConfig, "spsa.A: must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "spsa.epsilon: must lie in (0, 1)");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "spsa.lambda: must lie in (0, 1]");
  }
  if (iterations < 0) Fail(ErrorCode::kInvalidConfig, "spsa.iterations: must be >= 0");
}

SpsaParams SpsaParams::FromJson(const nlohmann::json& doc) {
  JsonCheckKeys(doc, {"c", "epsilon", "lambda", "A", "a", "iterations", "seed",
                      "evaluate_iterates"});
  SpsaParams p;
  p.c = JsonGetOr<double>(doc, "c", p.c);
  p.epsilon = JsonGetOr<double>(doc, "epsilon", p.epsilon);
  p.lambda = JsonGetOr<double>(doc, "lambda", p.lambda);
  p.A = JsonGetOr<double>(doc, "A", p.A);
  p.a = JsonGetOr<double>(doc, "a", p.a);
  p.iterations = JsonGetOr<int>(doc, "iterations", p.iterations);
  p.seed = JsonGetOr<uint64_t>(doc, "seed", p.seed);
  p.evaluate_iterates = JsonGetOr<bool>(doc, "evaluate_iterates", p.evaluate_iterates);
  p.Validate();
  return p;
}

SpsaResult SpsaOptimize(const SpsaObjective& objective, std::vector<double> theta0,
                        const std::vector<double>& lower, const std::vector<double>& upper,
                        const SpsaParams& params) {
  params.Validate();
  const std::size_t n = theta0.size();
  if (lower.size() != n || upper.size() != n) {
    Fail(ErrorCode::kShapeMismatch, "spsa: bounds must match theta");
  }
  auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  };
  SpsaResult result;
  result.theta = std::move(theta0);
  project(result.theta);
  Rng rng(DeriveSeed(params.seed, {0x5b5a}));
  std::vector<double> delta(n), plus(n), minus(n);
  for (int k = 0; k < params.iterations; ++k) {
    const double ak = params.StepGain(k);
    const double ck = params.PerturbationGain(k);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = (rng() & 1) ? 1.0 : -1.0;
      // Shrink the perturbation so both points stay inside the box, keeping
      // the difference symmetric; the floor lets iterates leave a face.
      const double room = std::min(result.theta[i] - lower[i], upper[i] - result.theta[i]);
      const double ci = std::max(std::min(ck, room), 0.1 * ck);
      plus[i] = result.theta[i] + ci * delta[i];
      minus[i] = result.theta[i] - ci * delta[i];
    }
    project(plus);
    project(minus);
    const uint64_t eval_seed = DeriveSeed(params.seed, {static_cast<uint64_t>(k), 1});
    const double yp = objective(plus, eval_seed);
    const double ym = objective(minus, eval_seed);
    for (std::size_t i = 0; i < n; ++i) {
      // Divide by the realized (projected) spread so boundary clipping does
      // not inflate the estimate.
      const double spread = plus[i] - minus[i];
      if (spread != 0.0) result.theta[i] += ak * (yp - ym) / spread;
    }
    project(result.theta);
    const double value =
        params.evaluate_iterates
            ? objective(result.theta, DeriveSeed(params.seed, {static_cast<uint64_t>(k), 2}))
            : 0.5 * (yp + ym);
    result.history.push_back({k + 1, result.theta, value});
  }
  return result;
}

}  // namespace secrl
