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

#ifndef SECRL_LEARNING_SPSA_H_
#define SECRL_LEARNING_SPSA_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "json.hpp"

namespace secrl {

struct SpsaParams {
  double c = 1.0;
  double epsilon = 0.101;
  double lambda = 0.602;
  double A = 100.0;
  double a = 1.0;
  int iterations = 1000;
  uint64_t seed = 0;
  // Evaluate the objective at every iterate for the history (one extra call
  // per iteration). When false the history records the mean of the two
  // perturbed evaluations instead.
  bool evaluate_iterates = true;

  // a_k = a / (A + k + 1)^lambda, c_k = c / (k + 1)^epsilon.
  double StepGain(int k) const;
  double PerturbationGain(int k) const;
  void Validate() const;
  static SpsaParams FromJson(const nlohmann::json& doc);
};

struct SpsaIterate {
  int iteration;
  std::vector<double> theta;
  double value;
};

struct SpsaResult {
  std::vector<double> theta;
  std::vector<SpsaIterate> history;
};

// Noisy objective to maximize. The seed lets callers use common random
// numbers: both perturbed evaluations of one iteration share a seed.
using SpsaObjective = std::function<double(std::span<const double> theta, uint64_t seed)>;

// Maximizes `objective` over the box [lower, upper]. Near a face the
// perturbation shrinks to the distance to the face (at least 0.1 c_k);
// iterates and perturbed points are projected onto the box.
SpsaResult SpsaOptimize(const SpsaObjective& objective, std::vector<double> theta0,
                        const std::vector<double>& lower, const std::vector<double>& upper,
                        const SpsaParams& params);

}  // namespace secrl

#endif  // SECRL_LEARNING_SPSA_H_
