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

#ifndef SECRL_CORE_DYNAMIC_PROGRAMMING_H_
#define SECRL_CORE_DYNAMIC_PROGRAMMING_H_

#include <functional>
#include <span>
#include <vector>

#include "secrl/core/bellman.h"
#include "secrl/core/kernel.h"
#include "secrl/core/strategy.h"

namespace secrl {

inline constexpr double kValueTolerance = 1e-8;

enum class EvaluationMethod { kAuto, kIterative, kDirect };

struct EvaluationOptions {
  double tolerance = kValueTolerance;
  int max_iterations = 200000;
  EvaluationMethod method = EvaluationMethod::kAuto;
  // Iterative method only: sup-norm change of every sweep.
  std::vector<double>* residuals = nullptr;
  bool use_reference_kernels = false;
};

// Value of the fixed strategy pair at every state. Iterative evaluation stops
// once the value error is below `tolerance`; the direct method solves
// (I - gamma P) J = r.
std::vector<double> EvaluatePolicy(const ModelKernel& kernel, const Strategy& defender,
                                   const Strategy& attacker,
                                   const EvaluationOptions& options = {});

std::vector<double> EvaluateChain(const InducedChain& chain, double gamma,
                                  const EvaluationOptions& options = {});

// Expected value under the kernel's initial belief.
double InitialValue(const ModelKernel& kernel, std::span<const double> values);

struct BestResponseResult {
  TabularStrategy strategy;
  std::vector<double> values;  // defender-centric
  int iterations = 0;
};

// Exact best response on the underlying state model. The opponent must be
// state-based. Values are always defender-centric; the attacker minimizes.
BestResponseResult BestResponse(const ModelKernel& kernel, const Strategy& opponent,
                                Player responder, double tolerance = kValueTolerance,
                                int max_iterations = 200000);

struct Exploitability {
  double value = 0.0;              // of the strategy pair, from b1
  double defender_br_value = 0.0;  // best the defender can do against the attacker
  double attacker_br_value = 0.0;  // worst the attacker can force on the defender
  double defender_gain = 0.0;
  double attacker_gain = 0.0;
  double total() const { return defender_gain + attacker_gain; }
};

// Optional replacement for the exact best response of one player. Returns the
// responder's best value from b1 (defender-centric) against `opponent`.
using BestResponseOracle =
    std::function<double(const ModelKernel& kernel, const Strategy& opponent)>;

struct ExploitabilityOptions {
  BestResponseOracle defender_oracle;
  BestResponseOracle attacker_oracle;
  double tolerance = kValueTolerance;
};

Exploitability ComputeExploitability(const ModelKernel& kernel, const Strategy& defender,
                                     const Strategy& attacker,
                                     const ExploitabilityOptions& options = {});

}  // namespace secrl

#endif  // SECRL_CORE_DYNAMIC_PROGRAMMING_H_
