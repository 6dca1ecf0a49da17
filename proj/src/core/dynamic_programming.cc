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

#include "secrl/core/dynamic_programming.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "secrl/core/error.h"

namespace secrl {
namespace {

constexpr int kDenseSolveLimit = 400;
constexpr int kDirectSolveLimit = 200000;

void CheckDiscount(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    Fail(ErrorCode::kInvalidDiscount, "discount must lie in [0, 1), got " + std::to_string(gamma));
  }
}

std::vector<double> SolveDirect(const InducedChain& chain, double gamma) {
  const int n = chain.num_states();
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(chain.reward.data(), n);
  Eigen::VectorXd x;
  if (n <= kDenseSolveLimit) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (int s = 0; s < n; ++s) {
      for (std::size_t k = chain.offsets[s]; k < chain.offsets[s + 1]; ++k) {
        a(s, chain.next[k]) -= gamma * chain.prob[k];
      }
    }
    x = a.partialPivLu().solve(r);
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(chain.next.size() + n);
    for (int s = 0; s < n; ++s) {
      triplets.emplace_back(s, s, 1.0);
      for (std::size_t k = chain.offsets[s]; k < chain.offsets[s + 1]; ++k) {
        triplets.emplace_back(s, chain.next[k], -gamma * chain.prob[k]);
      }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
      Fail(ErrorCode::kNonConvergence, "sparse factorization failed");
    }
    x = lu.solve(r);
  }
  return std::vector<double>(x.data(), x.data() + n);
}

std::vector<double> SolveIterative(const InducedChain& chain, double gamma,
                                   const EvaluationOptions& options) {
  const int n = chain.num_states();
  std::vector<double> a(n, 0.0), b(n, 0.0);
  // A sweep change of delta bounds the value error by delta * gamma / (1 - gamma).
  const double stop = gamma > 0.0 ? options.tolerance * (1.0 - gamma) / gamma : 1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double delta = options.use_reference_kernels
                             ? reference::EvaluationSweep(chain, gamma, a, b)
                             : kernels::EvaluationSweep(chain, gamma, a, b);
    if (options.residuals) options.residuals->push_back(delta);
    a.swap(b);
    if (delta <= stop) return a;
  }
  Fail(ErrorCode::kNonConvergence,
       "policy evaluation did not converge in " + std::to_string(options.max_iterations) +
           " sweeps");
}

}  // namespace

std::vector<double> EvaluateChain(const InducedChain& chain, double gamma,
                                  const EvaluationOptions& options) {
  CheckDiscount(gamma);
  EvaluationMethod method = options.method;
  if (method == EvaluationMethod::kAuto) {
    method = chain.num_states() <= kDirectSolveLimit ? EvaluationMethod::kDirect
                                                     : EvaluationMethod::kIterative;
  }
  return method == EvaluationMethod::kDirect ? SolveDirect(chain, gamma)
                                             : SolveIterative(chain, gamma, options);
}

std::vector<double> EvaluatePolicy(const ModelKernel& kernel, const Strategy& defender,
                                   const Strategy& attacker, const EvaluationOptions& options) {
  const int ns = kernel.num_states();
  if (defender.num_actions() != kernel.num_defender_actions() ||
      attacker.num_actions() != kernel.num_attacker_actions()) {
    Fail(ErrorCode::kShapeMismatch, "strategy action counts do not match the kernel");
  }
  const std::vector<double> dt = StateActionTable(defender, ns);
  const std::vector<double> at = StateActionTable(attacker, ns);
  return EvaluateChain(BuildInducedChain(kernel, dt, at), kernel.discount(), options);
}

double InitialValue(const ModelKernel& kernel, std::span<const double> values) {
  const auto& b1 = kernel.initial_belief();
  double v = 0.0;
  for (std::size_t s = 0; s < b1.size(); ++s) v += b1[s] * values[s];
  return v;
}

BestResponseResult BestResponse(const ModelKernel& kernel, const Strategy& opponent,
                                Player responder, double tolerance, int max_iterations) {
  CheckDiscount(kernel.discount());
  const int ns = kernel.num_states();
  const int nd = kernel.num_defender_actions();
  const int na = kernel.num_attacker_actions();
  const int nb = responder == Player::kDefender ? nd : na;
  const int nopp = responder == Player::kDefender ? na : nd;
  if (opponent.num_actions() != nopp) {
    Fail(ErrorCode::kShapeMismatch, "opponent strategy has the wrong action count");
  }
  const std::vector<double> opp = StateActionTable(opponent, ns);
  const double gamma = kernel.discount();

  // Value iteration to a coarse fixed point, then policy iteration to the
  // exact optimum of the induced MDP.
  std::vector<double> v(ns, 0.0), w(ns, 0.0);
  std::vector<int> greedy(ns, 0);
  const double coarse = std::max(tolerance, 1e-6) * (1.0 - gamma);
  int iterations = 0;
  for (; iterations < max_iterations; ++iterations) {
    const double delta = kernels::OptimalitySweep(kernel, responder, opp, v, w, greedy);
    v.swap(w);
    if (delta <= coarse) break;
  }
  if (iterations == max_iterations) {
    Fail(ErrorCode::kNonConvergence, "best response value iteration did not converge");
  }

  std::vector<double> table(static_cast<std::size_t>(ns) * nb, 0.0);
  auto fill_table = [&] {
    std::fill(table.begin(), table.end(), 0.0);
    for (int s = 0; s < ns; ++s) table[static_cast<std::size_t>(s) * nb + greedy[s]] = 1.0;
  };
  auto evaluate = [&] {
    fill_table();
    InducedChain chain = responder == Player::kDefender ? BuildInducedChain(kernel, table, opp)
                                                        : BuildInducedChain(kernel, opp, table);
    EvaluationOptions eo;
    eo.tolerance = tolerance;
    return EvaluateChain(chain, gamma, eo);
  };
  const double sign = responder == Player::kDefender ? 1.0 : -1.0;
  for (int round = 0; round < 1000; ++round) {
    v = evaluate();
    bool changed = false;
    for (int s = 0; s < ns; ++s) {
      const double current = sign * ResponderQ(kernel, responder, opp, v, s, greedy[s]);
      for (int b = 0; b < nb; ++b) {
        if (b == greedy[s]) continue;
        if (responder == Player::kAttacker && !kernel.AttackerFeasible(s, b)) continue;
        const double q = sign * ResponderQ(kernel, responder, opp, v, s, b);
        if (q > current + 1e-10 * (1.0 + std::abs(current))) {
          greedy[s] = b;
          changed = true;
          break;
        }
      }
    }
    ++iterations;
    if (!changed) break;
  }
  // Canonical greedy policy: lowest index among actions tied with the best.
  for (int s = 0; s < ns; ++s) {
    double best = sign * ResponderQ(kernel, responder, opp, v, s, greedy[s]);
    for (int b = 0; b < greedy[s]; ++b) {
      if (responder == Player::kAttacker && !kernel.AttackerFeasible(s, b)) continue;
      const double q = sign * ResponderQ(kernel, responder, opp, v, s, b);
      if (q >= best - 1e-10 * (1.0 + std::abs(best))) {
        greedy[s] = b;
        break;
      }
    }
  }
  fill_table();
  return {TabularStrategy(ns, nb, table), std::move(v), iterations};
}

Exploitability ComputeExploitability(const ModelKernel& kernel, const Strategy& defender,
                                     const Strategy& attacker,
                                     const ExploitabilityOptions& options) {
  Exploitability e;
  EvaluationOptions eo;
  eo.tolerance = options.tolerance;
  e.value = InitialValue(kernel, EvaluatePolicy(kernel, defender, attacker, eo));
  if (options.defender_oracle) {
    e.defender_br_value = options.defender_oracle(kernel, attacker);
  } else {
    BestResponseResult br = BestResponse(kernel, attacker, Player::kDefender, options.tolerance);
    e.defender_br_value = InitialValue(kernel, br.values);
  }
  if (options.attacker_oracle) {
    e.attacker_br_value = options.attacker_oracle(kernel, defender);
  } else {
    BestResponseResult br = BestResponse(kernel, defender, Player::kAttacker, options.tolerance);
    e.attacker_br_value = InitialValue(kernel, br.values);
  }
  e.defender_gain = e.defender_br_value - e.value;
  e.attacker_gain = e.value - e.attacker_br_value;
  return e;
}

}  // namespace secrl
