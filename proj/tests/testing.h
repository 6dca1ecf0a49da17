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

// Small model factories and independent oracles shared by the test binaries.

#ifndef SECRL_TESTS_TESTING_H_
#define SECRL_TESTS_TESTING_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "secrl/core/kernel.h"

namespace secrl::testing {

// One-shot zero-sum matrix game: a decision state followed by an absorbing
// terminal state, so state values equal the matrix game payoff.
inline ModelKernel MatrixGame(const std::vector<std::vector<double>>& payoff) {
  const int nd = static_cast<int>(payoff.size());
  const int na = static_cast<int>(payoff[0].size());
  std::vector<std::string> dn, an;
  for (int i = 0; i < nd; ++i) dn.push_back("d" + std::to_string(i));
  for (int j = 0; j < na; ++j) an.push_back("a" + std::to_string(j));
  KernelBuilder b({"play", "end"}, dn, an);
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < na; ++j) {
      b.SetTransition(0, i, j, {{1, 1.0}});
      b.SetTransition(1, i, j, {{1, 1.0}});
      b.SetReward(0, i, j, payoff[i][j]);
    }
  }
  b.MarkTerminal(1);
  b.SetInitialBelief({1.0, 0.0});
  return b.Build();
}

inline ModelKernel MatchingPennies() { return MatrixGame({{1.0, -1.0}, {-1.0, 1.0}}); }

// Random dense single-agent MDP with rewards in [-1, 1].
inline ModelKernel RandomMdp(std::mt19937_64& rng, int ns, int na, double gamma) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> sn, dn;
  for (int s = 0; s < ns; ++s) sn.push_back("s" + std::to_string(s));
  for (int d = 0; d < na; ++d) dn.push_back("d" + std::to_string(d));
  KernelBuilder b(sn, dn);
  for (int s = 0; s < ns; ++s) {
    for (int d = 0; d < na; ++d) {
      std::vector<Successor> row;
      double total = 0.0;
      for (int n = 0; n < ns; ++n) {
        double w = u(rng);
        row.push_back({n, w});
        total += w;
      }
      for (auto& e : row) e.prob /= total;
      b.SetTransition(s, d, 0, row);
      b.SetReward(s, d, 0, 2.0 * u(rng) - 1.0);
    }
  }
  std::vector<double> b1(ns, 1.0 / ns);
  b.SetInitialBelief(b1);
  b.SetDiscount(gamma);
  return b.Build();
}

// Random sparse zero-sum game: `fanout` distinct successors per row, all
// attacker actions feasible, uniform b1.
inline ModelKernel RandomSparseGame(std::mt19937_64& rng, int ns, int nd, int na, int fanout,
                                    double gamma) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, ns - 1);
  std::vector<std::string> sn, dn, an;
  for (int s = 0; s < ns; ++s) sn.push_back("s" + std::to_string(s));
  for (int d = 0; d < nd; ++d) dn.push_back("d" + std::to_string(d));
  for (int a = 0; a < na; ++a) an.push_back("a" + std::to_string(a));
  KernelBuilder b(sn, dn, an);
  for (int s = 0; s < ns; ++s) {
    for (int d = 0; d < nd; ++d) {
      for (int a = 0; a < na; ++a) {
        std::vector<int> next;
        while (static_cast<int>(next.size()) < std::min(fanout, ns)) {
          const int n = pick(rng);
          if (std::find(next.begin(), next.end(), n) == next.end()) next.push_back(n);
        }
        std::sort(next.begin(), next.end());
        std::vector<Successor> row;
        double total = 0.0;
        for (int n : next) {
          const double w = u(rng) + 1e-3;
          row.push_back({n, w});
          total += w;
        }
        for (auto& e : row) e.prob /= total;
        b.SetTransition(s, d, a, row);
        b.SetReward(s, d, a, 2.0 * u(rng) - 1.0);
      }
    }
  }
  b.SetInitialBelief(std::vector<double>(ns, 1.0 / ns));
  b.SetDiscount(gamma);
  return b.Build();
}

// Gaussian elimination with partial pivoting; an oracle independent of the
// library's Eigen-based solver.
inline std::vector<double> SolveLinear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return x;
}

// J = (I - gamma P_pi)^-1 r_pi for a deterministic single-agent policy.
inline std::vector<double> OracleValue(const ModelKernel& k, const std::vector<int>& policy) {
  const int ns = k.num_states();
  std::vector<std::vector<double>> a(ns, std::vector<double>(ns, 0.0));
  std::vector<double> r(ns);
  for (int s = 0; s < ns; ++s) {
    a[s][s] += 1.0;
    for (const Successor& e : k.Transitions(s, policy[s], 0)) {
      a[s][e.next] -= k.discount() * e.prob;
    }
    r[s] = k.Reward(s, policy[s], 0);
  }
  return SolveLinear(a, r);
}


struct MatrixSolution {
  std::vector<double> row;  // maximizer (defender)
  std::vector<double> col;  // minimizer (attacker)
  double value = 0.0;
  bool found = false;
};

// Nash equilibrium of a zero-sum matrix game by support enumeration over
// equal-size supports (sufficient for nondegenerate games).
inline MatrixSolution SolveMatrixGame(const std::vector<std::vector<double>>& a) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a[0].size());
  MatrixSolution best;
  for (int rows = 1; rows < (1 << m); ++rows) {
    for (int cols = 1; cols < (1 << n); ++cols) {
      std::vector<int> I, J;
      for (int i = 0; i < m; ++i) if (rows >> i & 1) I.push_back(i);
      for (int j = 0; j < n; ++j) if (cols >> j & 1) J.push_back(j);
      if (I.size() != J.size()) continue;
      const int k = static_cast<int>(I.size());
      // Unknowns (x_I, v): sum_i x_i a_ij = v for j in J, sum x = 1.
      std::vector<std::vector<double>> mx(k + 1, std::vector<double>(k + 1, 0.0));
      std::vector<double> bx(k + 1, 0.0);
      std::vector<std::vector<double>> my(k + 1, std::vector<double>(k + 1, 0.0));
      std::vector<double> by(k + 1, 0.0);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
          mx[r][c] = a[I[c]][J[r]];
          my[r][c] = a[I[r]][J[c]];
        }
        mx[r][k] = -1.0;
        my[r][k] = -1.0;
      }
      for (int c = 0; c < k; ++c) mx[k][c] = my[k][c] = 1.0;
      bx[k] = by[k] = 1.0;
      const std::vector<double> x = SolveLinear(mx, bx);
      const std::vector<double> y = SolveLinear(my, by);
      bool ok = std::isfinite(x[k]) && std::isfinite(y[k]) && std::abs(x[k] - y[k]) < 1e-9;
      MatrixSolution sol;
      sol.row.assign(m, 0.0);
      sol.col.assign(n, 0.0);
      for (int c = 0; c < k && ok; ++c) {
        ok = x[c] >= -1e-12 && y[c] >= -1e-12;
        sol.row[I[c]] = std::max(0.0, x[c]);
        sol.col[J[c]] = std::max(0.0, y[c]);
      }
      if (!ok) continue;
      sol.value = x[k];
      for (int j = 0; j < n && ok; ++j) {
        double pay = 0.0;
        for (int i = 0; i < m; ++i) pay += sol.row[i] * a[i][j];
        ok = pay >= sol.value - 1e-9;
      }
      for (int i = 0; i < m && ok; ++i) {
        double pay = 0.0;
        for (int j = 0; j < n; ++j) pay += a[i][j] * sol.col[j];
        ok = pay <= sol.value + 1e-9;
      }
      if (ok) {
        sol.found = true;
        return sol;
      }
    }
  }
  return best;
}

}  // namespace secrl::testing

#endif  // SECRL_TESTS_TESTING_H_
