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

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "secrl/analysis/misspecification.h"
#include "secrl/core/error.h"
#include "secrl/core/strategy.h"
#include "secrl/usecases/flow.h"
#include "testing.h"

namespace secrl {
namespace {

// Copy of `k` with the transition rows of `perturb` applied.
ModelKernel RandomPerturbation(const ModelKernel& k, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> dn = k.defender_action_names();
  KernelBuilder b(k.state_names(), dn);
  for (int s = 0; s < k.num_states(); ++s) {
    for (int d = 0; d < k.num_defender_actions(); ++d) {
      std::vector<Successor> row;
      double total = 0.0;
      for (const Successor& e : k.Transitions(s, d, 0)) {
        const double p = std::max(0.0, e.prob + scale * (u(rng) - 0.5));
        row.push_back({e.next, p});
        total += p;
      }
      for (auto& e : row) e.prob /= total;
      b.SetTransition(s, d, 0, row);
      b.SetReward(s, d, 0, k.Reward(s, d, 0));
    }
  }
  b.SetInitialBelief(k.initial_belief());
  b.SetDiscount(k.discount());
  return b.Build();
}

TEST(Alpha, IdenticalKernelsGiveZero) {
  std::mt19937_64 rng(1);
  const ModelKernel k = testing::RandomMdp(rng, 5, 3, 0.9);
  EXPECT_EQ(TotalVariationAlpha(k, k), 0.0);
}

TEST(Alpha, MovedMassCountsTwice) {
  KernelBuilder a({"x", "y"}, {"d"}), b({"x", "y"}, {"d"});
  a.SetTransition(0, 0, 0, {{0, 0.5}, {1, 0.5}}).SetTransition(1, 0, 0, {{1, 1.0}});
  b.SetTransition(0, 0, 0, {{0, 0.375}, {1, 0.625}}).SetTransition(1, 0, 0, {{1, 1.0}});
  EXPECT_EQ(TotalVariationAlpha(a.Build(), b.Build()), 0.25);
}

TEST(Alpha, FlowPomdpIntrusionRate) {
  flow::PomdpConfig c1, c2;
  c2.p = 0.03;
  const ModelKernel k1 = flow::BuildPomdp(c1), k2 = flow::BuildPomdp(c2);
  EXPECT_NEAR(TotalVariationAlpha(k1, k2), 0.04, 1e-15);
  // Only rows leaving s = 0 with budget to spare differ.
  for (int l = 1; l <= c1.L; ++l) {
    for (int d = 0; d < 2; ++d) {
      const int s = flow::StateIndex(c1.L, 1, l);
      auto x = k1.Transitions(s, d, 0), y = k2.Transitions(s, d, 0);
      ASSERT_EQ(x.size(), y.size());
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].prob, y[i].prob);
    }
  }
}

TEST(Alpha, SymmetricAndShapeChecked) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const ModelKernel k = testing::RandomMdp(rng, 6, 2, 0.9);
    const ModelKernel kt = RandomPerturbation(k, rng, 0.3);
    EXPECT_EQ(TotalVariationAlpha(k, kt), TotalVariationAlpha(kt, k));
    EXPECT_LE(TotalVariationAlpha(k, kt), 2.0);
  }
  const ModelKernel a = testing::RandomMdp(rng, 3, 2, 0.9), b = testing::RandomMdp(rng, 4, 2, 0.9);
  try {
    TotalVariationAlpha(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(Bound, Arithmetic) {
  EXPECT_EQ(MisspecificationBound(0.0, 0.99, 10.0), 0.0);
  EXPECT_EQ(MisspecificationBound(0.02, 0.99, 10.0), 1980.0);
  EXPECT_EQ(MisspecificationBound(1.0, 0.5, 1.0), 2.0);
  try {
    MisspecificationBound(0.1, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDiscount);
  }
}

TEST(Bound, Monotone) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = 2 * u(rng), g = 0.999 * u(rng), b = 10 * u(rng);
    const double base = MisspecificationBound(a, g, b);
    EXPECT_GE(MisspecificationBound(a + u(rng), g, b), base);
    EXPECT_GE(MisspecificationBound(a, g + (0.999 - g) * u(rng), b), base);
    EXPECT_GE(MisspecificationBound(a, g, b + u(rng)), base);
  }
  // Decimal inputs on a grid, where the exact decimal path is taken.
  for (int ia = 0; ia < 20; ++ia) {
    for (int ig = 0; ig < 99; ++ig) {
      const double a = ia / 10.0, g = ig / 100.0;
      EXPECT_LE(MisspecificationBound(a, g, 3.0), MisspecificationBound(a + 0.1, g, 3.0));
      EXPECT_LE(MisspecificationBound(a, g, 3.0), MisspecificationBound(a, g + 0.01, 3.0));
    }
  }
}

TEST(BoundCheck, IdenticalModelsHaveNoGap) {
  std::mt19937_64 rng(4);
  const ModelKernel k = testing::RandomMdp(rng, 10, 4, 0.95);
  const TabularStrategy pi = TabularStrategy::Uniform(10, 4);
  const MisspecReport r = BoundCheck(k, k, pi, FixedStrategy::Pure(0, 1));
  EXPECT_LE(r.measured_gap, 1e-9);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.alpha, 0.0);
}

TEST(BoundCheck, HoldsOnRandomPairs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double gamma = 0.5 + 0.49 * u(rng);
    const ModelKernel k = testing::RandomMdp(rng, 10, 4, gamma);
    const ModelKernel kt = RandomPerturbation(k, rng, u(rng));
    std::vector<double> table(40);
    for (int s = 0; s < 10; ++s) {
      double t = 0.0;
      for (int a = 0; a < 4; ++a) t += (table[4 * s + a] = u(rng));
      for (int a = 0; a < 4; ++a) table[4 * s + a] /= t;
    }
    const MisspecReport r =
        BoundCheck(k, kt, TabularStrategy(10, 4, table), FixedStrategy::Pure(0, 1));
    EXPECT_TRUE(r.holds) << "pair " << i << " gap " << r.measured_gap << " bound " << r.bound;
  }
}

TEST(BoundCheck, AdversarialPairStillHolds) {
  // Move mass toward the most rewarding state in every row.
  std::mt19937_64 rng(6);
  const ModelKernel k = testing::RandomMdp(rng, 8, 2, 0.9);
  const std::vector<int> policy(8, 0);
  const std::vector<double> v = testing::OracleValue(k, policy);
  const int best = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  KernelBuilder b(k.state_names(), k.defender_action_names());
  for (int s = 0; s < 8; ++s) {
    for (int d = 0; d < 2; ++d) {
      std::vector<Successor> row;
      for (const Successor& e : k.Transitions(s, d, 0)) {
        row.push_back({e.next, 0.8 * e.prob + (e.next == best ? 0.2 : 0.0)});
      }
      b.SetTransition(s, d, 0, row);
      b.SetReward(s, d, 0, k.Reward(s, d, 0));
    }
  }
  b.SetDiscount(0.9);
  b.SetInitialBelief(k.initial_belief());
  const MisspecReport r =
      BoundCheck(k, b.Build(), TabularStrategy::Deterministic(policy, 2), FixedStrategy::Pure(0, 1));
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.measured_gap, 0.0);
}

TEST(BoundCheck, RefusesDifferentRewards) {
  std::mt19937_64 rng(7);
  const ModelKernel a = testing::RandomMdp(rng, 4, 2, 0.9);
  const ModelKernel b = testing::RandomMdp(rng, 4, 2, 0.9);
  try {
    BoundCheck(a, b, TabularStrategy::Uniform(4, 2), FixedStrategy::Pure(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRewardMismatch);
  }
}

TEST(Spearman, KnownValues) {
  EXPECT_DOUBLE_EQ(SpearmanRho({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(SpearmanRho({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  // Classic example: ranks (1,2,3,4,5) vs (2,1,4,3,5): 1 - 6*4/(5*24) = 0.8.
  EXPECT_NEAR(SpearmanRho({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}), 0.8, 1e-12);
}

TEST(Sweep, SameModelAgreesAndCsvShape) {
  // Fixed-threshold learner: sim and truth coincide at p_tilde = p.
  SweepSpec spec;
  spec.build = [](double p) {
    flow::PomdpConfig c;
    c.p = p;
    return flow::BuildPomdp(c);
  };
  spec.learn = [](const ModelKernel&, uint64_t) {
    return std::make_shared<const ThresholdStrategy>(flow::MakeThresholdStrategy(0.75, 3));
  };
  spec.true_param = 0.01;
  spec.grid = {0.01, 0.05};
  spec.eval_episodes = 400;
  spec.seeds = 3;
  const std::vector<SweepRow> rows = SensitivitySweep(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].misspecification, 0.0);
  EXPECT_NEAR(rows[1].misspecification, 0.04, 1e-15);
  // Overlapping 2-sigma intervals.
  EXPECT_LE(std::abs(rows[0].sim_mean - rows[0].truth_mean),
            2 * (rows[0].sim_std + rows[0].truth_std));
  EXPECT_GT(rows[0].sim_mean, rows[1].sim_mean);
  const std::string csv = SweepCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "misspecification,sim_mean,sim_std,truth_mean,truth_std");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(SweepCsv(SensitivitySweep(spec)), csv);
}

}  // namespace
}  // namespace secrl
