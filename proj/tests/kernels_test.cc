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

// The OpenMP kernels must agree exactly with their serial references.

#include <gtest/gtest.h>
#include <omp.h>

#include <random>

#include "secrl/core/bellman.h"
#include "secrl/core/dynamic_programming.h"
#include "secrl/core/simulate.h"
#include "secrl/core/strategy.h"
#include "testing.h"

namespace secrl {
namespace {

class KernelsTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_P(KernelsTest, EvaluationSweepMatchesReference) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const ModelKernel k = testing::RandomSparseGame(rng, 300, 3, 2, 6, 0.95);
    const auto d = TabularStrategy::Uniform(k.num_states(), 3);
    const auto a = TabularStrategy::Uniform(k.num_states(), 2);
    const InducedChain chain = BuildInducedChain(k, d.table(), a.table());
    std::vector<double> in(k.num_states());
    for (auto& v : in) v = std::uniform_real_distribution<double>(-5, 5)(rng);
    std::vector<double> out1(in.size()), out2(in.size());
    const double d1 = kernels::EvaluationSweep(chain, 0.95, in, out1);
    const double d2 = reference::EvaluationSweep(chain, 0.95, in, out2);
    EXPECT_EQ(out1, out2);
    EXPECT_EQ(d1, d2);
  }
}

TEST_P(KernelsTest, OptimalitySweepMatchesReference) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const ModelKernel k = testing::RandomSparseGame(rng, 200, 4, 3, 5, 0.9);
    const auto a = TabularStrategy::Uniform(k.num_states(), 3);
    const auto d = TabularStrategy::Uniform(k.num_states(), 4);
    std::vector<double> in(k.num_states());
    for (auto& v : in) v = std::uniform_real_distribution<double>(-5, 5)(rng);
    for (Player p : {Player::kDefender, Player::kAttacker}) {
      const auto& opp = p == Player::kDefender ? a.table() : d.table();
      std::vector<double> o1(in.size()), o2(in.size());
      std::vector<int> g1(in.size()), g2(in.size());
      const double d1 = kernels::OptimalitySweep(k, p, opp, in, o1, g1);
      const double d2 = reference::OptimalitySweep(k, p, opp, in, o2, g2);
      EXPECT_EQ(o1, o2);
      EXPECT_EQ(g1, g2);
      EXPECT_EQ(d1, d2);
    }
  }
}

TEST_P(KernelsTest, PolicyEvaluationMatchesReference) {
  std::mt19937_64 rng(3);
  const ModelKernel k = testing::RandomSparseGame(rng, 250, 3, 2, 4, 0.97);
  const auto d = TabularStrategy::Uniform(k.num_states(), 3);
  const auto a = TabularStrategy::Uniform(k.num_states(), 2);
  EvaluationOptions fast, ref;
  fast.method = ref.method = EvaluationMethod::kIterative;
  ref.use_reference_kernels = true;
  EXPECT_EQ(EvaluatePolicy(k, d, a, fast), EvaluatePolicy(k, d, a, ref));
  const auto br1 = BestResponse(k, a, Player::kDefender);
  EXPECT_EQ(br1.strategy.table(), BestResponse(k, a, Player::kDefender).strategy.table());
}

TEST_P(KernelsTest, MonteCarloMatchesReference) {
  std::mt19937_64 rng(4);
  const ModelKernel k = testing::RandomSparseGame(rng, 50, 2, 2, 3, 0.9);
  const auto d = TabularStrategy::Uniform(k.num_states(), 2);
  const auto a = TabularStrategy::Uniform(k.num_states(), 2);
  EpisodeOptions opts;
  opts.max_steps = 60;
  const MonteCarloStats fast = EvaluateMonteCarlo(k, d, a, 3000, 17, opts);
  const MonteCarloStats ref = reference::EvaluateMonteCarlo(k, d, a, 3000, 17, opts);
  EXPECT_EQ(fast.returns, ref.returns);
  EXPECT_EQ(fast.mean, ref.mean);
  EXPECT_EQ(fast.mean_steps, ref.mean_steps);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelsTest, ::testing::Values(1, 2, 4));

}  // namespace
}  // namespace secrl
