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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>

#include "secrl/core/bellman.h"
#include "secrl/core/simulate.h"
#include "secrl/core/strategy.h"
#include "testing.h"

namespace secrl {
namespace {

struct Fixture {
  ModelKernel kernel;
  TabularStrategy defender, attacker;
  InducedChain chain;
  std::vector<double> in, out;
  std::vector<int> greedy;

  explicit Fixture(int ns)
      : kernel([ns] {
          std::mt19937_64 rng(7);
          return testing::RandomSparseGame(rng, ns, 4, 3, 8, 0.99);
        }()),
        defender(TabularStrategy::Uniform(ns, 4)),
        attacker(TabularStrategy::Uniform(ns, 3)),
        chain(BuildInducedChain(kernel, defender.table(), attacker.table())),
        in(ns, 1.0),
        out(ns),
        greedy(ns) {}
};

Fixture& Get(int ns) {
  static std::map<int, std::unique_ptr<Fixture>> cache;
  auto& f = cache[ns];
  if (!f) f = std::make_unique<Fixture>(ns);
  return *f;
}

template <bool kParallel>
void BM_EvaluationSweep(benchmark::State& state) {
  Fixture& f = Get(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const double d = kParallel ? kernels::EvaluationSweep(f.chain, 0.99, f.in, f.out)
                               : reference::EvaluationSweep(f.chain, 0.99, f.in, f.out);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_OptimalitySweep(benchmark::State& state) {
  Fixture& f = Get(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const double d =
        kParallel ? kernels::OptimalitySweep(f.kernel, Player::kDefender, f.attacker.table(), f.in,
                                             f.out, f.greedy)
                  : reference::OptimalitySweep(f.kernel, Player::kDefender, f.attacker.table(),
                                               f.in, f.out, f.greedy);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_MonteCarlo(benchmark::State& state) {
  Fixture& f = Get(2000);
  EpisodeOptions opts;
  opts.max_steps = 100;
  const int episodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const MonteCarloStats s =
        kParallel ? EvaluateMonteCarlo(f.kernel, f.defender, f.attacker, episodes, 1, opts)
                  : reference::EvaluateMonteCarlo(f.kernel, f.defender, f.attacker, episodes, 1,
                                                  opts);
    benchmark::DoNotOptimize(s.mean);
  }
  state.SetItemsProcessed(state.iterations() * episodes);
}

BENCHMARK(BM_EvaluationSweep<false>)->Name("EvaluationSweep/serial")->Arg(2000)->Arg(20000);
BENCHMARK(BM_EvaluationSweep<true>)->Name("EvaluationSweep/openmp")->Arg(2000)->Arg(20000);
BENCHMARK(BM_OptimalitySweep<false>)->Name("OptimalitySweep/serial")->Arg(2000)->Arg(20000);
BENCHMARK(BM_OptimalitySweep<true>)->Name("OptimalitySweep/openmp")->Arg(2000)->Arg(20000);
BENCHMARK(BM_MonteCarlo<false>)->Name("MonteCarlo/serial")->Arg(1000);
BENCHMARK(BM_MonteCarlo<true>)->Name("MonteCarlo/openmp")->Arg(1000);

}  // namespace
}  // namespace secrl

BENCHMARK_MAIN();
