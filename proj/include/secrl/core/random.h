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

#ifndef SECRL_CORE_RANDOM_H_
#define SECRL_CORE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace secrl {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent seed streams from a base
// seed plus structured indices (grid cell, replicate, episode).
inline uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> path) {
  uint64_t s = MixSeed(base);
  for (uint64_t p : path) s = MixSeed(s ^ MixSeed(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Samples an index from an (unnormalized-tolerant) probability vector. Falls
// back to the last positive entry when rounding leaves residual mass.
inline int SampleIndex(std::span<const double> probs, Rng& rng) {
  double u = Uniform01(rng);
  double acc = 0.0;
  int last_positive = -1;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace secrl

#endif  // SECRL_CORE_RANDOM_H_
