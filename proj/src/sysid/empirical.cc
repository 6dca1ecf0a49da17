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

#include "secrl/sysid/empirical.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "secrl/core/error.h"

namespace secrl::sysid {

double Categorical::Prob(int64_t value) const {
  auto it = std::lower_bound(support.begin(), support.end(), value);
  if (it == support.end() || *it != value) return 0.0;
  return probs[it - support.begin()];
}

Categorical FitEmpirical(const std::vector<int64_t>& samples) {
  if (samples.empty()) Fail(ErrorCode::kEmptyStratum, "no samples to fit");
  std::map<int64_t, int64_t> counts;
  for (int64_t v : samples) ++counts[v];
  Categorical c;
  const double m = static_cast<double>(samples.size());
  for (const auto& [v, n] : counts) {
    c.support.push_back(v);
    c.probs.push_back(static_cast<double>(n) / m);
  }
  return c;
}

Categorical FitEmpirical(const Trace& trace, Channel channel, int label) {
  std::vector<int64_t> samples = ChannelSamples(trace, channel, label);
  if (samples.empty()) {
    Fail(ErrorCode::kEmptyStratum, "no records with label " + std::to_string(label));
  }
  return FitEmpirical(samples);
}

double TotalVariation(const Categorical& p, const Categorical& q) {
  std::size_t i = 0, j = 0;
  double acc = 0.0;
  while (i < p.support.size() || j < q.support.size()) {
    if (j == q.support.size() || (i < p.support.size() && p.support[i] < q.support[j])) {
      acc += p.probs[i++];
    } else if (i == p.support.size() || q.support[j] < p.support[i]) {
      acc += q.probs[j++];
    } else {
      acc += std::abs(p.probs[i++] - q.probs[j++]);
    }
  }
  return 0.5 * acc;
}

nlohmann::json ToJson(const Categorical& c) {
  return {{"support", c.support}, {"probs", c.probs}};
}

}  // namespace secrl::sysid
