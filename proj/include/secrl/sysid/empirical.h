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

#ifndef SECRL_SYSID_EMPIRICAL_H_
#define SECRL_SYSID_EMPIRICAL_H_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "secrl/sysid/trace.h"

namespace secrl::sysid {

// Categorical distribution over an increasing list of integer values.
struct Categorical {
  std::vector<int64_t> support;
  std::vector<double> probs;

  double Prob(int64_t value) const;
};

// Relative frequencies of the channel values among records with `label`.
// Throws EmptyStratum when no record carries the label.
Categorical FitEmpirical(const Trace& trace, Channel channel, int label);
Categorical FitEmpirical(const std::vector<int64_t>& samples);

// Total variation distance, 0.5 * sum |p - q| over the union of supports.
double TotalVariation(const Categorical& p, const Categorical& q);

nlohmann::json ToJson(const Categorical& c);

}  // namespace secrl::sysid

#endif  // SECRL_SYSID_EMPIRICAL_H_
