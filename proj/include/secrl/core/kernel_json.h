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

#ifndef SECRL_CORE_KERNEL_JSON_H_
#define SECRL_CORE_KERNEL_JSON_H_

#include <string>

#include "json.hpp"
#include "secrl/core/kernel.h"

namespace secrl {

// Canonical document: ordered name arrays plus dense nested probability
// arrays transition[s][d][a][s'], reward[s][d][a], observation[s][o].
// Kernels whose dense transition tensor would exceed `dense_limit` entries
// are written with "transition_sparse" rows [s, d, a, [[s', p], ...]].
nlohmann::json KernelToJson(const ModelKernel& kernel, std::size_t dense_limit = 1000000);

// Throws FileFormat on structural problems. Does not validate stochasticity;
// call ValidateKernel for that.
ModelKernel KernelFromJson(const nlohmann::json& doc);

ModelKernel LoadKernel(const std::string& path);
void SaveKernel(const ModelKernel& kernel, const std::string& path);

}  // namespace secrl

#endif  // SECRL_CORE_KERNEL_JSON_H_
