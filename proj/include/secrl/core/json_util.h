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

#ifndef SECRL_CORE_JSON_UTIL_H_
#define SECRL_CORE_JSON_UTIL_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "secrl/core/error.h"

namespace secrl {

// Reads an optional field, failing with InvalidConfig naming `key` when the
// value has the wrong type.
template <typename T>
T JsonGetOr(const nlohmann::json& obj, const char* key, T fallback) {
  if (obj.is_null()) return fallback;
  if (!obj.is_object()) Fail(ErrorCode::kInvalidConfig, "parameters must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kInvalidConfig, std::string(key) + ": wrong type");
  }
}

template <typename T>
T JsonRequire(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    Fail(ErrorCode::kInvalidConfig, std::string(key) + ": missing field");
  }
  return JsonGetOr<T>(obj, key, T{});
}

// Rejects keys not in `known`, naming the first offender.
inline void JsonCheckKeys(const nlohmann::json& obj, const std::vector<std::string>& known) {
  if (!obj.is_object()) return;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok = ok || k == it.key();
    if (!ok) Fail(ErrorCode::kInvalidConfig, it.key() + ": unknown field");
  }
}

}  // namespace secrl

#endif  // SECRL_CORE_JSON_UTIL_H_
