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

#ifndef SECRL_SYSID_TRACE_H_
#define SECRL_SYSID_TRACE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace secrl::sysid {

// One monitoring interval: alert and login counters plus the state label.
struct TraceRecord {
  int64_t interval = 0;
  int64_t severe = 0;
  int64_t warning = 0;
  int64_t logins = 0;
  int label = 0;

  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  std::vector<TraceRecord> records;
};

enum class TraceFormat { kJsonLines, kCsv };

// JSON-lines: {"t":1,"severe":1,"warning":9,"logins":4,"label":1} per line.
// CSV: header "t,severe,warning,logins,label" then one record per line.
// Errors carry the 1-based line number.
Trace IngestTraces(const std::string& path, TraceFormat format);
Trace ParseTraces(std::string_view text, TraceFormat format);

// .csv selects CSV; everything else is JSON-lines.
TraceFormat FormatFromPath(const std::string& path);

enum class Channel { kSevere, kWarning, kLogins };

Channel ParseChannel(std::string_view name);
std::string_view ChannelName(Channel channel);
int64_t ChannelValue(const TraceRecord& record, Channel channel);

// Values of `channel` among records carrying `label`.
std::vector<int64_t> ChannelSamples(const Trace& trace, Channel channel, int label);

}  // namespace secrl::sysid

#endif  // SECRL_SYSID_TRACE_H_
