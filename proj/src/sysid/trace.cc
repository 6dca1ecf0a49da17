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

#include "secrl/sysid/trace.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "secrl/core/error.h"

namespace secrl::sysid {
namespace {

constexpr std::string_view kCsvHeader = "t,severe,warning,logins,label";

std::string At(int line) { return "line " + std::to_string(line) + ": "; }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

void CheckRecord(const TraceRecord& r, int line) {
  if (r.severe < 0 || r.warning < 0 || r.logins < 0) {
    Fail(ErrorCode::kNegativeCount, At(line) + "counts must be nonnegative");
  }
  if (r.label != 0 && r.label != 1) Fail(ErrorCode::kFileFormat, At(line) + "label must be 0 or 1");
}

int64_t JsonInt(const nlohmann::json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(ErrorCode::kFileFormat, At(line) + "missing field '" + key + "'");
  if (!it->is_number_integer()) {
    Fail(ErrorCode::kFileFormat, At(line) + "field '" + key + "' must be an integer");
  }
  return it->get<int64_t>();
}

int64_t CsvInt(std::string_view field, int line) {
  field = Trim(field);
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    Fail(ErrorCode::kFileFormat, At(line) + "'" + std::string(field) + "' is not an integer");
  }
  return v;
}

}  // namespace

Trace ParseTraces(std::string_view text, TraceFormat format) {
  Trace trace;
  int line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    TraceRecord r;
    if (format == TraceFormat::kJsonLines) {
      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        Fail(ErrorCode::kFileFormat, At(line_no) + e.what());
      }
      if (!obj.is_object()) Fail(ErrorCode::kFileFormat, At(line_no) + "expected an object");
      r.interval = JsonInt(obj, "t", line_no);
      r.severe = JsonInt(obj, "severe", line_no);
      r.warning = JsonInt(obj, "warning", line_no);
      r.logins = JsonInt(obj, "logins", line_no);
      r.label = static_cast<int>(JsonInt(obj, "label", line_no));
    } else {
      if (!header_seen) {
        if (line != kCsvHeader) {
          Fail(ErrorCode::kFileFormat,
               At(line_no) + "expected header '" + std::string(kCsvHeader) + "'");
        }
        header_seen = true;
        continue;
      }
      std::vector<std::string_view> fields;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (fields.size() != 5) Fail(ErrorCode::kFileFormat, At(line_no) + "expected 5 fields");
      r.interval = CsvInt(fields[0], line_no);
      r.severe = CsvInt(fields[1], line_no);
      r.warning = CsvInt(fields[2], line_no);
      r.logins = CsvInt(fields[3], line_no);
      r.label = static_cast<int>(CsvInt(fields[4], line_no));
    }
    CheckRecord(r, line_no);
    trace.records.push_back(r);
  }
  return trace;
}

Trace IngestTraces(const std::string& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kFileFormat, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTraces(buffer.str(), format);
}

TraceFormat FormatFromPath(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0
             ? TraceFormat::kCsv
             : TraceFormat::kJsonLines;
}

Channel ParseChannel(std::string_view name) {
  if (name == "severe") return Channel::kSevere;
  if (name == "warning") return Channel::kWarning;
  if (name == "logins") return Channel::kLogins;
  Fail(ErrorCode::kInvalidConfig, "unknown channel '" + std::string(name) + "'");
}

std::string_view ChannelName(Channel channel) {
  switch (channel) {
    case Channel::kSevere:
      return "severe";
    case Channel::kWarning:
      return "warning";
    case Channel::kLogins:
      return "logins";
  }
  return "?";
}

int64_t ChannelValue(const TraceRecord& record, Channel channel) {
  switch (channel) {
    case Channel::kSevere:
      return record.severe;
    case Channel::kWarning:
      return record.warning;
    case Channel::kLogins:
      return record.logins;
  }
  return 0;
}

std::vector<int64_t> ChannelSamples(const Trace& trace, Channel channel, int label) {
  std::vector<int64_t> out;
  for (const TraceRecord& r : trace.records) {
    if (r.label == label) out.push_back(ChannelValue(r, channel));
  }
  return out;
}

}  // namespace secrl::sysid
