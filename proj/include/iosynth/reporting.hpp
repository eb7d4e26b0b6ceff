// Copyright 2026 The iosynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IOSYNTH_REPORTING_HPP
#define IOSYNTH_REPORTING_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "iosynth/session.hpp"

namespace iosynth {

Value metrics_to_value(const RunMetrics& m);
RunMetrics metrics_from_value(const Value& v);

struct AggregateRow {
  std::string agent;
  Variant variant = Variant::Annotated;
  std::size_t sessions = 0;
  std::size_t successes = 0;
  std::size_t aborted = 0;
  double success_rate = 0;  // percent
  double mean_io = 0;
  double mean_oracle = 0;
  double pass1_rate = 0;
  double pass2_rate = 0;
  double delta = 0;  // pass1_rate - pass2_rate
};

struct AggregateReport {
  std::vector<AggregateRow> rows;  // sorted by (agent, variant)
};

/// Means include failed sessions. Strict mode drops aborted sessions from
/// every denominator.
AggregateReport aggregate(const std::vector<RunMetrics>& metrics, bool strict = false);

std::string render_summary(const AggregateReport& report);

struct TraceTurn {
  std::size_t index = 0;
  Role role = Role::Harness;
  std::optional<std::string> teacher_prefix;
  std::string body;
};

struct TraceRecord {
  std::string session_id;
  std::vector<TraceTurn> turns;
  SessionStatus outcome = SessionStatus::Active;
};

/// Teacher prefixes are kept only for harness turns that carry one.
TraceRecord trace_from_session(const std::string& session_id, const SessionState& s);

Value trace_to_value(const TraceRecord& r);
TraceRecord trace_from_value(const Value& v);

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ReportError if any turn contains one of the given secret values.
void check_no_secrets(const TraceRecord& r, const std::vector<std::string>& secrets);

void export_traces(const std::vector<TraceRecord>& records, const std::filesystem::path& path);
std::vector<TraceRecord> import_traces(const std::filesystem::path& path);

/// Append-only line writer shared by concurrent sessions.
class LineSink {
 public:
  explicit LineSink(const std::filesystem::path& path);
  void write(const std::string& line);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace iosynth

#endif  // IOSYNTH_REPORTING_HPP
