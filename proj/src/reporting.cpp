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

#include "iosynth/reporting.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "iosynth/record.hpp"

namespace iosynth {

Value metrics_to_value(const RunMetrics& m) {
  return RecordBuilder()
      .add("taskId", Value::str(m.task_id))
      .add("variant", Value::str(variant_name(m.variant)))
      .add("agent", Value::str(m.agent))
      .add("success", Value::boolean(m.success))
      .add("ioUsed", rec::i64(m.io_used))
      .add("oracleUsed", rec::i64(m.oracle_used))
      .add("wallMs", rec::i64(m.wall_ms))
      .add("seed", Value::integer(BigInt::parse(std::to_string(m.seed))))
      .add("pass1", Value::boolean(m.pass1))
      .add("pass2", Value::boolean(m.pass2))
      .add("status", Value::str(session_status_name(m.status)))
      .build();
}

RunMetrics metrics_from_value(const Value& v) {
  const RecordReader r(v, "run metrics");
  RunMetrics m;
  m.task_id = r.str("taskId");
  const auto variant = variant_from_name(r.str("variant"));
  if (!variant) throw RecordError("variant", "run metrics: bad variant");
  m.variant = *variant;
  m.agent = r.str("agent");
  m.success = r.boolean("success");
  m.io_used = r.i64("ioUsed");
  m.oracle_used = r.i64("oracleUsed");
  m.wall_ms = r.i64("wallMs");
  m.seed = std::stoull(r.kind("seed", Value::Kind::Int).as_int().to_string());
  m.pass1 = r.boolean("pass1");
  m.pass2 = r.boolean("pass2");
  const auto status = session_status_from_name(r.str_or("status", "active"));
  if (!status) throw RecordError("status", "run metrics: bad status");
  m.status = *status;
  return m;
}

AggregateReport aggregate(const std::vector<RunMetrics>& metrics, bool strict) {
  struct Acc {
    std::size_t n = 0, ok = 0, aborted = 0, p1 = 0, p2 = 0;
    double io = 0, oracle = 0;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const auto& m : metrics) {
    Acc& a = groups[{m.agent, static_cast<int>(m.variant)}];
    if (m.status == SessionStatus::Aborted) {
      ++a.aborted;
      if (strict) continue;
    }
    ++a.n;
    a.ok += m.success;
    a.p1 += m.pass1;
    a.p2 += m.pass2;
    a.io += static_cast<double>(m.io_used);
    a.oracle += static_cast<double>(m.oracle_used);
  }
  AggregateReport rep;
  for (const auto& [key, a] : groups) {
    AggregateRow row;
    row.agent = key.first;
    row.variant = static_cast<Variant>(key.second);
    row.sessions = a.n;
    row.successes = a.ok;
    row.aborted = a.aborted;
    if (a.n > 0) {
      const double n = static_cast<double>(a.n);
      row.success_rate = 100.0 * static_cast<double>(a.ok) / n;
      row.mean_io = a.io / n;
      row.mean_oracle = a.oracle / n;
      row.pass1_rate = 100.0 * static_cast<double>(a.p1) / n;
      row.pass2_rate = 100.0 * static_cast<double>(a.p2) / n;
      row.delta = row.pass1_rate - row.pass2_rate;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string render_summary(const AggregateReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %-11s %8s %9s %8s %8s %7s %7s %7s %8s\n", "agent", "variant", "sessions",
                "success%", "meanIO", "meanOrc", "pass1%", "pass2%", "delta", "aborted");
  out << buf;
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-28s %-11s %8zu %9.1f %8.2f %8.2f %7.1f %7.1f %7.1f %8zu\n", r.agent.c_str(),
                  variant_name(r.variant), r.sessions, r.success_rate, r.mean_io, r.mean_oracle, r.pass1_rate,
                  r.pass2_rate, r.delta, r.aborted);
    out << buf;
  }
  if (report.rows.empty()) out << "(no sessions)\n";
  return out.str();
}

TraceRecord trace_from_session(const std::string& session_id, const SessionState& s) {
  TraceRecord r;
  r.session_id = session_id;
  r.outcome = s.status;
  for (std::size_t i = 0; i < s.transcript.size(); ++i) {
    const TranscriptTurn& t = s.transcript[i];
    TraceTurn turn;
    turn.index = i;
    turn.role = t.role;
    if (t.role == Role::Harness && !t.teacher_prefix.empty()) turn.teacher_prefix = t.teacher_prefix;
    turn.body = t.text;
    r.turns.push_back(std::move(turn));
  }
  return r;
}

Value trace_to_value(const TraceRecord& r) {
  ValueList turns;
  for (const auto& t : r.turns) {
    RecordBuilder b;
    b.add("index", rec::i64(static_cast<std::int64_t>(t.index))).add("role", Value::str(role_name(t.role)));
    if (t.teacher_prefix) b.add("teacherPrefix", Value::str(*t.teacher_prefix));
    b.add("body", Value::str(t.body));
    turns.push_back(b.build());
  }
  return RecordBuilder()
      .add("sessionId", Value::str(r.session_id))
      .add("turns", Value::list(std::move(turns)))
      .add("outcome", Value::str(session_status_name(r.outcome)))
      .build();
}

TraceRecord trace_from_value(const Value& v) {
  const RecordReader r(v, "trace");
  TraceRecord out;
  out.session_id = r.str("sessionId");
  const auto outcome = session_status_from_name(r.str("outcome"));
  if (!outcome) throw RecordError("outcome", "trace: bad outcome");
  out.outcome = *outcome;
  for (const auto& tv : r.kind("turns", Value::Kind::List).items()) {
    const RecordReader t(tv, "trace turn");
    TraceTurn turn;
    turn.index = static_cast<std::size_t>(t.i64("index"));
    const auto role = role_from_name(t.str("role"));
    if (!role) throw RecordError("role", "trace turn: bad role");
    turn.role = *role;
    if (t.find("teacherPrefix")) turn.teacher_prefix = t.str("teacherPrefix");
    turn.body = t.str("body");
    out.turns.push_back(std::move(turn));
  }
  return out;
}

void check_no_secrets(const TraceRecord& r, const std::vector<std::string>& secrets) {
  for (const auto& s : secrets) {
    if (s.empty()) continue;
    for (const auto& t : r.turns) {
      if (t.body.find(s) != std::string::npos || (t.teacher_prefix && t.teacher_prefix->find(s) != std::string::npos)) {
        throw ReportError("trace " + r.session_id + " contains a credential; refusing to persist it");
      }
    }
  }
}

void export_traces(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot write " + path.string());
  for (const auto& r : records) out << encode(trace_to_value(r)) << "\n";
}

std::vector<TraceRecord> import_traces(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportError("cannot read " + path.string());
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(trace_from_value(decode(line)));
  }
  return out;
}

LineSink::LineSink(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw ReportError("cannot write " + path.string());
}

void LineSink::write(const std::string& line) {
  std::lock_guard lock(mu_);
  out_ << line << "\n";
  out_.flush();
}

}  // namespace iosynth
