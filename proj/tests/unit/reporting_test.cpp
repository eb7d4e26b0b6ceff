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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "iosynth/reporting.hpp"

namespace iosynth {
namespace {

namespace fs = std::filesystem;

RunMetrics M(bool success, std::int64_t io, std::int64_t oracle, std::string agent = "a",
             SessionStatus status = SessionStatus::Succeeded) {
  RunMetrics m;
  m.task_id = "t";
  m.variant = Variant::Anonymized;
  m.agent = std::move(agent);
  m.success = success;
  m.io_used = io;
  m.oracle_used = oracle;
  m.status = success ? SessionStatus::Succeeded : status;
  m.pass1 = true;
  m.pass2 = success;
  return m;
}

TEST(Aggregate, MeansIncludeFailures) {
  const AggregateReport r = aggregate({M(true, 15, 1), M(false, 30, 2, "a", SessionStatus::FailedFinal)});
  ASSERT_EQ(r.rows.size(), 1u);
  const AggregateRow& row = r.rows[0];
  EXPECT_EQ(row.sessions, 2u);
  EXPECT_DOUBLE_EQ(row.success_rate, 50.0);
  EXPECT_DOUBLE_EQ(row.mean_io, 22.5);
  EXPECT_DOUBLE_EQ(row.mean_oracle, 1.5);
  EXPECT_DOUBLE_EQ(row.pass1_rate, 100.0);
  EXPECT_DOUBLE_EQ(row.pass2_rate, 50.0);
  EXPECT_DOUBLE_EQ(row.delta, 50.0);
}

TEST(Aggregate, EmptyAndStrict) {
  EXPECT_TRUE(aggregate({}).rows.empty());
  EXPECT_NE(render_summary(aggregate({})).find("no sessions"), std::string::npos);
  const std::vector<RunMetrics> ms = {M(true, 10, 1), M(false, 12, 0, "a", SessionStatus::Aborted)};
  EXPECT_DOUBLE_EQ(aggregate(ms).rows[0].success_rate, 50.0);
  EXPECT_EQ(aggregate(ms).rows[0].aborted, 1u);
  EXPECT_DOUBLE_EQ(aggregate(ms, true).rows[0].success_rate, 100.0);
  EXPECT_EQ(aggregate(ms, true).rows[0].sessions, 1u);
}

TEST(Aggregate, GroupsByAgentAndVariant) {
  std::vector<RunMetrics> ms = {M(true, 10, 1, "b"), M(true, 10, 1, "a"), M(false, 10, 1, "a")};
  ms[2].variant = Variant::Annotated;
  const AggregateReport r = aggregate(ms);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].agent, "a");
  EXPECT_EQ(r.rows[2].agent, "b");
}

// Aggregation does not depend on the order sessions finished in.
TEST(AggregateProperty, PermutationInvariant) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<RunMetrics> ms;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      RunMetrics m = M(rng() % 2, 10 + static_cast<std::int64_t>(rng() % 21), 1 + static_cast<std::int64_t>(rng() % 3),
                       rng() % 2 ? "x" : "y", rng() % 3 ? SessionStatus::FailedFinal : SessionStatus::Aborted);
      m.pass1 = rng() % 2;
      ms.push_back(m);
    }
    const std::string before = render_summary(aggregate(ms));
    std::shuffle(ms.begin(), ms.end(), rng);
    EXPECT_EQ(render_summary(aggregate(ms)), before);
  }
}

TEST(Metrics, ValueRoundTrip) {
  RunMetrics m = M(true, 17, 2, "eliminator:5");
  m.seed = 0xFFFFFFFFFFFFFFFFull;
  m.wall_ms = 1234;
  const RunMetrics back = metrics_from_value(metrics_to_value(m));
  EXPECT_EQ(encode(metrics_to_value(back)), encode(metrics_to_value(m)));
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.status, SessionStatus::Succeeded);
}

TraceRecord sample(std::size_t i) {
  TraceRecord r;
  r.session_id = "task-" + std::to_string(i) + "#" + std::to_string(i * 7);
  r.turns.push_back({0, Role::Harness, std::string("[teacher]\n"), "GIVEN EXAMPLES:\nhéllo 世界 😀\n"});
  r.turns.push_back({1, Role::Agent, std::nullopt, "INVOCATIONS:\n\"quoted\" 'single' \\ back\ttab\n"});
  r.turns.push_back({2, Role::System, std::nullopt, ""});
  r.outcome = i % 2 ? SessionStatus::Succeeded : SessionStatus::FailedFinal;
  return r;
}

bool same_trace(const TraceRecord& a, const TraceRecord& b) {
  if (a.session_id != b.session_id || a.outcome != b.outcome || a.turns.size() != b.turns.size()) return false;
  for (std::size_t i = 0; i < a.turns.size(); ++i) {
    const auto& x = a.turns[i];
    const auto& y = b.turns[i];
    if (x.index != y.index || x.role != y.role || x.teacher_prefix != y.teacher_prefix || x.body != y.body) {
      return false;
    }
  }
  return true;
}

TEST(Traces, ValueRoundTripKeepsUnicode) {
  const TraceRecord r = sample(3);
  EXPECT_TRUE(same_trace(trace_from_value(trace_to_value(r)), r));
}

TEST(Traces, BulkExportImport) {
  const fs::path path = fs::temp_directory_path() / "iosynth_traces_test.txt";
  std::vector<TraceRecord> rs;
  for (std::size_t i = 0; i < 1000; ++i) rs.push_back(sample(i));
  export_traces(rs, path);
  const auto back = import_traces(path);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) ASSERT_TRUE(same_trace(back[i], rs[i])) << i;
  fs::remove(path);
}

TEST(Traces, FromSessionKeepsOnlyRealPrefixes) {
  SessionState st;
  st.status = SessionStatus::Aborted;
  st.transcript = {{Role::Harness, 5, "p0", "prefix"}, {Role::Agent, 6, "a0", ""}, {Role::Harness, 7, "p1", ""}};
  const TraceRecord r = trace_from_session("s", st);
  ASSERT_EQ(r.turns.size(), 3u);
  EXPECT_EQ(r.turns[0].teacher_prefix, std::optional<std::string>("prefix"));
  EXPECT_FALSE(r.turns[1].teacher_prefix);
  EXPECT_FALSE(r.turns[2].teacher_prefix);
  EXPECT_EQ(r.outcome, SessionStatus::Aborted);
}

TEST(Traces, SecretsAreRejected) {
  TraceRecord r = sample(1);
  EXPECT_NO_THROW(check_no_secrets(r, {"sk-secret"}));
  EXPECT_NO_THROW(check_no_secrets(r, {""}));
  r.turns[1].body += "key=sk-secret";
  EXPECT_THROW(check_no_secrets(r, {"sk-secret"}), ReportError);
  r = sample(1);
  r.turns[0].teacher_prefix = "sk-secret";
  EXPECT_THROW(check_no_secrets(r, {"sk-secret"}), ReportError);
}

TEST(LineSinkTest, ConcurrentWritersProduceWholeLines) {
  const fs::path path = fs::temp_directory_path() / "iosynth_sink_test.txt";
  {
    LineSink sink(path);
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t) {
      ts.emplace_back([&, t] {
        for (int i = 0; i < 200; ++i) sink.write(std::string(50, static_cast<char>('a' + t)));
      });
    }
    for (auto& t : ts) t.join();
  }
  std::ifstream in(path);
  int n = 0;
  for (std::string line; std::getline(in, line); ++n) {
    ASSERT_EQ(line.size(), 50u);
    ASSERT_EQ(std::count(line.begin(), line.end(), line[0]), 50);
  }
  EXPECT_EQ(n, 800);
  fs::remove(path);
}

}  // namespace
}  // namespace iosynth
