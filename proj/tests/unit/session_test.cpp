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

#include "../support/tasks.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/session.hpp"

namespace iosynth {
namespace {

using testgen::anonymized_tasks;
using testgen::task_by_id;

ArgTuple A(const char* text) { return parse_args(text); }

const char* kExploration[] = {"[-1, -2, 0, 1]", "[-1, -2, -1]",       "[1, 1.0, 2]",
                              "[(1,), (2,), (1,)]", "[42]",          "[\"\", \"a\", \"b\"]",
                              "[\"\", \"\", \"b\"]", "[True, False, False]", "['!', '@', '#', '$']",
                              "[None, 0, \"None\"]"};

const char* kPairwise =
    "def solution(lst):\n    n = len(lst)\n    for i in range(n):\n        for j in range(i + 1, n):\n"
    "            if lst[i] == lst[j]:\n                return False\n    return True\n";
const char* kSetBased = "def solution(lst):\n    return len(lst) == len(set(lst))\n";

struct Fixture : ::testing::Test {
  ReferenceExecutor exec{ReferenceOptions{false, true}};
  const Task& uniq = task_by_id(anonymized_tasks(), kCaseStudyTask);
};

using SessionTest = Fixture;

TEST_F(SessionTest, StartAccountsForInitialExamples) {
  Session s(uniq, Budgets{30, 2}, 1, exec);
  EXPECT_EQ(s.state().io_used, 10);
  EXPECT_EQ(s.state().remaining_io(), 20);
  EXPECT_EQ(s.state().oracle_used, 0);
  EXPECT_EQ(s.state().debugging_checks_left(), 1);
  EXPECT_EQ(s.state().status, SessionStatus::Active);
  EXPECT_EQ(s.state().observed.size(), 10u);
}

TEST_F(SessionTest, InvalidBudgets) {
  EXPECT_THROW(Session(uniq, Budgets{9, 2}, 1, exec), std::invalid_argument);
  EXPECT_THROW(Session(uniq, Budgets{30, 0}, 1, exec), std::invalid_argument);
}

TEST_F(SessionTest, NoQueriesWhenBudgetEqualsExamples) {
  Session s(uniq, Budgets{10, 2}, 1, exec);
  const Observation o = s.step(QueryBatch{{A("[1]")}});
  ASSERT_TRUE(std::holds_alternative<BudgetNotice>(o));
  EXPECT_EQ(std::get<BudgetNotice>(o).kind, BudgetNotice::Kind::IoExhausted);
  EXPECT_EQ(s.state().io_used, 10);
}

TEST_F(SessionTest, CaseStudyFlow) {
  Session s(uniq, Budgets{30, 2}, 1, exec);
  QueryBatch q;
  for (const char* x : kExploration) q.inputs.push_back(A(x));
  const Observation o1 = s.step(q);
  const auto& ex = std::get<Examples>(o1);
  EXPECT_EQ(ex.examples.size(), 10u);
  EXPECT_EQ(ex.first_index, 10u);
  EXPECT_EQ(ex.dropped, 0u);
  EXPECT_EQ(s.state().io_used, 20);

  const Observation o2 = s.step(SubmitCandidate{kPairwise, "solution"});
  const auto& fail = std::get<OracleFail>(o2);
  EXPECT_EQ(render_args(fail.counterexample.input), "[1, 2, 3, 4, [5, 6], [5, 6]]");
  EXPECT_EQ(fail.remaining_checks, 1);
  EXPECT_EQ(s.state().status, SessionStatus::Active);

  const Observation o3 = s.step(SubmitCandidate{kSetBased, "solution"});
  EXPECT_TRUE(std::holds_alternative<OraclePass>(o3));
  EXPECT_EQ(s.state().status, SessionStatus::Succeeded);
  const RunMetrics m = session_metrics(s.state());
  EXPECT_TRUE(m.success);
  EXPECT_EQ(m.io_used, 20);
  EXPECT_EQ(m.oracle_used, 2);
  EXPECT_TRUE(m.pass1);
  EXPECT_FALSE(m.pass2);
  EXPECT_THROW(s.step(QueryBatch{{A("[1]")}}), ActionAfterTermination);
}

TEST_F(SessionTest, TruncationAndDuplicates) {
  Session s(uniq, Budgets{15, 2}, 1, exec);
  QueryBatch q;
  for (int i = 0; i < 8; ++i) q.inputs.push_back(A("[1, 1]"));
  const auto ex = std::get<Examples>(s.step(q));
  EXPECT_EQ(ex.examples.size(), 5u);
  EXPECT_EQ(ex.dropped, 3u);
  EXPECT_EQ(s.state().io_used, 15);
  for (const auto& e : ex.examples) EXPECT_TRUE(compare_outcomes(e.output, ex.examples[0].output));
  EXPECT_TRUE(std::holds_alternative<BudgetNotice>(s.step(q)));
}

TEST_F(SessionTest, SingleOracleCallIsFinal) {
  Session s(uniq, Budgets{10, 1}, 1, exec);
  EXPECT_EQ(s.state().debugging_checks_left(), 0);
  const Observation o = s.step(SubmitCandidate{kPairwise, "solution"});
  EXPECT_TRUE(std::holds_alternative<FinalFail>(o));
  EXPECT_EQ(s.state().status, SessionStatus::FailedFinal);
  const RunMetrics m = session_metrics(s.state());
  EXPECT_FALSE(m.success);
  EXPECT_EQ(m.io_used, 10);
  EXPECT_EQ(m.oracle_used, 1);
}

TEST_F(SessionTest, TruthSubmissionSucceedsFirstTry) {
  Session s(uniq, Budgets{30, 2}, 1, exec);
  EXPECT_TRUE(std::holds_alternative<OraclePass>(s.step(SubmitCandidate{uniq.source, uniq.entry})));
  const RunMetrics m = session_metrics(s.state());
  EXPECT_TRUE(m.success);
  EXPECT_EQ(m.io_used, 10);
  EXPECT_EQ(m.oracle_used, 1);
  EXPECT_TRUE(m.pass1);
  EXPECT_TRUE(m.pass2);
}

TEST_F(SessionTest, MalformedCandidatesConsumeNothingAndAbortAtThree) {
  Session s(uniq, Budgets{30, 2}, 1, exec);
  const SubmitCandidate bad{"def solution(:\n", "solution"};
  auto o = s.step(bad);
  EXPECT_EQ(std::get<InvalidAction>(o).consecutive, 1);
  o = s.step(SubmitCandidate{kSetBased, "has_unique_elements"});
  EXPECT_EQ(std::get<InvalidAction>(o).kind, InvalidAction::Kind::MalformedCandidate);
  EXPECT_EQ(s.state().oracle_used, 0);
  // A usable action resets the streak.
  s.step(QueryBatch{{A("[7]")}});
  EXPECT_EQ(s.state().consecutive_invalid, 0);
  s.step(bad);
  s.note_parse_failure("no sections");
  o = s.step(QueryBatch{});
  EXPECT_TRUE(std::holds_alternative<SessionAborted>(o));
  EXPECT_EQ(s.state().status, SessionStatus::Aborted);
  EXPECT_EQ(s.state().oracle_used, 0);
  EXPECT_THROW(s.step(bad), ActionAfterTermination);
  EXPECT_THROW(s.note_parse_failure("x"), ActionAfterTermination);
}

TEST_F(SessionTest, MetricsRequireTerminal) {
  Session s(uniq, Budgets{30, 2}, 1, exec);
  EXPECT_THROW(session_metrics(s.state()), SessionError);
  s.exhaust("turn limit");
  EXPECT_EQ(s.state().status, SessionStatus::FailedBudget);
  EXPECT_FALSE(session_metrics(s.state()).success);
}

TEST_F(SessionTest, TranscriptTimestampsComeFromClock) {
  SessionOptions o;
  std::int64_t t = 100;
  o.clock = [&] { return t++; };
  Session s(uniq, Budgets{30, 2}, 1, exec, o);
  s.record(Role::Harness, "a");
  s.record(Role::Agent, "b");
  EXPECT_EQ(s.state().transcript[0].timestamp_ms, 100);
  EXPECT_EQ(s.state().transcript[1].timestamp_ms, 101);
  Session d(uniq, Budgets{30, 2}, 1, exec);
  d.record(Role::Harness, "a");
  EXPECT_EQ(d.state().transcript[0].timestamp_ms, 0);
}

// Random action sequences over random tasks.
TEST(SessionProperty, BudgetsTerminationAndFeedback) {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  testgen::ActionGen gen(20261015);
  OracleConfig oc;
  oc.max_tests = 60;
  oc.limits.timeout_ms = 200;
  const auto& tasks = anonymized_tasks();
  for (int run = 0; run < 300; ++run) {
    const Task& t = tasks[gen.g.below(tasks.size())];
    const Budgets b{static_cast<std::int64_t>(t.e0.size() + gen.g.below(25)),
                    static_cast<std::int64_t>(1 + gen.g.below(3))};
    Session s(t, b, run, exec, SessionOptions{oc, {}});
    int fails = 0;
    int fail_obs_with_checks = 0;
    std::size_t observed = s.state().observed.size();
    for (int step = 0; step < 12 && !is_terminal(s.state().status); ++step) {
      const Action a = gen.next(t);
      const Observation o = s.step(a);
      const auto& st = s.state();
      ASSERT_LE(st.io_used, b.b_io);
      ASSERT_LE(st.oracle_used, b.b_oracle);
      ASSERT_EQ(static_cast<std::size_t>(st.io_used), st.observed.size());
      ASSERT_GE(st.observed.size(), observed);
      observed = st.observed.size();
      const Counterexample* cex = nullptr;
      if (const auto* f = std::get_if<OracleFail>(&o)) {
        fail_obs_with_checks += f->remaining_checks > 0;
        cex = &f->counterexample;
      }
      if (const auto* f = std::get_if<FinalFail>(&o)) cex = &f->counterexample;
      if (cex) {
        ++fails;
        const auto& sub = std::get<SubmitCandidate>(a);
        ASSERT_TRUE(reverify({t.source, t.entry}, {sub.source, sub.entry}, *cex, oc, exec)) << t.id;
      }
      ASSERT_EQ(st.status == SessionStatus::Succeeded, std::holds_alternative<OraclePass>(o));
    }
    EXPECT_EQ(fail_obs_with_checks, std::min<std::int64_t>(fails, b.b_oracle - 1));
    if (is_terminal(s.state().status)) {
      EXPECT_THROW(s.step(QueryBatch{{t.e0[0].input}}), ActionAfterTermination);
      const RunMetrics m = session_metrics(s.state());
      if (m.pass2) EXPECT_TRUE(m.pass1);
      if (m.success) EXPECT_GE(m.oracle_used, 1);
    }
  }
}

}  // namespace
}  // namespace iosynth
