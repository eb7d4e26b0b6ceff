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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "../support/tasks.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/prompts.hpp"

namespace iosynth {
namespace {

using testgen::anonymized_tasks;
using testgen::annotated_tasks;
using testgen::task_by_id;

ArgTuple A(const char* text) { return parse_args(text); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Golden files are rewritten when IOSYNTH_UPDATE_GOLDEN is set.
void expect_golden(const std::string& name, const std::string& actual) {
  const std::string path = std::string(IOSYNTH_GOLDEN_DIR) + "/" + name;
  if (std::getenv("IOSYNTH_UPDATE_GOLDEN")) std::ofstream(path, std::ios::binary) << actual;
  EXPECT_EQ(read(path), actual) << "golden " << name;
}

Task small_task() {
  Task t;
  t.id = "head";
  t.suite = "test";
  t.entry = "solution";
  t.source = "def solution(xs):\n    return xs[0]\n";
  t.arity = 1;
  t.e0 = {{A("[3, 4]"), Outcome::ok(Value::integer(3))},
          {A("[]"), Outcome::err("IndexError", "list index out of range")},
          {A("['a']"), Outcome::ok(Value::str("a"))}};
  return t;
}

TEST(Render, Lines) {
  EXPECT_EQ(render_invocation("solution", A("[1, 2], 'x'"), 3), "print('Result 3: ' + str(solution([1, 2], 'x')))");
  EXPECT_EQ(render_result(Outcome::ok(Value::str("hi")), 1), "Result 1: hi");
  EXPECT_EQ(render_result(Outcome::err("TypeError"), 2), "Result 2: Error");
}

TEST(Render, BudgetSentence) {
  EXPECT_EQ(budget_sentence(10, 1), "You have 10 additional function invocations and 1 debugging check left.");
  EXPECT_EQ(budget_sentence(1, 2), "You have 1 additional function invocation and 2 debugging checks left.");
  EXPECT_EQ(budget_sentence(0, 0),
            "You have 0 additional function invocations and no debugging checks left, so your next implementation "
            "is final.");
}

TEST(Render, InitialPromptForCaseStudy) {
  const Task& t = task_by_id(anonymized_tasks(), kCaseStudyTask);
  const std::string p = render_initial_prompt(t, Budgets{30, 2});
  EXPECT_TRUE(contains(p, "You can generate up to 20 additional function invocations"));
  EXPECT_TRUE(contains(p, "You have only 1 debugging check total"));
  EXPECT_TRUE(contains(p, "print('Result 1: ' + str(solution([1, 2, 3, 4, 5])))\n"));
  EXPECT_TRUE(contains(p, "Result 10: True\n"));
  EXPECT_FALSE(contains(p, "has_unique_elements"));
  EXPECT_EQ(p, render_initial_prompt(t, Budgets{30, 2}));
  const Task& named = task_by_id(annotated_tasks(), kCaseStudyTask);
  EXPECT_TRUE(contains(render_initial_prompt(named, Budgets{30, 2}), "str(has_unique_elements([1, 2, 3, 4, 5]))"));
}

TEST(Render, InitialPromptWithoutExtraBudget) {
  const std::string p = render_initial_prompt(small_task(), Budgets{3, 1});
  EXPECT_TRUE(contains(p, "You cannot generate additional function invocations"));
  EXPECT_TRUE(contains(p, "your first implementation is final"));
}

TEST(Render, GoldenPrompts) {
  const Task t = small_task();
  std::string all = render_initial_prompt(t, Budgets{6, 3});
  ReferenceExecutor exec;
  SessionState st;
  st.task = &t;
  st.budgets = Budgets{6, 3};
  st.observed = t.e0;
  st.io_used = 5;
  st.oracle_used = 1;
  all += "----\n";
  all += render_feedback_prompt(Examples{{{A("[9]"), Outcome::ok(Value::integer(9))},
                                          {A("[None]"), Outcome::ok(Value::null())}},
                                         3, 1},
                                st);
  all += "----\n";
  all += render_feedback_prompt(
      OracleFail{{A("[[1], 2]"), Outcome::ok(Value::integer(2)), Outcome::ok(Value::list({Value::integer(1)}))}, 2},
      st);
  all += "----\n";
  st.io_used = 6;
  all += render_feedback_prompt(BudgetNotice{BudgetNotice::Kind::IoExhausted}, st);
  all += "----\n";
  all += render_feedback_prompt(InvalidAction{InvalidAction::Kind::ParseFailure, "no sections", 1}, st);
  all += "----\n";
  all += teacher_prefix(t);
  expect_golden("prompts.txt", all);
}

TEST(Render, CounterexampleFeedback) {
  const Task& t = task_by_id(anonymized_tasks(), kCaseStudyTask);
  SessionState st;
  st.task = &t;
  st.budgets = Budgets{30, 2};
  st.io_used = 20;
  st.oracle_used = 1;
  const Counterexample cex{A("[1, 2, 3, 4, [5, 6], [5, 6]]"), Outcome::ok(Value::boolean(false)),
                           Outcome::err("TypeError", "unhashable type: 'list'")};
  const std::string p = render_feedback_prompt(OracleFail{cex, 1}, st);
  EXPECT_TRUE(contains(p, "Failed input: [1, 2, 3, 4, [5, 6], [5, 6]]\n"));
  EXPECT_TRUE(contains(p, "Ground Truth Function != Output From Generated Code:\n'Error' != 'No Error'\n"));
  EXPECT_TRUE(contains(p, "You have 10 additional function invocations and no debugging checks left, so your next "
                          "implementation is final."));
}

TEST(Render, Summaries) {
  const ArgTuple x = A("1");
  EXPECT_EQ(counterexample_summaries({x, Outcome::ok(Value::str("b")), Outcome::ok(Value::str("a"))}),
            std::make_pair(std::string("a"), std::string("b")));
  EXPECT_EQ(counterexample_summaries({x, Outcome::err("KeyError"), Outcome::err("TypeError")}),
            std::make_pair(std::string("TypeError"), std::string("KeyError")));
  EXPECT_EQ(counterexample_summaries({x, Outcome::err("KeyError"), Outcome::ok(Value::integer(1))}),
            std::make_pair(std::string("No Error"), std::string("Error")));
}

TEST(Render, ContinuedNumbering) {
  const Task& t = task_by_id(anonymized_tasks(), kCaseStudyTask);
  SessionState st;
  st.task = &t;
  st.budgets = Budgets{30, 2};
  st.io_used = 20;
  Examples ex;
  ex.first_index = 10;
  for (int i = 0; i < 10; ++i) ex.examples.push_back({A("[1]"), Outcome::ok(Value::boolean(true))});
  const std::string p = render_feedback_prompt(ex, st);
  EXPECT_TRUE(contains(p, "Result 11: True\n"));
  EXPECT_TRUE(contains(p, "Result 20: True\n"));
  EXPECT_FALSE(contains(p, "Result 21"));
}

TEST(Render, UnrenderableInitialExample) {
  Task t = small_task();
  t.e0[0].input = ArgTuple{{Value::opaque("Widget", "<w>")}};
  EXPECT_THROW(render_initial_prompt(t, Budgets{10, 2}), UnrenderableError);
}

// Parsing ----------------------------------------------------------------------

const std::vector<std::string>& replay() {
  static const std::vector<std::string> r = load_script(std::string(IOSYNTH_DATA_DIR) + "/casestudy.replay").responses;
  return r;
}

TEST(Parse, ReplayResponses) {
  ASSERT_EQ(replay().size(), 3u);
  const ParsedResponse first = parse_response(replay()[0], "solution");
  ASSERT_TRUE(first.action);
  const auto& q = std::get<QueryBatch>(*first.action);
  ASSERT_EQ(q.inputs.size(), 10u);
  EXPECT_TRUE(structural_eq(q.inputs[0], A("[-1, -2, 0, 1]")));
  EXPECT_TRUE(structural_eq(q.inputs[9], A("[None, 0, 'None']")));
  const ParsedResponse last = parse_response(replay()[2], "solution");
  ASSERT_TRUE(last.action);
  const auto& c = std::get<SubmitCandidate>(*last.action);
  EXPECT_EQ(c.entry, "solution");
  EXPECT_TRUE(contains(c.source, "return len(lst) == len(set(lst))"));
}

TEST(Parse, FreeTextFails) {
  const ParsedResponse r = parse_response("I think it checks for duplicates.", "solution");
  EXPECT_FALSE(r.action);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Parse, ImplementationWinsAndHeadersAreLenient) {
  const std::string text =
      "## Invocations\n```python\nprint('Result 11: ' + str(f(1)))\n```\n"
      "**implementation:**\n```python\ndef f(x):\n    return x\n```\n";
  const ParsedResponse r = parse_response(text, "f");
  ASSERT_TRUE(r.action);
  EXPECT_TRUE(std::holds_alternative<SubmitCandidate>(*r.action));
}

TEST(Parse, ImplementationWithoutEntryFallsBackToInvocations) {
  const std::string text =
      "INVOCATIONS:\nprint('Result 11: ' + str(f(1, 'a')))\nprint('Result 12: ' + str(f(2, 'b')))\n"
      "IMPLEMENTATION:\n```python\ndef g(x):\n    return x\n```\n";
  const ParsedResponse r = parse_response(text, "f");
  ASSERT_TRUE(r.action);
  const auto& q = std::get<QueryBatch>(*r.action);
  ASSERT_EQ(q.inputs.size(), 2u);
  EXPECT_TRUE(structural_eq(q.inputs[1], A("2, 'b'")));
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Parse, SkipsUnparsableCallsAndDefinitions) {
  const std::string text =
      "INVOCATIONS:\n```python\ndef f(x): pass\nprint(f(foo))\nprint('Result 1: ' + str(f([1, 2])))\nff(3)\n```\n";
  const ParsedResponse r = parse_response(text, "f");
  ASSERT_TRUE(r.action);
  const auto& q = std::get<QueryBatch>(*r.action);
  ASSERT_EQ(q.inputs.size(), 1u);
  EXPECT_TRUE(structural_eq(q.inputs[0], A("[1, 2]")));
  EXPECT_EQ(r.diagnostics.size(), 1u);
}

TEST(Parse, EmptySections) {
  EXPECT_FALSE(parse_response("INVOCATIONS:\nnothing here\n", "f").action);
  EXPECT_FALSE(parse_response("IMPLEMENTATION:\nno code\n", "f").action);
}

// Rendering a batch and parsing it back recovers the same inputs.
TEST(ParseProperty, RenderParseClosure) {
  testgen::Gen g(77);
  g.allow_nan = false;
  for (const auto& t : anonymized_tasks()) {
    for (int round = 0; round < 20; ++round) {
      std::vector<ArgTuple> batch;
      std::string text = "INVOCATIONS:\n```python\n";
      for (int i = 0; i < 5; ++i) {
        ArgTuple a;
        for (const auto& v : t.e0[g.below(t.e0.size())].input.args) a.args.push_back(g.like(v));
        text += render_invocation(t.entry, a, static_cast<std::size_t>(i) + 11) + "\n";
        batch.push_back(std::move(a));
      }
      text += "```\n";
      const ParsedResponse r = parse_response(text, t.entry);
      ASSERT_TRUE(r.action) << t.id << ": " << text;
      const auto& q = std::get<QueryBatch>(*r.action);
      ASSERT_EQ(q.inputs.size(), batch.size()) << text;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        EXPECT_TRUE(structural_eq(q.inputs[i], batch[i])) << render_args(batch[i]);
      }
    }
  }
}

}  // namespace
}  // namespace iosynth
