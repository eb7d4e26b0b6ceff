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

#include <set>

#include "../support/gen.hpp"
#include "iosynth/builtins.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/pysource.hpp"
#include "iosynth/reference_executor.hpp"

namespace iosynth {
namespace {

ArgTuple A(const char* text) { return parse_args(text); }

Outcome run(ReferenceExecutor& exec, const std::string& name, const ArgTuple& args) {
  const CallResult r = exec.call("builtin:" + name, "", args, ExecLimits{});
  EXPECT_TRUE(r.ok()) << name << render_args(args) << ": " << r.diagnostic;
  return r.outcome;
}

std::string shown(const Outcome& o) { return o.is_ok() ? render_repr(o.value()) : "Err " + o.error_kind(); }

TEST(Registry, Integrity) {
  std::set<std::string> names;
  std::set<std::string> prints;
  for (const auto& f : builtin_registry()) {
    EXPECT_TRUE(names.insert(f.name).second) << f.name;
    EXPECT_TRUE(prints.insert(py::fingerprint(f.twin, f.entry)).second) << f.name;
    EXPECT_TRUE(py::defines_function(py::tokenize(f.twin), f.entry)) << f.name;
    if (!f.base.empty()) {
      ASSERT_NE(find_builtin(f.base), nullptr) << f.name;
      EXPECT_NE(find_builtin(f.base)->twin, f.twin);
      EXPECT_EQ(f.name.rfind(f.base + "~", 0), 0u);
    }
  }
  EXPECT_GE(builtin_mutants().size(), 40u);
}

TEST(Registry, TasksHaveTenDeterministicExamples) {
  ReferenceExecutor exec;
  const std::set<std::string> suites = {"builtin-list", "builtin-string", "builtin-number"};
  for (const auto& t : builtin_tasks()) {
    EXPECT_EQ(t.e0.size(), 10u) << t.name;
    EXPECT_TRUE(suites.count(t.suite)) << t.name;
    for (const auto& args : t.e0) {
      const Outcome a = run(exec, t.name, args);
      const Outcome b = run(exec, t.name, args);
      EXPECT_TRUE(structural_eq(a, b));
      EXPECT_NO_THROW(render_literal(args.as_tuple()));
    }
  }
}

TEST(Registry, CaseStudyExamplesMatchTranscript) {
  ReferenceExecutor exec;
  const auto& tasks = builtin_tasks();
  const auto it = std::find_if(tasks.begin(), tasks.end(), [](const auto& t) { return t.name == kCaseStudyTask; });
  ASSERT_NE(it, tasks.end());
  const char* expected[] = {"True", "False", "True", "False", "True", "True", "False", "True", "False", "True"};
  ASSERT_EQ(it->e0.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(render_display(run(exec, kCaseStudyTask, it->e0[i]).value()), expected[i]) << i;
  }
  EXPECT_TRUE(structural_eq(it->e0[9], A("list(range(100))")));
  EXPECT_EQ(it->e0[9].args[0].items().size(), 100u);
}

TEST(Registry, CaseStudyExploration) {
  // Results 11-20 of the transcript.
  ReferenceExecutor exec;
  const std::pair<const char*, const char*> rows[] = {
      {"[-1, -2, 0, 1]", "True"},     {"[-1, -2, -1]", "False"},     {"[1, 1.0, 2]", "False"},
      {"[(1,), (2,), (1,)]", "False"}, {"[42]", "True"},             {"[\"\", \"a\", \"b\"]", "True"},
      {"[\"\", \"\", \"b\"]", "False"}, {"[True, False, False]", "False"}, {"['!', '@', '#', '$']", "True"},
      {"[None, 0, \"None\"]", "True"}};
  for (const auto& [args, want] : rows) {
    EXPECT_EQ(render_display(run(exec, kCaseStudyTask, A(args)).value()), want) << args;
  }
}

TEST(Registry, PairwiseCandidateDiffersOnlyOnUnhashables) {
  ReferenceExecutor exec;
  const ArgTuple failed = A("[1, 2, 3, 4, [5, 6], [5, 6]]");
  EXPECT_EQ(shown(run(exec, kCaseStudyTask, failed)), "Err TypeError");
  EXPECT_EQ(shown(run(exec, kPairwiseCandidate, failed)), "False");
  for (const auto& t : builtin_tasks()) {
    if (t.name != kCaseStudyTask) continue;
    for (const auto& args : t.e0) {
      EXPECT_TRUE(compare_outcomes(run(exec, kCaseStudyTask, args), run(exec, kPairwiseCandidate, args)));
    }
  }
}

// Values confirmed against CPython by the twin_conformance check, then frozen.
TEST(Registry, FrozenSpotValues) {
  ReferenceExecutor exec;
  const std::tuple<const char*, const char*, const char*> rows[] = {
      {"fibonacci", "10", "55"},
      {"fibonacci", "-3", "0"},
      {"fibonacci", "2.5", "Err TypeError"},
      {"factorial", "20", "2432902008176640000"},
      {"factorial", "25", "15511210043330985984000000"},
      {"to_binary", "10", "'1010'"},
      {"to_binary", "-4", "''"},
      {"run_length_encode", "'aaabbc'", "'a3b2c1'"},
      {"median", "[4, 1, 3, 2]", "2.5"},
      {"median", "[]", "None"},
      {"caesar_shift", "'xyz', 3", "'abc'"},
      {"caesar_shift", "'abc', -1", "'zab'"},
      {"celsius_to_fahrenheit", "37", "98.6"},
      {"celsius_to_fahrenheit", "'a'", "Err TypeError"},
      {"gcd", "-12, 8", "4"},
      {"gcd", "0, 0", "0"},
      {"is_prime", "1", "False"},
      {"is_prime", "97", "True"},
      {"digit_sum", "-45", "9"},
      {"count_words", "'  a  b '", "2"},
      {"word_lengths", "'hello world'", "[5, 5]"},
      {"clamp", "2.5, 1, 2", "2"},
      {"rotate_list", "[1, 2, 3, 4], -1", "[2, 3, 4, 1]"},
      {"rotate_list", "[1, 2, 3], 1.5", "Err TypeError"},
      {"longest_common_prefix", "['flower', 'flow', 'flight']", "'fl'"},
      {"is_anagram", "'Dormitory', 'dirtyroom'", "True"},
      {"filter_even", "[True, False, 2]", "[False, 2]"},
      {"sum_of_squares", "10", "385"},
      {"char_frequency", "'abca'", "{'a': 2, 'b': 1, 'c': 1}"},
      {"merge_sorted", "[1, 3], [2]", "[1, 2, 3]"},
      {"dedupe_preserve_order", "[True, 1, 0, False]", "[True, 0]"},
      {"dedupe_preserve_order", "[[1], [1]]", "Err TypeError"},
      {"running_max", "[1, 3, 2, 5, 4]", "[1, 3, 3, 5, 5]"},
      {"binary_search", "[1, 3, 5, 7, 9], 9", "4"},
      {"count_occurrences", "[True, 1, 1.0], 1", "3"},
      {"second_largest", "[5, 5, 4]", "4"},
      {"second_largest", "[1, 'a']", "Err TypeError"},
      {"flatten", "[1, [2, [3, [4]]]]", "[1, 2, 3, 4]"},
      {"abs_sort", "[3, -3, 2, -2]", "[2, -2, 3, -3]"},
      {"is_palindrome", "'Noon'", "True"},
      {"reverse_string", "'Hello, World!'", "'!dlroW ,olleH'"},
      {"reverse_string", "5", "Err TypeError"},
      {"sum_list", "[1.5, 2.5]", "4.0"},
      {"sum_list", "['a']", "Err TypeError"},
      {"max_element", "[]", "Err IndexError"},
      {"count_vowels", "'AEIOU'", "5"},
      {"count_vowels", "5", "Err AttributeError"},
  };
  for (const auto& [name, args, want] : rows) {
    EXPECT_EQ(shown(run(exec, name, A(args))), want) << name << "(" << args << ")";
  }
}

// Every mutant must be distinguishable from its base on some input; the
// search covers the initial examples and shape-preserving random inputs.
TEST(Registry, EveryMutantIsDistinguishable) {
  ReferenceExecutor exec;
  testgen::Gen g(424242);
  g.allow_nan = false;
  ExecLimits lim;
  lim.timeout_ms = 200;
  int killed_by_e0 = 0;
  for (const auto* m : builtin_mutants()) {
    const auto& tasks = builtin_tasks();
    const auto task = std::find_if(tasks.begin(), tasks.end(), [&](const auto& t) { return t.name == m->base; });
    ASSERT_NE(task, tasks.end());
    std::vector<ArgTuple> corpus = task->e0;
    for (int i = 0; i < 500; ++i) {
      ArgTuple a;
      for (const auto& v : task->e0[g.below(task->e0.size())].args) a.args.push_back(g.like(v));
      corpus.push_back(std::move(a));
    }
    // Float and far-out variants of integer seeds.
    for (const auto& seed : task->e0) {
      ArgTuple as_float = seed;
      ArgTuple far = seed;
      for (std::size_t k = 0; k < seed.args.size(); ++k) {
        if (!seed.args[k].is(Value::Kind::Int)) continue;
        const double d = seed.args[k].as_int().to_double();
        as_float.args[k] = Value::floating(d);
        far.args[k] = Value::integer(BigInt(static_cast<std::int64_t>(d) * 30 + 7));
      }
      corpus.push_back(std::move(as_float));
      corpus.push_back(std::move(far));
    }
    std::size_t found = corpus.size();
    for (std::size_t i = 0; i < corpus.size() && found == corpus.size(); ++i) {
      const CallResult base = exec.call("builtin:" + m->base, "", corpus[i], lim);
      const CallResult mut = exec.call(m->uri(), "", corpus[i], lim);
      if (base.ok() && mut.ok() && !compare_outcomes(base.outcome, mut.outcome)) found = i;
    }
    EXPECT_LT(found, corpus.size()) << m->name << " [" << m->mutation << "] was never distinguished";
    killed_by_e0 += found < task->e0.size();
  }
  RecordProperty("killed_by_e0", killed_by_e0);
}

TEST(Registry, DiagnosticsAreFlagged) {
  for (const char* name : {"hang", "crash", "random_pick", "noisy_identity"}) {
    const BuiltinFunction* f = find_builtin(name);
    ASSERT_NE(f, nullptr);
    EXPECT_TRUE(f->diagnostic);
  }
  for (const auto& t : builtin_tasks()) EXPECT_FALSE(find_builtin(t.name)->diagnostic);
}

}  // namespace
}  // namespace iosynth
