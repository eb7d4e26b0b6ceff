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

#include <fstream>
#include <sstream>

#include "../support/tasks.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/record.hpp"

namespace iosynth {
namespace {

namespace fs = std::filesystem;
using testgen::annotated_tasks;
using testgen::anonymized_tasks;
using testgen::task_by_id;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("iosynth_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

bool same_task(const Task& a, const Task& b) {
  if (a.id != b.id || a.suite != b.suite || a.source != b.source || a.entry != b.entry ||
      a.variant != b.variant || a.arity != b.arity || a.tags != b.tags || a.e0.size() != b.e0.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.e0.size(); ++i) {
    if (!structural_eq(a.e0[i].input, b.e0[i].input) || !compare_outcomes(a.e0[i].output, b.e0[i].output)) {
      return false;
    }
  }
  return true;
}

TEST(TaskCodec, RoundTripsEveryBuiltinTask) {
  for (const auto* set : {&annotated_tasks(), &anonymized_tasks()}) {
    for (const auto& t : *set) {
      const std::string bytes = encode_task(t);
      EXPECT_EQ(bytes.back(), '\n');
      const Task back = decode_task(bytes);
      EXPECT_TRUE(same_task(t, back)) << t.id;
      EXPECT_EQ(encode_task(back), bytes);
    }
  }
}

TEST(TaskCodec, ErrorsNameTheProblem) {
  const Task& t = task_by_id(annotated_tasks(), "sum_list");
  const Value v = task_to_value(t);
  ValuePairs pairs;
  for (const auto& kv : v.pairs()) {
    if (kv.first.as_str() != "initialExamples") pairs.push_back(kv);
  }
  try {
    decode_task(encode(Value::map(pairs)));
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("initialExamples"), std::string::npos) << e.what();
  }
  try {
    decode_task("{s\"id\":s\"x\",", "broken");
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos) << e.what();
  }
}

TEST(TaskCodec, SaveAndLoad) {
  TempDir dir("task");
  const Task& t = task_by_id(anonymized_tasks(), "flatten");
  save_task(t, dir.path / "flatten");
  EXPECT_TRUE(same_task(load_task(dir.path / "flatten"), t));
  EXPECT_THROW(load_task(dir.path / "missing"), DatasetError);
}

TEST(Manifest, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Manifest, WriteLoadAndDetectTampering) {
  TempDir dir("variant");
  const auto& tasks = anonymized_tasks();
  const DatasetManifest m = write_variant(dir.path, "builtin", tasks);
  EXPECT_EQ(m.tasks.size(), tasks.size());
  EXPECT_EQ(m.checksum.size(), 64u);
  DatasetManifest read;
  const auto back = load_variant(dir.path, &read);
  ASSERT_EQ(back.size(), tasks.size());
  EXPECT_EQ(read.checksum, m.checksum);
  EXPECT_EQ(read.e0_size, 10u);
  for (std::size_t i = 0; i < tasks.size(); ++i) EXPECT_TRUE(same_task(back[i], tasks[i]));

  // Independent recomputation of the checksum.
  std::string concat;
  for (const auto& id : m.tasks) {
    std::ifstream in(dir.path / id, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    concat += id + '\0' + ss.str() + '\0';
  }
  EXPECT_EQ(sha256_hex(concat), m.checksum);

  std::ofstream(dir.path / m.tasks[3], std::ios::app) << " ";
  EXPECT_THROW(load_variant(dir.path), DatasetError);
  fs::remove(dir.path / m.tasks[3]);
  EXPECT_THROW(load_variant(dir.path), DatasetError);
}

TEST(Manifest, RejectsUnsafeIds) {
  TempDir dir("unsafe");
  Task t = task_by_id(anonymized_tasks(), "sum_list");
  for (const char* bad : {"../x", ".hidden", "manifest", "a/b"}) {
    t.id = bad;
    EXPECT_THROW(write_variant(dir.path, "x", {t}), DatasetError) << bad;
  }
}

TEST(Validation, BuiltinTasksAreClean) {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  for (const auto& t : anonymized_tasks()) EXPECT_TRUE(validate_task(t, exec).ok()) << t.id;
}

TEST(Validation, FlagsCorruptedOutputs) {
  ReferenceExecutor exec;
  Task t = task_by_id(annotated_tasks(), "sum_list");
  t.e0[2].output = Outcome::ok(Value::integer(999));
  const ValidationReport r = validate_task(t, exec);
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].kind, ExampleIssue::Kind::Mismatch);
  EXPECT_EQ(r.issues[0].index, 2u);
  EXPECT_NE(r.summary().find("sum_list"), std::string::npos);
}

TEST(Validation, FlagsNondeterminismAndTimeouts) {
  ReferenceExecutor exec(ReferenceOptions{true, false});
  Task t;
  t.id = "dice";
  t.source = "builtin:random_pick";
  t.entry = "random_pick";
  t.arity = 1;
  t.e0 = {{parse_args("1"), Outcome::ok(Value::integer(4))}};
  const ValidationReport r = validate_task(t, exec);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.issues[0].kind, ExampleIssue::Kind::Nondeterministic);

  t.source = "builtin:hang";
  t.entry = "hang";
  ExecLimits lim;
  lim.timeout_ms = 30;
  const ValidationReport h = validate_task(t, exec, lim);
  ASSERT_FALSE(h.ok());
  EXPECT_EQ(h.issues[0].kind, ExampleIssue::Kind::Timeout);

  t.e0[0].input = parse_args("1, 2");
  EXPECT_EQ(validate_task(t, exec, lim).issues[0].kind, ExampleIssue::Kind::ArityMismatch);
}

TEST(Anonymize, RenamesEntryEverywhere) {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  for (const char* id : {"is_palindrome", "flatten"}) {
    const Task& a = task_by_id(annotated_tasks(), id);
    const Task n = anonymize_task(a, exec);
    EXPECT_EQ(n.variant, Variant::Anonymized);
    EXPECT_EQ(n.entry, "solution");
    EXPECT_EQ(n.source.find(id), std::string::npos) << n.source;
    EXPECT_NE(n.source.find("def solution("), std::string::npos);
    EXPECT_THROW(anonymize_task(n, exec), DatasetError);
  }
  // Recursion goes through the renamed function.
  const Task& f = task_by_id(anonymized_tasks(), "flatten");
  EXPECT_NE(f.source.find("solution(", f.source.find("def solution(") + 4), std::string::npos) << f.source;
}

// Both variants give the same outcome on any input.
TEST(Anonymize, VariantsAgreeOnRandomInputs) {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  testgen::Gen g(99);
  g.allow_nan = false;
  ExecLimits lim;
  lim.timeout_ms = 200;
  for (const auto& a : annotated_tasks()) {
    const Task& n = task_by_id(anonymized_tasks(), a.id);
    for (int i = 0; i < 15; ++i) {
      ArgTuple x;
      for (const auto& v : a.e0[g.below(a.e0.size())].input.args) x.args.push_back(g.like(v));
      const CallResult r1 = exec.call(a.source, a.entry, x, lim);
      const CallResult r2 = exec.call(n.source, n.entry, x, lim);
      if (!r1.ok() || !r2.ok()) continue;
      EXPECT_TRUE(compare_outcomes(r1.outcome, r2.outcome)) << a.id << " " << render_args(x);
    }
  }
}

TEST(Stats, CountsAndLinesPerSuite) {
  const auto stats = dataset_stats(annotated_tasks());
  std::size_t total = 0;
  for (const auto& [suite, s] : stats) {
    total += s.count;
    EXPECT_LE(s.loc_min, s.loc_max);
    EXPECT_GE(s.loc_mean, static_cast<double>(s.loc_min));
    EXPECT_LE(s.loc_mean, static_cast<double>(s.loc_max));
  }
  EXPECT_EQ(total, annotated_tasks().size());
  EXPECT_EQ(stats.at("builtin-string").loc_min, 2u);  // reverse_string

  ReferenceExecutor exec;
  const auto uri = dataset_stats(builtin_uri_dataset(exec));
  EXPECT_EQ(uri.at("builtin-list").loc_max, stats.at("builtin-list").loc_max);
  const std::string table = render_stats(stats);
  EXPECT_NE(table.find("builtin-number"), std::string::npos);
}

}  // namespace
}  // namespace iosynth
