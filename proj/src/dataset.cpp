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

#include "iosynth/dataset.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "iosynth/builtins.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/pysource.hpp"
#include "iosynth/record.hpp"

namespace iosynth {

namespace fs = std::filesystem;

// Task -----------------------------------------------------------------------

const char* variant_name(Variant v) { return v == Variant::Annotated ? "annotated" : "anonymized"; }

std::optional<Variant> variant_from_name(std::string_view name) {
  if (name == "annotated") return Variant::Annotated;
  if (name == "anonymized") return Variant::Anonymized;
  return std::nullopt;
}

std::vector<ArgTuple> Task::e0_inputs() const {
  std::vector<ArgTuple> out;
  out.reserve(e0.size());
  for (const auto& ex : e0) out.push_back(ex.input);
  return out;
}

Value task_to_value(const Task& t) {
  ValueList examples;
  for (const auto& ex : t.e0) examples.push_back(Value::tuple({ex.input.as_tuple(), outcome_to_value(ex.output)}));
  ValueList tags;
  for (const auto& tag : t.tags) tags.push_back(Value::str(tag));
  return RecordBuilder()
      .add("id", Value::str(t.id))
      .add("sourceSuite", Value::str(t.suite))
      .add("source", Value::str(t.source))
      .add("entry", Value::str(t.entry))
      .add("variant", Value::str(variant_name(t.variant)))
      .add("initialExamples", Value::list(std::move(examples)))
      .add("arity", rec::i64(static_cast<std::int64_t>(t.arity)))
      .add("tags", Value::list(std::move(tags)))
      .build();
}

Task task_from_value(const Value& v) {
  const RecordReader r(v, "task");
  Task t;
  t.id = r.str("id");
  t.suite = r.str("sourceSuite");
  t.source = r.str("source");
  t.entry = r.str("entry");
  const auto variant = variant_from_name(r.str("variant"));
  if (!variant) throw RecordError("variant", "task: field 'variant' must be annotated or anonymized");
  t.variant = *variant;
  for (const auto& ex : r.kind("initialExamples", Value::Kind::List).items()) {
    if (!ex.is(Value::Kind::Tuple) || ex.items().size() != 2 || !ex.items()[0].is(Value::Kind::Tuple)) {
      throw RecordError("initialExamples", "task: field 'initialExamples' entries must be (args, outcome)");
    }
    t.e0.push_back(IOExample{ArgTuple::from_tuple(ex.items()[0]), outcome_from_value(ex.items()[1])});
  }
  const std::int64_t arity = r.i64("arity");
  if (arity < 0) throw RecordError("arity", "task: field 'arity' must be non-negative");
  t.arity = static_cast<std::size_t>(arity);
  if (const Value* tags = r.find("tags")) {
    for (const auto& tag : tags->items()) t.tags.push_back(tag.as_str());
  }
  return t;
}

std::string encode_task(const Task& t) { return encode(task_to_value(t)) + "\n"; }

Task decode_task(std::string_view bytes, const std::string& origin) {
  while (!bytes.empty() && (bytes.back() == '\n' || bytes.back() == '\r')) bytes.remove_suffix(1);
  try {
    return task_from_value(decode(bytes));
  } catch (const DecodeError& e) {
    throw DatasetError(origin + ": byte " + std::to_string(e.offset()) + ": " + e.what());
  } catch (const RecordError& e) {
    throw DatasetError(origin + ": " + e.what());
  } catch (const std::exception& e) {
    throw DatasetError(origin + ": " + e.what());
  }
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DatasetError("cannot write " + p.string());
  out << bytes;
}

bool safe_id(const std::string& id) {
  return !id.empty() && id != "manifest" && id.find_first_of("/\\") == std::string::npos && id[0] != '.';
}

}  // namespace

Task load_task(const fs::path& path) { return decode_task(read_file(path), path.string()); }

void save_task(const Task& t, const fs::path& path) { write_file(path, encode_task(t)); }

// Manifest -------------------------------------------------------------------

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw DatasetError("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return out.str();
}

namespace {

std::string checksum_of(const fs::path& dir, const std::vector<std::string>& ids) {
  std::string all;
  for (const auto& id : ids) {
    all += id;
    all.push_back('\0');
    all += read_file(dir / id);
    all.push_back('\0');
  }
  return sha256_hex(all);
}

Value manifest_to_value(const DatasetManifest& m) {
  ValueList ids;
  for (const auto& id : m.tasks) ids.push_back(Value::str(id));
  return RecordBuilder()
      .add("name", Value::str(m.name))
      .add("version", Value::str(m.version))
      .add("e0Size", rec::i64(static_cast<std::int64_t>(m.e0_size)))
      .add("tasks", Value::list(std::move(ids)))
      .add("checksum", Value::str(m.checksum))
      .build();
}

}  // namespace

DatasetManifest write_variant(const fs::path& dir, const std::string& name, const std::vector<Task>& tasks,
                              std::size_t e0_size) {
  fs::create_directories(dir);
  DatasetManifest m;
  m.name = name;
  m.e0_size = e0_size;
  for (const auto& t : tasks) {
    if (!safe_id(t.id)) throw DatasetError("task id '" + t.id + "' is not a valid file name");
    save_task(t, dir / t.id);
    m.tasks.push_back(t.id);
  }
  m.checksum = checksum_of(dir, m.tasks);
  write_file(dir / "manifest", encode(manifest_to_value(m)) + "\n");
  return m;
}

std::vector<Task> load_variant(const fs::path& dir, DatasetManifest* manifest) {
  const std::string text = read_file(dir / "manifest");
  DatasetManifest m;
  try {
    std::string_view body = text;
    while (!body.empty() && body.back() == '\n') body.remove_suffix(1);
    const Value v = decode(body);
    const RecordReader r(v, "manifest");
    m.name = r.str("name");
    m.version = r.str_or("version", "1");
    m.e0_size = static_cast<std::size_t>(r.i64_or("e0Size", 10));
    for (const auto& id : r.kind("tasks", Value::Kind::List).items()) m.tasks.push_back(id.as_str());
    m.checksum = r.str("checksum");
  } catch (const DatasetError&) {
    throw;
  } catch (const std::exception& e) {
    throw DatasetError((dir / "manifest").string() + ": " + e.what());
  }
  for (const auto& id : m.tasks) {
    if (!safe_id(id)) throw DatasetError("manifest lists invalid task id '" + id + "'");
  }
  const std::string actual = checksum_of(dir, m.tasks);
  if (actual != m.checksum) {
    throw DatasetError("checksum mismatch in " + dir.string() + ": manifest " + m.checksum + ", files " + actual);
  }
  std::vector<Task> tasks;
  for (const auto& id : m.tasks) tasks.push_back(load_task(dir / id));
  if (manifest) *manifest = m;
  return tasks;
}

// Builtins -------------------------------------------------------------------

namespace {

std::vector<Task> builtin_tasks_with(Executor& exec, std::size_t e0_size, bool uri) {
  std::vector<Task> out;
  for (const auto& bt : builtin_tasks()) {
    const BuiltinFunction* f = find_builtin(bt.name);
    Task t;
    t.id = bt.name;
    t.suite = bt.suite;
    t.source = uri ? f->uri() : f->twin;
    t.entry = f->entry;
    t.arity = f->params.size();
    t.tags = bt.tags;
    for (std::size_t i = 0; i < bt.e0.size() && i < e0_size; ++i) {
      const CallResult r = exec.call(t.source, t.entry, bt.e0[i], ExecLimits{});
      if (!r.ok()) throw DatasetError("builtin task " + t.id + " failed on example " + std::to_string(i));
      t.e0.push_back(IOExample{bt.e0[i], r.outcome});
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<Task> builtin_dataset(Executor& exec, std::size_t e0_size) {
  return builtin_tasks_with(exec, e0_size, false);
}

std::vector<Task> builtin_uri_dataset(Executor& exec, std::size_t e0_size) {
  return builtin_tasks_with(exec, e0_size, true);
}

// Validation -----------------------------------------------------------------

const char* issue_name(ExampleIssue::Kind k) {
  switch (k) {
    case ExampleIssue::Kind::Mismatch:
      return "mismatch";
    case ExampleIssue::Kind::Nondeterministic:
      return "nondeterministic";
    case ExampleIssue::Kind::Timeout:
      return "timeout";
    case ExampleIssue::Kind::LoadFailure:
      return "loadFailure";
    case ExampleIssue::Kind::Unrenderable:
      return "unrenderable";
    case ExampleIssue::Kind::ArityMismatch:
      return "arityMismatch";
  }
  return "?";
}

std::string ValidationReport::summary() const {
  std::string out = task_id + ": " + (ok() ? "ok" : std::to_string(issues.size()) + " issue(s)");
  for (const auto& i : issues) {
    out += "\n  example " + std::to_string(i.index) + " " + issue_name(i.kind);
    if (!i.detail.empty()) out += ": " + i.detail;
  }
  return out;
}

ValidationReport validate_task(const Task& t, Executor& exec, const ExecLimits& limits) {
  ValidationReport rep;
  rep.task_id = t.id;
  using K = ExampleIssue::Kind;
  for (std::size_t i = 0; i < t.e0.size(); ++i) {
    const IOExample& ex = t.e0[i];
    if (ex.input.arity() != t.arity) {
      rep.issues.push_back({K::ArityMismatch, i,
                            "expected " + std::to_string(t.arity) + " argument(s), got " +
                                std::to_string(ex.input.arity())});
    }
    try {
      (void)render_args(ex.input);
    } catch (const UnrenderableError& e) {
      rep.issues.push_back({K::Unrenderable, i, e.what()});
    }
    const CallResult a = exec.call(t.source, t.entry, ex.input, limits);
    if (a.status == ExecStatus::ProtocolError) {
      rep.issues.push_back({K::LoadFailure, i, a.diagnostic});
      break;  // every other example would repeat the same failure
    }
    if (a.status == ExecStatus::Timeout) {
      rep.issues.push_back({K::Timeout, i, {}});
      continue;
    }
    if (a.status == ExecStatus::Error) {
      rep.issues.push_back({K::Timeout, i, a.diagnostic});
      continue;
    }
    const CallResult b = exec.call(t.source, t.entry, ex.input, limits);
    if (!b.ok() || !exec.compare(a.outcome, b.outcome)) {
      rep.issues.push_back({K::Nondeterministic, i, "two executions disagree"});
      continue;
    }
    if (!exec.compare(a.outcome, ex.output)) {
      rep.issues.push_back({K::Mismatch, i, "stored output differs from recomputed"});
    }
  }
  return rep;
}

Task anonymize_task(const Task& t, Executor& exec, const ExecLimits& limits) {
  if (t.variant != Variant::Annotated) throw DatasetError(t.id + ": task is already anonymized");
  const TransformResult r = exec.transform(t.source, "anonymize", t.entry);
  if (r.status != ExecStatus::Ok) throw DatasetError(t.id + ": anonymize failed: " + r.diagnostic);
  if (t.entry != kAnonymousEntry && r.source.find(t.entry) != std::string::npos) {
    throw DatasetError(t.id + ": anonymized source still mentions '" + t.entry + "'");
  }
  Task out = t;
  out.source = r.source;
  out.entry = kAnonymousEntry;
  out.variant = Variant::Anonymized;
  const ValidationReport rep = validate_task(out, exec, limits);
  if (!rep.ok()) throw DatasetError(t.id + ": anonymized variant failed validation\n" + rep.summary());
  return out;
}

// Stats ----------------------------------------------------------------------

std::map<std::string, SuiteStats> dataset_stats(const std::vector<Task>& tasks) {
  std::map<std::string, std::vector<std::size_t>> locs;
  for (const auto& t : tasks) {
    std::string_view src = t.source;
    if (src.rfind(kBuiltinScheme, 0) == 0) {
      if (const BuiltinFunction* f = find_builtin(src.substr(kBuiltinScheme.size()))) src = f->twin;
    }
    locs[t.suite].push_back(py::count_lines(src));
  }
  std::map<std::string, SuiteStats> out;
  for (const auto& [suite, v] : locs) {
    SuiteStats s;
    s.count = v.size();
    s.loc_min = *std::min_element(v.begin(), v.end());
    s.loc_max = *std::max_element(v.begin(), v.end());
    std::size_t sum = 0;
    for (auto n : v) sum += n;
    s.loc_mean = static_cast<double>(sum) / static_cast<double>(v.size());
    out[suite] = s;
  }
  return out;
}

std::string render_stats(const std::map<std::string, SuiteStats>& stats) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "suite" << std::right << std::setw(8) << "count" << std::setw(8) << "LoC min"
      << std::setw(8) << "max" << std::setw(8) << "avg" << "\n";
  std::size_t total = 0;
  for (const auto& [suite, s] : stats) {
    char avg[32];
    std::snprintf(avg, sizeof avg, "%.1f", s.loc_mean);
    out << std::left << std::setw(20) << suite << std::right << std::setw(8) << s.count << std::setw(8) << s.loc_min
        << std::setw(8) << s.loc_max << std::setw(8) << avg << "\n";
    total += s.count;
  }
  out << std::left << std::setw(20) << "total" << std::right << std::setw(8) << total << "\n";
  return out.str();
}

}  // namespace iosynth
