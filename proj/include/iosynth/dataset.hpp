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

// Task files, manifests, validation and variant management.
//
// On-disk layout:
//
//   <dataset>/<variant>/manifest     canonical map: name, version, e0Size,
//                                    tasks (list of ids), checksum
//   <dataset>/<variant>/<task-id>    one canonical map per task
//
// The checksum is the hex SHA-256 over, for each task in manifest order, the
// id, a NUL byte, the file bytes and a NUL byte.

#ifndef IOSYNTH_DATASET_HPP
#define IOSYNTH_DATASET_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iosynth/executor.hpp"
#include "iosynth/task.hpp"

namespace iosynth {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Value task_to_value(const Task& t);
/// Throws RecordError naming the offending field.
Task task_from_value(const Value& v);

std::string encode_task(const Task& t);
/// Throws DatasetError with the location of a decode error or the name of a
/// missing field.
Task decode_task(std::string_view bytes, const std::string& origin = "task");

Task load_task(const std::filesystem::path& path);
void save_task(const Task& t, const std::filesystem::path& path);

struct DatasetManifest {
  std::string name;
  std::string version = "1";
  std::size_t e0_size = 10;
  std::vector<std::string> tasks;
  std::string checksum;
};

std::string sha256_hex(std::string_view bytes);

/// Writes the task files and a manifest for one variant directory.
DatasetManifest write_variant(const std::filesystem::path& dir, const std::string& name,
                              const std::vector<Task>& tasks, std::size_t e0_size = 10);

/// Loads and checksum-verifies a variant directory. Throws DatasetError on a
/// checksum mismatch or a missing task file.
std::vector<Task> load_variant(const std::filesystem::path& dir, DatasetManifest* manifest = nullptr);

/// Builtin reference tasks with outputs computed by the given executor.
std::vector<Task> builtin_dataset(Executor& exec, std::size_t e0_size = 10);

/// Builtin tasks whose source is the registry URI instead of host source.
std::vector<Task> builtin_uri_dataset(Executor& exec, std::size_t e0_size = 10);

struct ExampleIssue {
  enum class Kind { Mismatch, Nondeterministic, Timeout, LoadFailure, Unrenderable, ArityMismatch };
  Kind kind;
  std::size_t index;
  std::string detail;
};

const char* issue_name(ExampleIssue::Kind k);

struct ValidationReport {
  std::string task_id;
  std::vector<ExampleIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_task(const Task& t, Executor& exec, const ExecLimits& limits = {});

/// Renames the entry to "solution" through the executor transform and
/// re-validates. Throws DatasetError on any failure; never returns the
/// annotated source under the anonymized variant.
Task anonymize_task(const Task& t, Executor& exec, const ExecLimits& limits = {});

struct SuiteStats {
  std::size_t count = 0;
  std::size_t loc_min = 0;
  std::size_t loc_max = 0;
  double loc_mean = 0;
};

/// Lines of code per suite. Tasks whose source is a builtin URI are measured
/// on the registry's host source.
std::map<std::string, SuiteStats> dataset_stats(const std::vector<Task>& tasks);

std::string render_stats(const std::map<std::string, SuiteStats>& stats);

}  // namespace iosynth

#endif  // IOSYNTH_DATASET_HPP
