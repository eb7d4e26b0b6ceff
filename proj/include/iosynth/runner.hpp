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

// Batch evaluation: datasets x agents x budgets, with results, traces and a
// summary written under one output directory.

#ifndef IOSYNTH_RUNNER_HPP
#define IOSYNTH_RUNNER_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "iosynth/agents.hpp"
#include "iosynth/reporting.hpp"
#include "iosynth/session.hpp"

namespace iosynth {

struct RunConfig {
  std::string dataset = "builtin";  // "builtin" or a dataset directory
  Variant variant = Variant::Anonymized;
  std::string agent = "memorizer";
  Budgets budgets;
  OracleConfig oracle;
  int parallelism = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;  // empty: nothing is written
  bool teacher = false;
  bool deterministic = false;
  bool strict = false;
  std::vector<std::string> tasks;  // empty: all
  ChatEndpointConfig chat;
  std::string worker_command;  // empty: in-process reference executor
  std::filesystem::path script_dir;

  /// Throws std::invalid_argument on a bad combination.
  void validate() const;
};

using ExecutorFactory = std::function<std::unique_ptr<Executor>()>;

ExecutorFactory executor_factory(const std::string& worker_command);

/// Loads tasks for a variant. For a directory dataset, reads
/// <dataset>/<variant>; the builtin set is anonymized on the fly.
std::vector<Task> load_dataset(const std::string& dataset, Variant variant, Executor& exec);

/// Builds an agent from its spec for one session.
std::unique_ptr<Agent> make_agent(const RunConfig& config, const Task& task, std::uint64_t session_seed);

struct EvalResult {
  std::vector<RunMetrics> metrics;
  std::vector<TraceRecord> traces;
  AggregateReport report;
};

/// Runs one session per task. Results are ordered by task, independent of
/// parallelism.
EvalResult run_eval(const RunConfig& config);
EvalResult run_eval(const RunConfig& config, const std::vector<Task>& tasks, const ExecutorFactory& factory);

std::string results_text(const std::vector<RunMetrics>& metrics);

}  // namespace iosynth

#endif  // IOSYNTH_RUNNER_HPP
