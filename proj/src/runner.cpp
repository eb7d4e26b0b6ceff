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

#include "iosynth/runner.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "iosynth/dataset.hpp"
#include "iosynth/reference_executor.hpp"
#include "iosynth/subprocess.hpp"

namespace iosynth {

namespace fs = std::filesystem;

namespace {

std::int64_t wall_now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

void RunConfig::validate() const {
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (budgets.b_oracle < 1) throw std::invalid_argument("bOracle must be at least 1");
  if (budgets.b_io < 0) throw std::invalid_argument("bIo must be non-negative");
  const std::string kind = split_spec(agent).first;
  static const std::set<std::string> kinds = {"memorizer", "scripted", "eliminator", "truth", "chat"};
  if (!kinds.count(kind)) throw std::invalid_argument("unknown agent '" + agent + "'");
  if (kind == "chat" && (chat.base_url.empty() || chat.model.empty())) {
    throw std::invalid_argument("chat agent needs an endpoint URL and a model");
  }
}

ExecutorFactory executor_factory(const std::string& worker_command) {
  if (worker_command.empty()) {
    return [] { return std::make_unique<ReferenceExecutor>(ReferenceOptions{false, true}); };
  }
  std::vector<std::string> argv;
  std::istringstream in(worker_command);
  for (std::string word; in >> word;) argv.push_back(word);
  return [argv] {
    SubprocessOptions o;
    o.command = argv;
    return std::make_unique<SubprocessExecutor>(o);
  };
}

std::vector<Task> load_dataset(const std::string& dataset, Variant variant, Executor& exec) {
  if (dataset == "builtin") {
    std::vector<Task> tasks = builtin_dataset(exec);
    if (variant == Variant::Annotated) return tasks;
    for (auto& t : tasks) t = anonymize_task(t, exec);
    return tasks;
  }
  return load_variant(fs::path(dataset) / variant_name(variant));
}

std::unique_ptr<Agent> make_agent(const RunConfig& config, const Task& task, std::uint64_t session_seed) {
  const auto [kind, arg] = split_spec(config.agent);
  if (kind == "memorizer") return std::make_unique<MemorizerAgent>();
  if (kind == "truth") return std::make_unique<FixedSourceAgent>("truth", task.source);
  if (kind == "scripted") {
    fs::path path = arg;
    if (!fs::exists(path)) path = config.script_dir / (arg + ".replay");
    Script s = load_script(path);
    if (!s.task.empty() && s.task != task.id) s.responses.clear();
    return std::make_unique<ScriptedAgent>("scripted:" + arg, std::move(s.responses));
  }
  if (kind == "eliminator") {
    const std::int64_t patience = arg.empty() ? std::numeric_limits<std::int64_t>::max() : std::stoll(arg);
    // The agent reasons with its own sandbox, never the session's connection.
    struct Owned : EliminatorAgent {
      Owned(std::unique_ptr<Executor> e, const Task& t, std::uint64_t seed, std::int64_t patience, std::string label)
          : EliminatorAgent(builtin_hypotheses(t), eliminator_pool(t, seed, 64), patience, 5, *e),
            exec(std::move(e)),
            label(std::move(label)) {}
      std::string name() const override { return label; }
      std::unique_ptr<Executor> exec;
      std::string label;
    };
    auto exec = std::make_unique<ReferenceExecutor>();
    return std::make_unique<Owned>(std::move(exec), task, session_seed, patience, config.agent);
  }
  if (kind == "chat") {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<HttpChatTransport>> transports;
    std::shared_ptr<HttpChatTransport> transport;
    {
      std::lock_guard lock(mu);
      auto& slot = transports[config.chat.base_url];
      if (!slot) slot = std::make_shared<HttpChatTransport>(config.chat);
      transport = slot;
    }
    return std::make_unique<ChatAgent>(transport, config.chat);
  }
  throw std::invalid_argument("unknown agent '" + config.agent + "'");
}

EvalResult run_eval(const RunConfig& config) {
  config.validate();
  const ExecutorFactory factory = executor_factory(config.worker_command);
  auto exec = factory();
  std::vector<Task> tasks = load_dataset(config.dataset, config.variant, *exec);
  if (!config.tasks.empty()) {
    const std::set<std::string> keep(config.tasks.begin(), config.tasks.end());
    std::erase_if(tasks, [&](const Task& t) { return !keep.count(t.id); });
  }
  std::vector<Task> valid;
  for (auto& t : tasks) {
    const ValidationReport rep = validate_task(t, *exec, config.oracle.limits);
    if (rep.ok()) {
      valid.push_back(std::move(t));
    } else {
      spdlog::warn("excluding task: {}", rep.summary());
    }
  }
  exec.reset();
  return run_eval(config, valid, factory);
}

EvalResult run_eval(const RunConfig& config, const std::vector<Task>& tasks, const ExecutorFactory& factory) {
  config.validate();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.parallelism),
                                                    std::max<std::size_t>(tasks.size(), 1));
  ExecutorPool pool(factory, workers);
  std::vector<RunMetrics> metrics(tasks.size());
  std::vector<TraceRecord> traces(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& task = tasks[i];
        const std::uint64_t seed = config.seed + i;
        auto lease = pool.acquire();
        SessionOptions opts;
        opts.oracle = config.oracle;
        if (!config.deterministic) opts.clock = wall_now_ms;
        Session session(task, config.budgets, seed, *lease, opts);
        auto agent = make_agent(config, task, seed);
        const auto t0 = std::chrono::steady_clock::now();
        try {
          run_agent_loop(*agent, session, LoopOptions{config.teacher, 0});
        } catch (const ExecutorUnavailable& e) {
          spdlog::error("{}: executor unavailable: {}", task.id, e.what());
        } catch (const TruthLoadFailure& e) {
          spdlog::error("{}: target failed to load: {}", task.id, e.what());
        }
        RunMetrics m = session_metrics(session.state());
        m.agent = agent->name();
        m.wall_ms = config.deterministic
                        ? 0
                        : std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                              .count();
        metrics[i] = m;
        traces[i] = trace_from_session(task.id + "#" + std::to_string(seed), session.state());
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  EvalResult result{std::move(metrics), std::move(traces), {}};
  result.report = aggregate(result.metrics, config.strict);

  if (!config.out_dir.empty()) {
    fs::create_directories(config.out_dir);
    if (config.teacher && !config.chat.api_key_env.empty()) {
      if (const char* secret = std::getenv(config.chat.api_key_env.c_str())) {
        for (const auto& r : result.traces) check_no_secrets(r, {secret});
      }
    }
    {
      LineSink sink(config.out_dir / "results.txt");
      for (const auto& m : result.metrics) sink.write(encode(metrics_to_value(m)));
    }
    export_traces(result.traces, config.out_dir / "traces.txt");
    std::ofstream(config.out_dir / "summary.txt", std::ios::binary | std::ios::trunc)
        << render_summary(result.report);
  }
  return result;
}

std::string results_text(const std::vector<RunMetrics>& metrics) {
  std::string out;
  for (const auto& m : metrics) out += encode(metrics_to_value(m)) + "\n";
  return out;
}

}  // namespace iosynth
