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

// iosynth: evaluation, oracle checks, dataset tools and a play REPL.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "iosynth/builtins.hpp"
#include "iosynth/dataset.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/prompts.hpp"
#include "iosynth/runner.hpp"
#include "iosynth/text.hpp"

#ifndef IOSYNTH_DEFAULT_SCRIPT_DIR
#define IOSYNTH_DEFAULT_SCRIPT_DIR "."
#endif

using namespace iosynth;
namespace fs = std::filesystem;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kError = 2;
constexpr int kInfra = 3;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A builtin URI is used as is; anything else is a file holding source.
std::string load_source(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) return arg;
  return read_file(arg);
}

std::string first_def(const std::string& source) {
  static const std::regex re(R"((?:^|\n)def\s+([A-Za-z_]\w*)\s*\()");
  std::smatch m;
  if (std::regex_search(source, m, re)) return m[1];
  return {};
}

Variant parse_variant(const std::string& s) {
  const auto v = variant_from_name(s);
  if (!v) throw CLI::ValidationError("--variant", "expected annotated or anonymized");
  return *v;
}

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<Strategy> out;
  for (const auto& n : names) {
    const auto s = strategy_from_name(n);
    if (!s) throw CLI::ValidationError("--strategies", "unknown strategy " + n);
    out.push_back(*s);
  }
  return out;
}

std::vector<Task> dataset_tasks(const std::string& dataset, Variant variant, Executor& exec) {
  return load_dataset(dataset, variant, exec);
}

// eval -----------------------------------------------------------------------

struct EvalArgs {
  RunConfig config;
  std::string variant = "anonymized";
  std::vector<std::string> strategies;
};

int cmd_eval(EvalArgs& a) {
  RunConfig& c = a.config;
  c.variant = parse_variant(a.variant);
  if (!a.strategies.empty()) c.oracle.strategies = parse_strategies(a.strategies);
  try {
    c.validate();
    c.budgets.validate(10);
    c.oracle.validate(10);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kError;
  }
  EvalResult r;
  try {
    r = run_eval(c);
  } catch (const std::exception& e) {
    std::cerr << "evaluation failed: " << e.what() << "\n";
    return kInfra;
  }
  for (const auto& m : r.metrics) {
    std::cout << m.task_id << " " << session_status_name(m.status) << " io=" << m.io_used
              << " oracle=" << m.oracle_used << (m.pass1 ? " pass1" : "") << (m.pass2 ? " pass2" : "") << "\n";
  }
  std::cout << "\n" << render_summary(r.report);
  return kOk;
}

// oracle -----------------------------------------------------------------------

struct OracleArgs {
  std::string truth;
  std::string candidate;
  std::string entry;
  std::string candidate_entry;
  std::string seeds;
  std::string task;
  std::string worker;
  int max_tests = 200;
  std::uint64_t seed = 0;
  bool tolerance = false;
  std::int64_t timeout_ms = 2000;
};

int cmd_oracle(const OracleArgs& a) {
  try {
    const std::string truth_src = load_source(a.truth);
    const std::string cand_src = load_source(a.candidate);
    const std::string truth_entry = a.entry.empty() ? first_def(truth_src) : a.entry;
    std::string cand_entry = a.candidate_entry.empty() ? first_def(cand_src) : a.candidate_entry;
    if (cand_entry.empty()) cand_entry = truth_entry;

    CheckInputs in;
    if (!a.seeds.empty()) {
      for (const auto& line : split_lines(read_file(a.seeds))) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '#') in.corpus.push_back(parse_args(t));
      }
    } else if (!a.task.empty()) {
      const auto& all = builtin_tasks();
      const auto it = std::find_if(all.begin(), all.end(), [&](const auto& t) { return t.name == a.task; });
      if (it == all.end()) throw std::invalid_argument("unknown builtin task " + a.task);
      in.corpus = it->e0;
    } else {
      throw std::invalid_argument("seed inputs are required (--seeds FILE or --task NAME)");
    }

    OracleConfig cfg;
    cfg.max_tests = a.max_tests;
    cfg.seed = a.seed;
    cfg.float_mode.tolerance = a.tolerance;
    cfg.limits.timeout_ms = a.timeout_ms;
    cfg.validate(in.corpus.size());

    auto exec = executor_factory(a.worker)();
    const OracleVerdict v = check({truth_src, truth_entry}, {cand_src, cand_entry}, in, cfg, *exec);
    if (v.kind == OracleVerdict::Kind::CandidateLoadFailure) {
      std::cout << "Error: candidate failed to load\n" << v.diagnostic << "\n";
      return kError;
    }
    if (v.passed()) {
      std::cout << "Pass (" << v.tests_run << " tests";
      if (v.truth_timeouts > 0) std::cout << ", " << v.truth_timeouts << " skipped on truth timeout";
      std::cout << ")\n";
      return kOk;
    }
    const Counterexample& cex = *v.counterexample;
    const auto [t, c] = counterexample_summaries(cex);
    std::cout << "Fail\nFailed input: " << render_args(cex.input) << "\n"
              << "Ground Truth Function != Output From Generated Code:\n'" << t << "' != '" << c << "'\n"
              << "strategy: " << strategy_name(v.attribution) << ", tests: " << v.tests_run << "\n";
    return kFail;
  } catch (const TruthLoadFailure& e) {
    std::cout << "Error: truth failed to load\n" << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cout << "Error: " << e.what() << "\n";
  }
  return kError;
}

// dataset ------------------------------------------------------------------------

struct DatasetArgs {
  std::string path = "builtin";
  std::string variant = "annotated";
  std::size_t e0 = 10;
  std::string worker;
};

int cmd_dataset_init(const DatasetArgs& a) {
  auto exec = executor_factory(a.worker)();
  const auto m = write_variant(fs::path(a.path) / "annotated", "builtin", builtin_dataset(*exec, a.e0), a.e0);
  std::cout << m.tasks.size() << " tasks, checksum " << m.checksum << "\n";
  return kOk;
}

int cmd_dataset_anonymize(const DatasetArgs& a) {
  auto exec = executor_factory(a.worker)();
  std::vector<Task> in = dataset_tasks(a.path, Variant::Annotated, *exec);
  std::vector<Task> out;
  int failed = 0;
  for (const auto& t : in) {
    try {
      out.push_back(anonymize_task(t, *exec));
    } catch (const DatasetError& e) {
      std::cout << "FAIL " << t.id << ": " << e.what() << "\n";
      ++failed;
    }
  }
  if (failed > 0) return kFail;
  if (a.path == "builtin") {
    std::cout << out.size() << " tasks anonymized (builtin set is not written)\n";
    return kOk;
  }
  const auto m = write_variant(fs::path(a.path) / "anonymized", "anonymized", out, a.e0);
  std::cout << m.tasks.size() << " tasks, checksum " << m.checksum << "\n";
  return kOk;
}

int cmd_dataset_validate(const DatasetArgs& a) {
  auto exec = executor_factory(a.worker)();
  std::vector<Task> tasks;
  try {
    tasks = dataset_tasks(a.path, parse_variant(a.variant), *exec);
  } catch (const std::exception& e) {
    std::cout << "FAIL " << e.what() << "\n";
    return kFail;
  }
  int bad = 0;
  for (const auto& t : tasks) {
    const ValidationReport r = validate_task(t, *exec);
    if (!r.ok()) {
      ++bad;
      std::cout << "FAIL " << r.summary() << "\n";
    }
  }
  std::cout << tasks.size() - static_cast<std::size_t>(bad) << "/" << tasks.size() << " tasks valid\n";
  return bad == 0 ? kOk : kFail;
}

int cmd_dataset_stats(const DatasetArgs& a) {
  auto exec = executor_factory(a.worker)();
  std::cout << render_stats(dataset_stats(dataset_tasks(a.path, parse_variant(a.variant), *exec)));
  return kOk;
}

// play ---------------------------------------------------------------------------

struct PlayArgs {
  std::string task;
  std::string dataset = "builtin";
  std::string variant = "anonymized";
  Budgets budgets;
  std::uint64_t seed = 0;
  std::string out;
  std::string worker;
};

void print_counters(const SessionState& st) {
  std::cout << "[invocations left: " << std::max<std::int64_t>(st.remaining_io(), 0)
            << ", debugging checks left: " << st.debugging_checks_left()
            << ", implementations left: " << st.remaining_oracle() << "]\n";
}

int cmd_play(const PlayArgs& a, std::istream& in) {
  auto exec = executor_factory(a.worker)();
  const auto tasks = dataset_tasks(a.dataset, parse_variant(a.variant), *exec);
  const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const Task& t) { return t.id == a.task; });
  if (it == tasks.end()) {
    std::cerr << "unknown task " << a.task << "\n";
    return kError;
  }
  const Task& task = *it;
  if (const auto rep = validate_task(task, *exec); !rep.ok()) {
    std::cerr << "task is invalid: " << rep.summary() << "\n";
    return kError;
  }
  a.budgets.validate(task.e0.size());
  Session session(task, a.budgets, a.seed, *exec);
  const SessionState& st = session.state();
  const std::string intro = render_initial_prompt(task, a.budgets);
  session.record(Role::Harness, intro);
  std::cout << intro << "\nCommands: query <args> | submit (end with a line '.') | status | quit\n";
  print_counters(st);

  std::string line;
  while (!is_terminal(st.status) && (std::cout << "> " << std::flush, std::getline(in, line))) {
    const std::string cmd = trim(line);
    if (cmd.empty()) continue;
    std::optional<Action> action;
    if (cmd == "quit" || cmd == "exit") {
      session.abort("player quit");
      break;
    } else if (cmd == "status") {
      print_counters(st);
      continue;
    } else if (cmd.rfind("query", 0) == 0) {
      if (st.remaining_io() <= 0) {
        std::cout << "query is disabled: no invocations left\n";
        continue;
      }
      try {
        action = QueryBatch{{parse_args(trim(cmd.substr(5)))}};
      } catch (const std::exception& e) {
        std::cout << "cannot parse arguments: " << e.what() << "\n";
        continue;
      }
    } else if (cmd == "submit") {
      std::string source;
      while (std::getline(in, line) && line != ".") source += line + "\n";
      action = SubmitCandidate{source, task.entry};
    } else {
      std::cout << "unknown command\n";
      continue;
    }
    session.record(Role::Agent, line.empty() ? cmd : cmd + "\n");
    const Observation obs = session.step(*action);
    const std::string feedback = render_feedback_prompt(obs, st);
    session.record(Role::Harness, feedback);
    std::cout << feedback;
    if (!is_terminal(st.status)) print_counters(st);
  }
  if (!is_terminal(st.status)) session.abort("input ended");
  const RunMetrics m = session_metrics(st);
  std::cout << "\nsession " << session_status_name(m.status) << ": io=" << m.io_used << " oracle=" << m.oracle_used
            << "\n";
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    export_traces({trace_from_session(task.id + "#" + std::to_string(a.seed), st)}, fs::path(a.out) / "transcript.txt");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("iosynth");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);

  CLI::App app{"Interactive evaluation harness for programming-by-example agents"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values");
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  EvalArgs ev;
  ev.config.script_dir = IOSYNTH_DEFAULT_SCRIPT_DIR;
  std::string script_dir = ev.config.script_dir.string();
  std::string out_dir;
  auto* eval = app.add_subcommand("eval", "Run one session per task and write results");
  eval->add_option("--dataset", ev.config.dataset, "builtin or a dataset directory")->capture_default_str();
  eval->add_option("--variant", ev.variant, "annotated or anonymized")->capture_default_str();
  eval->add_option("--agent", ev.config.agent,
                   "memorizer | truth | eliminator[:patience] | scripted:<name|path> | chat")
      ->capture_default_str();
  eval->add_option("--b-io", ev.config.budgets.b_io, "Input-output budget including initial examples")
      ->capture_default_str();
  eval->add_option("--b-oracle", ev.config.budgets.b_oracle, "Oracle call budget")->capture_default_str();
  eval->add_option("--max-tests", ev.config.oracle.max_tests, "Inputs per oracle check")->capture_default_str();
  eval->add_option("--strategies", ev.strategies, "Oracle strategy order")->delimiter(',');
  eval->add_option("--timeout-ms", ev.config.oracle.limits.timeout_ms, "Per-call timeout")->capture_default_str();
  eval->add_flag("--float-tolerance", ev.config.oracle.float_mode.tolerance, "Compare floats with tolerance");
  eval->add_option("--seed", ev.config.seed, "Base seed")->capture_default_str();
  eval->add_flag("--deterministic", ev.config.deterministic, "Zero timestamps and wall times");
  eval->add_flag("--strict", ev.config.strict, "Drop aborted sessions from rates");
  eval->add_option("--parallelism", ev.config.parallelism, "Concurrent sessions")->capture_default_str();
  eval->add_option("--out", out_dir, "Output directory");
  eval->add_flag("--teacher", ev.config.teacher, "Prefix turns with teacher context");
  eval->add_option("--worker", ev.config.worker_command, "Worker command; default is the in-process executor");
  eval->add_option("--task", ev.config.tasks, "Restrict to task ids");
  eval->add_option("--script-dir", script_dir, "Directory of <name>.replay scripts")->capture_default_str();
  eval->add_option("--chat-url", ev.config.chat.base_url, "Chat-completions base URL");
  eval->add_option("--chat-model", ev.config.chat.model, "Model name");
  eval->add_option("--chat-key-env", ev.config.chat.api_key_env, "Environment variable holding the API key");
  eval->add_option("--chat-temperature", ev.config.chat.temperature, "Sampling temperature");
  eval->add_option("--chat-max-tokens", ev.config.chat.max_turn_tokens, "Per-turn token cap");
  eval->add_option("--chat-concurrency", ev.config.chat.max_concurrent, "Concurrent requests per endpoint");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Differential check of a candidate against a truth function");
  oracle->add_option("truth", oa.truth, "Truth source file or builtin:<name>")->required();
  oracle->add_option("candidate", oa.candidate, "Candidate source file or builtin:<name>")->required();
  oracle->add_option("--entry", oa.entry, "Truth entry point (default: first def)");
  oracle->add_option("--candidate-entry", oa.candidate_entry, "Candidate entry point (default: first def)");
  oracle->add_option("--seeds", oa.seeds, "File with one argument list per line");
  oracle->add_option("--task", oa.task, "Take seeds from a builtin task");
  oracle->add_option("--max-tests", oa.max_tests)->capture_default_str();
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--timeout-ms", oa.timeout_ms)->capture_default_str();
  oracle->add_flag("--float-tolerance", oa.tolerance);
  oracle->add_option("--worker", oa.worker);

  DatasetArgs da;
  auto* dataset = app.add_subcommand("dataset", "Dataset tools");
  dataset->require_subcommand(1);
  auto add_common = [&](CLI::App* sub, bool with_variant) {
    sub->add_option("path", da.path, "builtin or a dataset directory")->capture_default_str();
    if (with_variant) sub->add_option("--variant", da.variant)->capture_default_str();
    sub->add_option("--worker", da.worker);
  };
  auto* d_init = dataset->add_subcommand("init", "Write the builtin tasks as <path>/annotated");
  add_common(d_init, false);
  d_init->add_option("--e0", da.e0, "Initial examples per task")->capture_default_str();
  auto* d_anon = dataset->add_subcommand("anonymize", "Write <path>/anonymized from <path>/annotated");
  add_common(d_anon, false);
  auto* d_val = dataset->add_subcommand("validate", "Re-execute every initial example");
  add_common(d_val, true);
  auto* d_stats = dataset->add_subcommand("stats", "Function counts and lines of code per suite");
  add_common(d_stats, true);

  PlayArgs pa;
  auto* play = app.add_subcommand("play", "Play the agent role in a terminal session");
  play->add_option("task", pa.task, "Task id")->required();
  play->add_option("--dataset", pa.dataset)->capture_default_str();
  play->add_option("--variant", pa.variant)->capture_default_str();
  play->add_option("--b-io", pa.budgets.b_io)->capture_default_str();
  play->add_option("--b-oracle", pa.budgets.b_oracle)->capture_default_str();
  play->add_option("--seed", pa.seed)->capture_default_str();
  play->add_option("--out", pa.out, "Directory for the saved transcript");
  play->add_option("--worker", pa.worker);

  CLI11_PARSE(app, argc, argv);
  if (verbose) spdlog::set_level(spdlog::level::info);

  try {
    if (*eval) {
      ev.config.out_dir = out_dir;
      ev.config.script_dir = script_dir;
      return cmd_eval(ev);
    }
    if (*oracle) return cmd_oracle(oa);
    if (*d_init) return cmd_dataset_init(da);
    if (*d_anon) return cmd_dataset_anonymize(da);
    if (*d_val) return cmd_dataset_validate(da);
    if (*d_stats) return cmd_dataset_stats(da);
    if (*play) return cmd_play(pa, std::cin);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfra;
  }
  return kOk;
}
