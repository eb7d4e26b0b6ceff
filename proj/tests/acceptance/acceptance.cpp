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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "../support/tasks.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/prompts.hpp"
#include "iosynth/runner.hpp"
#include "iosynth/text.hpp"

using namespace iosynth;
namespace fs = std::filesystem;

namespace {

struct Outcome_ {
  bool pass = false;
  std::string detail;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_num(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Case-study replay ----------------------------------------------------------------

Outcome_ case_study_replay() {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  const Task& t = testgen::task_by_id(testgen::anonymized_tasks(), kCaseStudyTask);
  const Script script = load_script(std::string(IOSYNTH_DATA_DIR) + "/casestudy.replay");
  ScriptedAgent agent("replay", script.responses);
  Session s(t, Budgets{30, 2}, 0, exec);
  run_agent_loop(agent, s);
  const SessionState& st = s.state();

  std::vector<std::string> got;
  static const std::regex re("^Result \\d+: .*$");
  bool arrow = false;
  for (const auto& turn : st.transcript) {
    if (turn.role != Role::Harness) continue;
    arrow |= turn.text.find("'Error' != 'No Error'") != std::string::npos;
    for (const auto& line : split_lines(turn.text)) {
      if (std::regex_match(line, re)) got.push_back(line);
    }
  }
  const auto want = split_lines(read_file(std::string(IOSYNTH_DATA_DIR) + "/casestudy_results.txt"));
  std::size_t matched = 0;
  for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) matched += got[i] == want[i];

  const bool cex_ok = st.counterexamples.size() == 1 && !st.counterexamples[0].truth.is_ok() &&
                      st.counterexamples[0].truth.error_kind() == "TypeError" &&
                      st.counterexamples[0].candidate.is_ok();
  const bool pass = st.status == SessionStatus::Succeeded && st.io_used == 20 && st.oracle_used == 2 &&
                    got.size() == 20 && want.size() == 20 && matched == 20 && cex_ok && arrow;
  return {pass, std::string("status=") + session_status_name(st.status) + " io=" + std::to_string(st.io_used) +
                    " oracle=" + std::to_string(st.oracle_used) + " results " + std::to_string(matched) + "/20" +
                    (cex_ok ? " cex=TypeError/ok" : " cex=wrong") + (arrow ? "" : " no-arrow")};
}

// Oracle soundness -------------------------------------------------------------------

Outcome_ oracle_soundness() {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  const auto& tasks = testgen::anonymized_tasks();
  int checks = 0;
  int false_fails = 0;
  std::string first;
  for (const auto& t : tasks) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      OracleConfig c;
      c.seed = seed;
      const OracleVerdict v = check({t.source, t.entry}, {t.source, t.entry}, CheckInputs{t.e0_inputs(), {}}, c, exec);
      ++checks;
      if (!v.passed()) {
        ++false_fails;
        if (first.empty()) first = " first=" + t.id;
      }
    }
  }
  return {tasks.size() >= 25 && false_fails == 0,
          std::to_string(tasks.size()) + " tasks x 5 seeds, " + std::to_string(false_fails) + "/" +
              std::to_string(checks) + " false fails" + first};
}

// Mutation detection -----------------------------------------------------------------

// Bounded grid of inputs shaped like the seeds, for the brute-force
// non-equivalence pre-check.
std::vector<Value> element_domain(const std::vector<ArgTuple>& seeds, std::size_t pos) {
  for (const auto& s : seeds) {
    const Value& v = s.args[pos];
    if (!v.is_sequence() || v.items().empty()) continue;
    switch (v.items()[0].kind()) {
      case Value::Kind::Str:
        return {Value::str("a"), Value::str("b"), Value::str("")};
      case Value::Kind::Float:
        return {Value::floating(0.5), Value::floating(-1.0), Value::floating(2.0)};
      case Value::Kind::List:
        return {Value::list({}), Value::list({Value::integer(1)}),
                Value::list({Value::integer(1), Value::integer(2)})};
      default:
        break;
    }
  }
  ValueList out;
  for (int i = -2; i <= 2; ++i) out.push_back(Value::integer(i));
  return out;
}

std::vector<Value> arg_domain(const std::vector<ArgTuple>& seeds, std::size_t pos) {
  const Value& v = seeds[0].args[pos];
  std::vector<Value> out;
  switch (v.kind()) {
    case Value::Kind::Int:
      for (int i = -3; i <= 12; ++i) out.push_back(Value::integer(i));
      break;
    case Value::Kind::Float:
      for (double d : {-1.5, -1.0, 0.0, 0.5, 1.0, 2.5}) out.push_back(Value::floating(d));
      break;
    case Value::Kind::Bool:
      out = {Value::boolean(false), Value::boolean(true)};
      break;
    case Value::Kind::Str: {
      const std::vector<std::string> alpha = {"a", "u", "z", "A", " "};
      std::vector<std::string> all = {""};
      for (std::size_t from = 0, len = 0; len < 3; ++len) {
        const std::size_t to = all.size();
        for (std::size_t i = from; i < to; ++i) {
          for (const auto& c : alpha) all.push_back(all[i] + c);
        }
        from = to;
      }
      for (const auto& s : all) out.push_back(Value::str(s));
      break;
    }
    case Value::Kind::List:
    case Value::Kind::Tuple: {
      const auto elems = element_domain(seeds, pos);
      std::vector<ValueList> all = {{}};
      for (std::size_t from = 0, len = 0; len < 3; ++len) {
        const std::size_t to = all.size();
        for (std::size_t i = from; i < to; ++i) {
          for (const auto& e : elems) {
            ValueList next = all[i];
            next.push_back(e);
            all.push_back(std::move(next));
          }
        }
        from = to;
      }
      for (auto& items : all) {
        out.push_back(v.is(Value::Kind::List) ? Value::list(std::move(items)) : Value::tuple(std::move(items)));
      }
      break;
    }
    default:
      break;
  }
  for (const auto& s : seeds) out.push_back(s.args[pos]);
  return out;
}

std::vector<ArgTuple> brute_grid(const std::vector<ArgTuple>& seeds) {
  const std::size_t arity = seeds[0].args.size();
  const std::size_t cap = arity <= 1 ? 100000 : arity == 2 ? 60 : 15;
  std::vector<std::vector<Value>> domains;
  for (std::size_t p = 0; p < arity; ++p) {
    auto d = arg_domain(seeds, p);
    if (d.size() > cap) {
      // Keep the seeds (at the end) and the smallest grid values.
      std::vector<Value> kept(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(cap - seeds.size()));
      kept.insert(kept.end(), d.end() - static_cast<std::ptrdiff_t>(seeds.size()), d.end());
      d = std::move(kept);
    }
    domains.push_back(std::move(d));
  }
  std::vector<ArgTuple> out = {ArgTuple{}};
  for (const auto& d : domains) {
    std::vector<ArgTuple> next;
    for (const auto& prefix : out) {
      for (const auto& v : d) {
        ArgTuple a = prefix;
        a.args.push_back(v);
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

Outcome_ mutation_detection() {
  ReferenceExecutor exec;
  ExecLimits lim;
  lim.timeout_ms = 200;
  const auto& tasks = builtin_tasks();
  int corpus = 0;
  int excluded = 0;
  int detected = 0;
  int reverified = 0;
  std::string missed;
  for (const auto* m : builtin_mutants()) {
    const auto t = std::find_if(tasks.begin(), tasks.end(), [&](const auto& x) { return x.name == m->base; });
    const std::string truth = "builtin:" + m->base;
    // Brute-force pre-check: the mutant must differ from the target somewhere
    // on the grid, or it is not admitted to the corpus.
    bool differs = false;
    for (const auto& x : brute_grid(t->e0)) {
      const CallResult a = exec.call(truth, "", x, lim);
      const CallResult b = exec.call(m->uri(), "", x, lim);
      if (a.ok() && b.ok() && !compare_outcomes(a.outcome, b.outcome)) {
        differs = true;
        break;
      }
    }
    if (!differs) {
      ++excluded;
      continue;
    }
    ++corpus;
    OracleConfig c;
    c.max_tests = 200;
    c.limits.timeout_ms = 200;
    const OracleVerdict v = check({truth, ""}, {m->uri(), ""}, CheckInputs{t->e0, {}}, c, exec);
    if (v.failed()) {
      ++detected;
      reverified += reverify({truth, ""}, {m->uri(), ""}, *v.counterexample, c, exec);
    } else {
      missed += " " + m->name;
    }
  }
  const double rate = corpus == 0 ? 0 : 100.0 * detected / corpus;
  return {corpus >= 40 && rate >= 90.0 && reverified == detected,
          std::to_string(corpus) + " mutants (" + std::to_string(excluded) + " not separated by the grid), detected " +
              std::to_string(detected) + " = " + format_num("%.1f%%", rate) + ", reverified " + std::to_string(reverified) +
              (missed.empty() ? "" : ", missed:" + missed)};
}

// Under-specification ----------------------------------------------------------------

Outcome_ memorizer_underspecification() {
  RunConfig c;
  c.agent = "memorizer";
  c.deterministic = true;
  c.parallelism = 4;
  const EvalResult r = run_eval(c);
  if (r.report.rows.size() != 1) return {false, "unexpected report shape"};
  const AggregateRow& row = r.report.rows[0];
  return {row.sessions >= 25 && row.pass1_rate >= 95.0 && row.pass2_rate <= 10.0,
          std::to_string(row.sessions) + " tasks, pass1 " + format_num("%.1f%%", row.pass1_rate) + ", pass2 " +
              format_num("%.1f%%", row.pass2_rate) + ", delta " + format_num("%.1f", row.delta)};
}

// Budget safety ----------------------------------------------------------------------

Outcome_ budget_safety() {
  ReferenceExecutor exec(ReferenceOptions{false, true});
  testgen::ActionGen gen(777);
  OracleConfig oc;
  oc.max_tests = 30;
  oc.limits.timeout_ms = 200;
  const auto& tasks = testgen::anonymized_tasks();
  int violations = 0;
  std::size_t steps = 0;
  std::string first;
  auto violate = [&](const std::string& what) {
    if (violations++ == 0) first = what;
  };
  for (int run = 0; run < 10000; ++run) {
    const Task& t = tasks[gen.g.below(tasks.size())];
    const Budgets b{static_cast<std::int64_t>(t.e0.size() + gen.g.below(25)),
                    static_cast<std::int64_t>(1 + gen.g.below(3))};
    Session s(t, b, static_cast<std::uint64_t>(run), exec, SessionOptions{oc, {}});
    for (int step = 0; step < 10 && !is_terminal(s.state().status); ++step, ++steps) {
      s.step(gen.next(t));
      if (s.state().io_used > b.b_io) violate(t.id + " ioUsed > bIo");
      if (s.state().oracle_used > b.b_oracle) violate(t.id + " oracleUsed > bOracle");
    }
    if (!is_terminal(s.state().status)) s.exhaust("sequence ended");
    const auto before = s.state().io_used;
    bool absorbed = false;
    try {
      s.step(QueryBatch{{t.e0[0].input}});
    } catch (const ActionAfterTermination&) {
      absorbed = true;
    }
    if (!absorbed || s.state().io_used != before) violate(t.id + " action after termination");
    const RunMetrics m = session_metrics(s.state());
    if (m.pass2 && !m.pass1) violate(t.id + " pass2 without pass1");
  }
  return {violations == 0, "10000 sequences, " + std::to_string(steps) + " steps, " + std::to_string(violations) +
                               " violations" + (first.empty() ? "" : " (" + first + ")")};
}

// Determinism ------------------------------------------------------------------------

Outcome_ determinism() {
  const fs::path base = fs::temp_directory_path() / ("iosynth_determinism_" + std::to_string(::getpid()));
  fs::remove_all(base);
  std::string out[2];
  std::string traces[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = base / std::to_string(i);
    const std::string cmd = std::string("\"") + IOSYNTH_CLI + "\" eval --agent eliminator:10 --seed 42 --deterministic" +
                            " --parallelism " + (i == 0 ? "1" : "4") + " --out \"" + dir.string() + "\" > /dev/null";
    codes[i] = std::system(cmd.c_str());
    out[i] = read_file(dir / "results.txt");
    traces[i] = read_file(dir / "traces.txt");
  }
  fs::remove_all(base);
  const bool pass = codes[0] == 0 && codes[1] == 0 && !out[0].empty() && out[0] == out[1] && traces[0] == traces[1];
  return {pass, "results " + std::to_string(out[0].size()) + " bytes, " + (out[0] == out[1] ? "identical" : "differ") +
                    ", traces " + (traces[0] == traces[1] ? "identical" : "differ")};
}

// Budget ablation --------------------------------------------------------------------

Outcome_ budget_ablation() {
  const std::vector<std::string> family = {"eliminator:0", "eliminator:5", "eliminator:10", "eliminator"};
  auto rate = [&](Budgets b) {
    double sum = 0;
    for (const auto& agent : family) {
      RunConfig c;
      c.agent = agent;
      c.budgets = b;
      c.deterministic = true;
      c.parallelism = 4;
      c.seed = 11;
      sum += run_eval(c).report.rows.at(0).success_rate;
    }
    return sum / static_cast<double>(family.size());
  };
  const double io10 = rate({10, 2}), io20 = rate({20, 2}), io30 = rate({30, 2});
  const double o1 = rate({30, 1}), o2 = io30, o3 = rate({30, 3});
  const bool pass = io10 <= io20 && io20 <= io30 && o1 <= o2 && o2 <= o3;
  return {pass, "bIo 10/20/30: " + format_num("%.1f", io10) + "/" + format_num("%.1f", io20) + "/" + format_num("%.1f", io30) +
                    "; bOracle 1/2/3: " + format_num("%.1f", o1) + "/" + format_num("%.1f", o2) + "/" + format_num("%.1f", o3)};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome_()> run;
  };
  const std::vector<Criterion> criteria = {
      {"case-study-replay", 5, case_study_replay},
      {"oracle-soundness", 120, oracle_soundness},
      {"mutation-detection", 300, mutation_detection},
      {"memorizer-underspecification", 120, memorizer_underspecification},
      {"budget-safety", 60, budget_safety},
      {"determinism", 120, determinism},
      {"budget-ablation", 120, budget_ablation},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.pass && secs <= c.limit_s;
    failed += !ok;
    std::cout << (ok ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << format_num("%.2f", secs) << " s, limit "
              << c.limit_s << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
