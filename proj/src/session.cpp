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

#include "iosynth/session.hpp"

#include <algorithm>
#include <array>

#include "iosynth/text.hpp"

namespace iosynth {

namespace {

constexpr std::array<const char*, 5> kStatusNames = {"active", "succeeded", "failedBudget", "failedFinal",
                                                     "aborted"};
constexpr std::array<const char*, 3> kRoleNames = {"system", "harness", "agent"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<const char*, N>& names, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (name == names[i]) return static_cast<E>(i);
  }
  return std::nullopt;
}

Outcome from_call(const CallResult& r) {
  switch (r.status) {
    case ExecStatus::Ok:
      return r.outcome;
    case ExecStatus::Timeout:
      return Outcome::err("TimeoutError", "exceeded the time limit");
    case ExecStatus::Error:
      return Outcome::err("OutputLimitExceeded", r.diagnostic);
    case ExecStatus::ProtocolError:
      break;
  }
  return Outcome::err("LoadError", r.diagnostic);
}

}  // namespace

const char* session_status_name(SessionStatus s) { return kStatusNames[static_cast<std::size_t>(s)]; }

std::optional<SessionStatus> session_status_from_name(std::string_view name) {
  return lookup<SessionStatus>(kStatusNames, name);
}

const char* role_name(Role r) { return kRoleNames[static_cast<std::size_t>(r)]; }

std::optional<Role> role_from_name(std::string_view name) { return lookup<Role>(kRoleNames, name); }

void Budgets::validate(std::size_t e0_size) const {
  if (b_io < static_cast<std::int64_t>(e0_size)) {
    throw std::invalid_argument("bIo must be at least the number of initial examples (" + std::to_string(e0_size) +
                                ")");
  }
  if (b_oracle < 1) throw std::invalid_argument("bOracle must be at least 1");
}

Session::Session(const Task& task, Budgets budgets, std::uint64_t seed, Executor& exec, SessionOptions options)
    : exec_(exec), options_(std::move(options)) {
  budgets.validate(task.e0.size());
  options_.oracle.validate(task.e0.size());
  state_.task = &task;
  state_.budgets = budgets;
  state_.observed = task.e0;
  state_.io_used = static_cast<std::int64_t>(task.e0.size());
  state_.rng_seed = seed;
}

std::int64_t Session::now() const { return options_.clock ? options_.clock() : 0; }

void Session::record(Role role, std::string text, std::string teacher_prefix) {
  state_.transcript.push_back(TranscriptTurn{role, now(), std::move(text), std::move(teacher_prefix)});
}

Observation Session::step(const Action& action) {
  if (is_terminal(state_.status)) throw ActionAfterTermination();
  try {
    if (const auto* q = std::get_if<QueryBatch>(&action)) return query(*q);
    return submit(std::get<SubmitCandidate>(action));
  } catch (const ExecutorUnavailable& e) {
    abort(std::string("executor unavailable: ") + e.what());
    throw;
  } catch (const TruthLoadFailure& e) {
    abort(std::string("truth failed to load: ") + e.what());
    throw;
  }
}

Observation Session::note_parse_failure(const std::string& diagnostic) {
  if (is_terminal(state_.status)) throw ActionAfterTermination();
  return invalid(InvalidAction::Kind::ParseFailure, diagnostic);
}

void Session::exhaust(const std::string& reason) {
  if (is_terminal(state_.status)) return;
  state_.status = SessionStatus::FailedBudget;
  state_.abort_reason = reason;
}

void Session::abort(const std::string& reason) {
  if (is_terminal(state_.status)) return;
  state_.status = SessionStatus::Aborted;
  state_.abort_reason = reason;
}

Observation Session::invalid(InvalidAction::Kind kind, std::string diagnostic) {
  const int n = ++state_.consecutive_invalid;
  if (n >= kMaxConsecutiveInvalid) {
    abort(std::to_string(n) + " consecutive invalid actions");
    return SessionAborted{state_.abort_reason};
  }
  return InvalidAction{kind, std::move(diagnostic), n};
}

Outcome Session::run_truth(const ArgTuple& input) {
  const Task& t = *state_.task;
  const CallResult r = exec_.call(t.source, t.entry, input, options_.oracle.limits);
  if (r.status == ExecStatus::ProtocolError) throw TruthLoadFailure(r.diagnostic);
  return from_call(r);
}

Observation Session::query(const QueryBatch& q) {
  if (q.inputs.empty()) return invalid(InvalidAction::Kind::EmptyBatch, "query batch is empty");
  state_.consecutive_invalid = 0;
  if (state_.remaining_io() <= 0) return BudgetNotice{BudgetNotice::Kind::IoExhausted};
  const auto take = std::min<std::size_t>(q.inputs.size(), static_cast<std::size_t>(state_.remaining_io()));
  Examples obs;
  obs.first_index = state_.observed.size();
  obs.dropped = q.inputs.size() - take;
  for (std::size_t i = 0; i < take; ++i) {
    IOExample ex{q.inputs[i], run_truth(q.inputs[i])};
    state_.observed.push_back(ex);
    ++state_.io_used;
    obs.examples.push_back(std::move(ex));
  }
  return obs;
}

Observation Session::submit(const SubmitCandidate& c) {
  const Task& t = *state_.task;
  if (state_.remaining_oracle() <= 0) return BudgetNotice{BudgetNotice::Kind::OracleExhausted};
  if (c.entry != t.entry) {
    return invalid(InvalidAction::Kind::MalformedCandidate,
                   "candidate must define '" + t.entry + "', got '" + c.entry + "'");
  }
  const FunctionRef truth{t.source, t.entry};
  const FunctionRef cand{c.source, c.entry};

  CheckInputs inputs;
  for (const auto& ex : state_.observed) inputs.corpus.push_back(ex.input);
  for (const auto& cex : state_.counterexamples) inputs.prior_counterexamples.push_back(cex.input);

  OracleConfig config = options_.oracle;
  config.seed = state_.rng_seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(state_.oracle_used) +
                options_.oracle.seed;
  const OracleVerdict v = check(truth, cand, inputs, config, exec_);
  if (v.kind == OracleVerdict::Kind::CandidateLoadFailure) {
    return invalid(InvalidAction::Kind::MalformedCandidate, v.diagnostic);
  }
  state_.consecutive_invalid = 0;

  if (!state_.pass1) {
    bool agrees = true;
    for (const auto& ex : t.e0) {
      const CallResult r = exec_.call(c.source, c.entry, ex.input, config.limits);
      if (r.status == ExecStatus::ProtocolError || !exec_.compare(from_call(r), ex.output)) {
        agrees = false;
        break;
      }
    }
    state_.pass1 = agrees;
    state_.pass2 = v.passed();
  }

  ++state_.oracle_used;
  if (v.passed()) {
    state_.status = SessionStatus::Succeeded;
    return OraclePass{};
  }
  const Counterexample& cex = *v.counterexample;
  state_.last_counterexample = cex;
  state_.counterexamples.push_back(cex);
  if (state_.remaining_oracle() > 0) return OracleFail{cex, state_.remaining_oracle()};
  state_.status = SessionStatus::FailedFinal;
  return FinalFail{cex};
}

RunMetrics session_metrics(const SessionState& s) {
  if (!is_terminal(s.status)) throw SessionError("session is still active");
  RunMetrics m;
  m.task_id = s.task->id;
  m.variant = s.task->variant;
  m.success = s.status == SessionStatus::Succeeded;
  m.io_used = s.io_used;
  m.oracle_used = s.oracle_used;
  m.seed = s.rng_seed;
  m.pass1 = s.pass1.value_or(false);
  m.pass2 = s.pass2.value_or(false);
  m.status = s.status;
  return m;
}

}  // namespace iosynth
