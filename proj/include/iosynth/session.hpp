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

// Interactive synthesis session: budget accounting, query execution,
// candidate submission and termination.

#ifndef IOSYNTH_SESSION_HPP
#define IOSYNTH_SESSION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iosynth/executor.hpp"
#include "iosynth/oracle.hpp"
#include "iosynth/task.hpp"

namespace iosynth {

struct Budgets {
  std::int64_t b_io = 30;
  std::int64_t b_oracle = 2;

  /// Throws std::invalid_argument unless b_io >= e0_size and b_oracle >= 1.
  void validate(std::size_t e0_size) const;
};

enum class SessionStatus { Active, Succeeded, FailedBudget, FailedFinal, Aborted };

const char* session_status_name(SessionStatus s);
std::optional<SessionStatus> session_status_from_name(std::string_view name);
inline bool is_terminal(SessionStatus s) { return s != SessionStatus::Active; }

struct QueryBatch {
  std::vector<ArgTuple> inputs;
};

struct SubmitCandidate {
  std::string source;
  std::string entry;
};

using Action = std::variant<QueryBatch, SubmitCandidate>;

// Observations ---------------------------------------------------------------

struct Examples {
  std::vector<IOExample> examples;
  std::size_t first_index = 0;  // zero-based position in observed
  std::size_t dropped = 0;      // inputs cut by the io budget
};

struct OracleFail {
  Counterexample counterexample;
  std::int64_t remaining_checks = 0;
};

struct OraclePass {};

struct BudgetNotice {
  enum class Kind { IoExhausted, OracleExhausted };
  Kind kind = Kind::IoExhausted;
};

/// Candidate failed to load, or the action itself was unusable (empty batch,
/// wrong entry name). Consumes no budget.
struct InvalidAction {
  enum class Kind { MalformedCandidate, ParseFailure, EmptyBatch };
  Kind kind = Kind::MalformedCandidate;
  std::string diagnostic;
  int consecutive = 0;
};

/// Final verdict on the last allowed submission.
struct FinalFail {
  Counterexample counterexample;
};

/// Terminal because too many consecutive invalid actions or the run limit.
struct SessionAborted {
  std::string reason;
};

using Observation =
    std::variant<Examples, OracleFail, OraclePass, BudgetNotice, InvalidAction, FinalFail, SessionAborted>;

// State ----------------------------------------------------------------------

enum class Role { System, Harness, Agent };

const char* role_name(Role r);
std::optional<Role> role_from_name(std::string_view name);

struct TranscriptTurn {
  Role role = Role::Harness;
  std::int64_t timestamp_ms = 0;
  std::string text;
  std::string teacher_prefix;  // harness turns of teacher sessions only
};

class SessionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// step() after the session reached a terminal status.
class ActionAfterTermination : public SessionError {
 public:
  ActionAfterTermination() : SessionError("action after termination") {}
};

inline constexpr int kMaxConsecutiveInvalid = 3;

struct SessionState {
  const Task* task = nullptr;
  Budgets budgets;
  std::vector<IOExample> observed;
  std::int64_t io_used = 0;
  std::int64_t oracle_used = 0;
  std::vector<TranscriptTurn> transcript;
  SessionStatus status = SessionStatus::Active;
  std::optional<Counterexample> last_counterexample;
  std::vector<Counterexample> counterexamples;
  std::uint64_t rng_seed = 0;
  int consecutive_invalid = 0;
  std::string abort_reason;

  // Filled at the first loadable submission.
  std::optional<bool> pass1;
  std::optional<bool> pass2;

  std::int64_t remaining_io() const { return budgets.b_io - io_used; }
  std::int64_t remaining_oracle() const { return budgets.b_oracle - oracle_used; }
  /// Submissions after which feedback is still delivered.
  std::int64_t debugging_checks_left() const { return std::max<std::int64_t>(remaining_oracle() - 1, 0); }
};

struct SessionOptions {
  OracleConfig oracle;
  /// Milliseconds since epoch; null clock stamps zero everywhere.
  std::function<std::int64_t()> clock;
};

class Session {
 public:
  /// Validates budgets and the oracle configuration against the task.
  Session(const Task& task, Budgets budgets, std::uint64_t seed, Executor& exec, SessionOptions options = {});

  const SessionState& state() const { return state_; }
  const Task& task() const { return *state_.task; }

  /// Throws ActionAfterTermination once terminal; executor failures abort
  /// the session and rethrow.
  Observation step(const Action& action);

  /// An agent response that did not parse counts toward the invalid-action
  /// limit.
  Observation note_parse_failure(const std::string& diagnostic);

  /// Ends an active session as failedBudget (turn limit reached).
  void exhaust(const std::string& reason);
  /// Ends an active session as aborted (infrastructure failure).
  void abort(const std::string& reason);

  void record(Role role, std::string text, std::string teacher_prefix = {});

 private:
  Observation query(const QueryBatch& q);
  Observation submit(const SubmitCandidate& c);
  Observation invalid(InvalidAction::Kind kind, std::string diagnostic);
  Outcome run_truth(const ArgTuple& input);
  std::int64_t now() const;

  SessionState state_;
  Executor& exec_;
  SessionOptions options_;
};

struct RunMetrics {
  std::string task_id;
  Variant variant = Variant::Annotated;
  std::string agent;
  bool success = false;
  std::int64_t io_used = 0;
  std::int64_t oracle_used = 0;
  std::int64_t wall_ms = 0;
  std::uint64_t seed = 0;
  bool pass1 = false;
  bool pass2 = false;
  SessionStatus status = SessionStatus::Active;
};

/// Throws SessionError unless the session is terminal.
RunMetrics session_metrics(const SessionState& s);

}  // namespace iosynth

#endif  // IOSYNTH_SESSION_HPP
