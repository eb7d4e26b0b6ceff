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

#ifndef IOSYNTH_AGENTS_HPP
#define IOSYNTH_AGENTS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "iosynth/executor.hpp"
#include "iosynth/oracle.hpp"
#include "iosynth/session.hpp"

namespace iosynth {

/// What an agent sees on one turn. Never includes the target source.
struct AgentTurnInput {
  std::string prompt;
  std::string teacher_prefix;
  const Observation* observation = nullptr;  // null on the first turn
  const std::vector<IOExample>* observed = nullptr;
  const std::vector<Counterexample>* counterexamples = nullptr;
  std::int64_t remaining_io = 0;
  std::int64_t debugging_checks = 0;
  std::string entry;
  std::size_t arity = 0;
  std::size_t turn = 0;
};

/// The agent could not produce a response (endpoint down after retries).
class AgentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual std::string respond(const AgentTurnInput& in) = 0;
};

// Scripted ---------------------------------------------------------------------

/// Replays fixed responses in order; an empty response once exhausted.
class ScriptedAgent : public Agent {
 public:
  ScriptedAgent(std::string name, std::vector<std::string> responses);
  std::string name() const override { return name_; }
  std::string respond(const AgentTurnInput& in) override;

 private:
  std::string name_;
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

struct Script {
  std::string task;  // task id the responses were written for
  std::vector<std::string> responses;
};

inline constexpr const char* kScriptSeparator = "=== RESPONSE ===";

/// Script file: optional "task: <id>" line, then responses each introduced
/// by a separator line.
Script load_script(const std::filesystem::path& path);

// Memorizer --------------------------------------------------------------------

/// Submits a lookup table of everything observed; unseen inputs get the most
/// frequent observed output.
class MemorizerAgent : public Agent {
 public:
  std::string name() const override { return "memorizer"; }
  std::string respond(const AgentTurnInput& in) override;
};

/// Most frequent outcome; ties go to the earliest first occurrence.
Outcome most_frequent_output(const std::vector<IOExample>& examples);

// Eliminator -------------------------------------------------------------------

/// Version-space agent over a fixed hypothesis list: spends up to `patience`
/// queries from a fixed input pool, then submits the first hypothesis that
/// agrees with everything observed, dropping hypotheses refuted by
/// counterexamples. Lower patience gives up on querying earlier.
class EliminatorAgent : public Agent {
 public:
  EliminatorAgent(std::vector<FunctionRef> hypotheses, std::vector<ArgTuple> pool, std::int64_t patience,
                  std::size_t batch, Executor& exec, ExecLimits limits = {});
  std::string name() const override;
  std::string respond(const AgentTurnInput& in) override;

 private:
  bool consistent(const FunctionRef& h, const ArgTuple& input, const Outcome& want);

  std::vector<FunctionRef> hypotheses_;
  std::vector<ArgTuple> pool_;
  std::int64_t patience_;
  std::size_t batch_;
  Executor& exec_;
  ExecLimits limits_;
  std::size_t queried_ = 0;
};

/// Hypotheses for a builtin task: its registry mutants, then the target.
/// Sources use the task's entry name.
std::vector<FunctionRef> builtin_hypotheses(const Task& task);

/// Query pool drawn from the initial examples' profile.
std::vector<ArgTuple> eliminator_pool(const Task& task, std::uint64_t seed, std::size_t n);

// Truth ------------------------------------------------------------------------

/// Submits a fixed source on every turn; given the target source it is the
/// soundness probe.
class FixedSourceAgent : public Agent {
 public:
  FixedSourceAgent(std::string name, std::string source) : name_(std::move(name)), source_(std::move(source)) {}
  std::string name() const override { return name_; }
  std::string respond(const AgentTurnInput& in) override;

 private:
  std::string name_;
  std::string source_;
};

// Chat -------------------------------------------------------------------------

struct ChatMessage {
  std::string role;  // system, user, assistant
  std::string content;
};

struct ChatEndpointConfig {
  std::string base_url;
  std::string model;
  double temperature = 0.2;
  std::int64_t max_turn_tokens = 4096;
  std::string api_key_env;  // variable NAME, never the secret
  int max_retries = 3;
  std::int64_t backoff_ms = 500;
  std::int64_t timeout_ms = 120000;
  int max_concurrent = 4;
};

/// One completion request. Implementations throw AgentError on failure.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// OpenAI-style POST <base>/chat/completions.
class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(ChatEndpointConfig config);
  std::string complete(const std::vector<ChatMessage>& messages) override;

  /// Request body as sent (without credentials).
  static std::string request_body(const ChatEndpointConfig& c, const std::vector<ChatMessage>& messages);

 private:
  ChatEndpointConfig config_;
};

/// Keeps the running conversation, retries with exponential backoff and
/// raises AgentError once retries are exhausted.
class ChatAgent : public Agent {
 public:
  ChatAgent(std::shared_ptr<ChatTransport> transport, ChatEndpointConfig config,
            std::function<void(std::int64_t)> sleep_ms = {});
  std::string name() const override { return "chat:" + config_.model; }
  std::string respond(const AgentTurnInput& in) override;

  const std::vector<ChatMessage>& history() const { return history_; }

 private:
  std::shared_ptr<ChatTransport> transport_;
  ChatEndpointConfig config_;
  std::function<void(std::int64_t)> sleep_ms_;
  std::vector<ChatMessage> history_;
};

// Loop -------------------------------------------------------------------------

struct LoopOptions {
  bool teacher = false;
  /// 0 picks a limit from the budgets.
  std::size_t max_turns = 0;
};

/// Alternates prompt, agent turn, parse and step until the session is
/// terminal, recording every turn.
void run_agent_loop(Agent& agent, Session& session, const LoopOptions& options = {});

}  // namespace iosynth

#endif  // IOSYNTH_AGENTS_HPP
