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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "iosynth/agents.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "iosynth/builtins.hpp"
#include "iosynth/literal.hpp"
#include "iosynth/prompts.hpp"
#include "iosynth/pysource.hpp"
#include "iosynth/reference_executor.hpp"
#include "iosynth/text.hpp"

namespace iosynth {

namespace {

std::string implementation_block(const std::string& source) {
  std::string out = "IMPLEMENTATION:\n```python\n" + source;
  if (source.empty() || source.back() != '\n') out += "\n";
  return out + "```\n";
}

}  // namespace

// Scripted -----------------------------------------------------------------------

ScriptedAgent::ScriptedAgent(std::string name, std::vector<std::string> responses)
    : name_(std::move(name)), responses_(std::move(responses)) {}

std::string ScriptedAgent::respond(const AgentTurnInput&) {
  if (next_ >= responses_.size()) return {};
  return responses_[next_++];
}

Script load_script(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read script " + path.string());
  Script s;
  std::string line;
  std::string* current = nullptr;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == kScriptSeparator) {
      s.responses.emplace_back();
      current = &s.responses.back();
      continue;
    }
    if (current == nullptr) {
      if (line.rfind("task:", 0) == 0) s.task = trim(line.substr(5));
      continue;
    }
    *current += line + "\n";
  }
  return s;
}

// Memorizer ----------------------------------------------------------------------

Outcome most_frequent_output(const std::vector<IOExample>& examples) {
  if (examples.empty()) return Outcome::ok(Value::null());
  std::vector<std::pair<std::string, std::size_t>> order;  // encoding, first index
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const std::string key = encode(outcome_to_value(examples[i].output));
    if (counts[key]++ == 0) order.emplace_back(key, i);
  }
  std::size_t best = order.front().second;
  int best_count = 0;
  for (const auto& [key, first] : order) {
    if (counts[key] > best_count) {
      best_count = counts[key];
      best = first;
    }
  }
  return examples[best].output;
}

std::string MemorizerAgent::respond(const AgentTurnInput& in) {
  std::vector<std::pair<ArgTuple, Outcome>> table;
  std::vector<IOExample> seen;
  std::unordered_set<std::string> keys;
  auto add = [&](const ArgTuple& a, const Outcome& o) {
    if (!keys.insert(encode(a.as_tuple())).second) return;
    table.emplace_back(a, o);
    seen.push_back(IOExample{a, o});
  };
  if (in.counterexamples) {
    for (const auto& c : *in.counterexamples) add(c.input, c.truth);
  }
  if (in.observed) {
    for (const auto& ex : *in.observed) add(ex.input, ex.output);
  }
  std::vector<IOExample> observed = in.observed ? *in.observed : std::vector<IOExample>{};
  std::string body;
  try {
    body = lookup_table_source(in.entry, table, most_frequent_output(observed));
  } catch (const UnrenderableError& e) {
    return std::string("The observations cannot be written down as literals: ") + e.what() + "\n";
  }
  return "Tabulating every observed call.\n\n" + implementation_block(body);
}

// Eliminator ---------------------------------------------------------------------

EliminatorAgent::EliminatorAgent(std::vector<FunctionRef> hypotheses, std::vector<ArgTuple> pool,
                                 std::int64_t patience, std::size_t batch, Executor& exec, ExecLimits limits)
    : hypotheses_(std::move(hypotheses)),
      pool_(std::move(pool)),
      patience_(patience),
      batch_(std::max<std::size_t>(batch, 1)),
      exec_(exec),
      limits_(limits) {}

std::string EliminatorAgent::name() const { return "eliminator:" + std::to_string(patience_); }

bool EliminatorAgent::consistent(const FunctionRef& h, const ArgTuple& input, const Outcome& want) {
  const CallResult r = exec_.call(h.source, h.entry, input, limits_);
  Outcome got = r.outcome;
  if (r.status == ExecStatus::Timeout) got = Outcome::err("TimeoutError");
  if (r.status == ExecStatus::Error) got = Outcome::err("OutputLimitExceeded");
  if (r.status == ExecStatus::ProtocolError) return false;
  return exec_.compare(got, want);
}

std::string EliminatorAgent::respond(const AgentTurnInput& in) {
  const auto budget = std::min<std::int64_t>(in.remaining_io, patience_ - static_cast<std::int64_t>(queried_));
  if (budget > 0 && queried_ < pool_.size()) {
    const std::size_t n = std::min({static_cast<std::size_t>(budget), batch_, pool_.size() - queried_});
    std::string out = "Probing more inputs.\n\nINVOCATIONS:\n```python\n";
    for (std::size_t i = 0; i < n; ++i) {
      out += render_invocation(in.entry, pool_[queried_ + i], i + 1) + "\n";
    }
    queried_ += n;
    return out + "```\n";
  }
  std::vector<std::pair<ArgTuple, Outcome>> facts;
  if (in.observed) {
    for (const auto& ex : *in.observed) facts.emplace_back(ex.input, ex.output);
  }
  if (in.counterexamples) {
    for (const auto& c : *in.counterexamples) facts.emplace_back(c.input, c.truth);
  }
  std::vector<FunctionRef> live;
  for (const auto& h : hypotheses_) {
    bool ok = true;
    for (const auto& [input, want] : facts) {
      if (!consistent(h, input, want)) {
        ok = false;
        break;
      }
    }
    if (ok) live.push_back(h);
  }
  const FunctionRef& pick = live.empty() ? hypotheses_.back() : live.front();
  return std::to_string(live.size()) + " hypothesis(es) remain.\n\n" + implementation_block(pick.source);
}

std::vector<FunctionRef> builtin_hypotheses(const Task& task) {
  std::vector<FunctionRef> out;
  const std::string base = task.id;
  const BuiltinFunction* target = find_builtin(base);
  if (target == nullptr) return out;
  for (const auto* m : builtin_mutants()) {
    if (m->base != base) continue;
    out.push_back({py::rename_identifier(m->twin, m->entry, task.entry), task.entry});
  }
  out.push_back({py::rename_identifier(target->twin, target->entry, task.entry), task.entry});
  return out;
}

std::vector<ArgTuple> eliminator_pool(const Task& task, std::uint64_t seed, std::size_t n) {
  if (task.e0.empty()) return {};
  const InputProfile profile = infer_profile(task.e0_inputs());
  std::mt19937_64 rng(seed);
  std::vector<ArgTuple> out;
  std::unordered_set<std::string> seen;
  for (const auto& ex : task.e0) seen.insert(encode(ex.input.as_tuple()));
  for (auto& a : generate(profile, Strategy::TypeAwareRandom, {}, {}, rng, n * 2)) {
    if (out.size() < n && seen.insert(encode(a.as_tuple())).second) out.push_back(std::move(a));
  }
  return out;
}

// Fixed source -------------------------------------------------------------------

std::string FixedSourceAgent::respond(const AgentTurnInput&) {
  return "Submitting.\n\n" + implementation_block(source_);
}

// Chat ---------------------------------------------------------------------------

namespace {

class Limiter {
 public:
  explicit Limiter(int n) : free_(std::max(n, 1)) {}
  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int free_;
};

Limiter& limiter_for(const ChatEndpointConfig& c) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Limiter>> all;
  std::lock_guard lock(mu);
  auto& slot = all[c.base_url];
  if (!slot) slot = std::make_unique<Limiter>(c.max_concurrent);
  return *slot;
}

}  // namespace

HttpChatTransport::HttpChatTransport(ChatEndpointConfig config) : config_(std::move(config)) {}

std::string HttpChatTransport::request_body(const ChatEndpointConfig& c, const std::vector<ChatMessage>& messages) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  nlohmann::json body = {{"model", c.model},
                         {"temperature", c.temperature},
                         {"max_tokens", c.max_turn_tokens},
                         {"messages", msgs}};
  return body.dump();
}

std::string HttpChatTransport::complete(const std::vector<ChatMessage>& messages) {
  // Split "scheme://host:port/prefix" into the client origin and path prefix.
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  const auto path_at = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  const std::string origin = path_at == std::string::npos ? url : url.substr(0, path_at);
  std::string prefix = path_at == std::string::npos ? "" : url.substr(path_at);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client cli(origin);
  const auto secs = config_.timeout_ms / 1000;
  const auto usecs = (config_.timeout_ms % 1000) * 1000;
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  Limiter& lim = limiter_for(config_);
  lim.acquire();
  auto res = cli.Post(prefix + "/chat/completions", headers, request_body(config_, messages), "application/json");
  lim.release();
  if (!res) throw AgentError("chat endpoint unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) throw AgentError("chat endpoint returned HTTP " + std::to_string(res->status));
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw AgentError(std::string("chat endpoint reply is malformed: ") + e.what());
  }
}

ChatAgent::ChatAgent(std::shared_ptr<ChatTransport> transport, ChatEndpointConfig config,
                     std::function<void(std::int64_t)> sleep_ms)
    : transport_(std::move(transport)), config_(std::move(config)), sleep_ms_(std::move(sleep_ms)) {
  if (!sleep_ms_) {
    sleep_ms_ = [](std::int64_t ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
  }
}

std::string ChatAgent::respond(const AgentTurnInput& in) {
  history_.push_back({"user", in.teacher_prefix + in.prompt});
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) sleep_ms_(config_.backoff_ms << (attempt - 1));
    try {
      std::string reply = transport_->complete(history_);
      history_.push_back({"assistant", reply});
      return reply;
    } catch (const AgentError& e) {
      last_error = e.what();
      spdlog::warn("chat attempt {} failed: {}", attempt + 1, last_error);
    }
  }
  history_.pop_back();
  throw AgentError("chat endpoint failed after " + std::to_string(config_.max_retries + 1) +
                   " attempt(s): " + last_error);
}

// Loop ---------------------------------------------------------------------------

void run_agent_loop(Agent& agent, Session& session, const LoopOptions& options) {
  const SessionState& st = session.state();
  const Task& task = session.task();
  const std::size_t max_turns =
      options.max_turns > 0
          ? options.max_turns
          : static_cast<std::size_t>(std::max<std::int64_t>(st.remaining_io(), 0) +
                                     st.budgets.b_oracle * kMaxConsecutiveInvalid + 8);
  std::string prompt = render_initial_prompt(task, st.budgets);
  std::optional<Observation> last;
  for (std::size_t turn = 0; !is_terminal(st.status); ++turn) {
    if (turn >= max_turns) {
      session.exhaust("turn limit of " + std::to_string(max_turns) + " reached");
      session.record(Role::System, "Session ended: " + st.abort_reason + "\n");
      break;
    }
    const std::string prefix = options.teacher && turn == 0 ? teacher_prefix(task) : std::string();
    session.record(Role::Harness, prompt, prefix);
    AgentTurnInput in;
    in.prompt = prompt;
    in.teacher_prefix = prefix;
    in.observation = last ? &*last : nullptr;
    in.observed = &st.observed;
    in.counterexamples = &st.counterexamples;
    in.remaining_io = st.remaining_io();
    in.debugging_checks = st.debugging_checks_left();
    in.entry = task.entry;
    in.arity = task.arity;
    in.turn = turn;
    std::string reply;
    try {
      reply = agent.respond(in);
    } catch (const AgentError& e) {
      session.abort(e.what());
      session.record(Role::System, std::string("Session aborted: ") + e.what() + "\n");
      break;
    }
    session.record(Role::Agent, reply);
    const ParsedResponse parsed = parse_response(reply, task.entry);
    Observation obs;
    if (parsed.action) {
      obs = session.step(*parsed.action);
    } else {
      std::string diag;
      for (const auto& d : parsed.diagnostics) diag += (diag.empty() ? "" : "; ") + d;
      obs = session.note_parse_failure(diag);
    }
    prompt = render_feedback_prompt(obs, st);
    last = obs;
    if (is_terminal(st.status)) session.record(Role::System, prompt);
  }
}

}  // namespace iosynth
