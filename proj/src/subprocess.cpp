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

#include "iosynth/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>

#include <spdlog/spdlog.h>

#include "iosynth/record.hpp"

extern char** environ;

namespace iosynth {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kControlFrameBytes = 1 << 20;
constexpr std::size_t kFrameOverhead = 64 * 1024;

bool known_capability(const std::string& c) {
  return c == kCapNetwork || c == kCapFilesystemWrite || c == kCapProcessSpawn;
}

std::filesystem::path fresh_config_path() {
  static std::atomic<unsigned> counter{0};
  return std::filesystem::temp_directory_path() /
         ("iosynth-worker-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".cfg");
}

}  // namespace

std::string encode_worker_config(const WorkerConfig& c) {
  ValueList caps;
  for (const auto& cap : c.disallowed_capabilities) caps.push_back(Value::str(cap));
  return encode(RecordBuilder()
                    .add("hardTimeoutMs", rec::i64(c.hard_timeout_ms))
                    .add("recursionLimit", rec::i64(c.recursion_limit))
                    .add("disallowedCapabilities", Value::list(std::move(caps)))
                    .build());
}

WorkerConfig decode_worker_config(std::string_view text) {
  try {
    const Value v = decode(text);
    RecordReader rd(v, "worker config");
    WorkerConfig c;
    c.hard_timeout_ms = rd.i64("hardTimeoutMs");
    c.recursion_limit = rd.i64("recursionLimit");
    c.disallowed_capabilities.clear();
    for (const auto& cap : rd.kind("disallowedCapabilities", Value::Kind::List).items()) {
      if (!cap.is(Value::Kind::Str) || !known_capability(cap.as_str())) {
        throw FrameError("unknown capability " + encode(cap));
      }
      c.disallowed_capabilities.push_back(cap.as_str());
    }
    if (c.hard_timeout_ms < 1) throw FrameError("hardTimeoutMs must be >= 1");
    return c;
  } catch (const RecordError& e) {
    throw FrameError(e.what());
  } catch (const DecodeError& e) {
    throw FrameError(e.what());
  }
}

std::int64_t timeout_grace_ms(std::int64_t timeout_ms) { return std::clamp<std::int64_t>(timeout_ms, 100, 1000); }

// ---------------------------------------------------------------------------

SubprocessExecutor::SubprocessExecutor(SubprocessOptions options) : options_(std::move(options)) {
  if (options_.command.empty()) throw ExecutorUnavailable("empty worker command");
  config_path_ = fresh_config_path();
  std::ofstream(config_path_) << encode_worker_config(options_.config) << '\n';
  start();
}

SubprocessExecutor::~SubprocessExecutor() {
  stop();
  std::error_code ec;
  std::filesystem::remove(config_path_, ec);
}

void SubprocessExecutor::start() {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
    throw ExecutorUnavailable(std::string("socketpair: ") + std::strerror(errno));
  }
  posix_spawn_file_actions_t fa;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_adddup2(&fa, sv[1], 0);
  posix_spawn_file_actions_adddup2(&fa, sv[1], 1);
  posix_spawn_file_actions_addopen(&fa, 2, options_.stderr_path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<std::string> argv_s = options_.command;
  argv_s.push_back(config_path_.string());
  std::vector<char*> argv;
  for (auto& a : argv_s) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, argv[0], &fa, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&fa);
  posix_spawnattr_destroy(&attr);
  ::close(sv[1]);
  if (rc != 0) {
    ::close(sv[0]);
    throw ExecutorUnavailable("cannot start worker '" + options_.command[0] + "': " + std::strerror(rc));
  }
  pid_ = pid;
  fd_ = sv[0];
  buffer_.clear();

  std::string line;
  const ReadStatus st = read_line(options_.startup_timeout_ms, kControlFrameBytes, line);
  std::string why;
  if (st != ReadStatus::Line) {
    why = st == ReadStatus::Timeout ? "no startup frame" : "worker exited during startup";
  } else {
    try {
      ExecResponse r = decode_response(line);
      if (!r.health) {
        why = "startup frame is not a health response";
      } else if (r.health->version != kProtocolVersion) {
        why = "protocol version '" + r.health->version + "' is not supported";
      } else {
        health_ = std::move(*r.health);
      }
    } catch (const FrameError& e) {
      why = std::string("bad startup frame: ") + e.what();
    }
  }
  if (!why.empty()) {
    stop();
    throw ExecutorUnavailable(why);
  }
}

void SubprocessExecutor::stop() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    ::kill(-pid_, SIGKILL);
    ::kill(pid_, SIGKILL);
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
    pid_ = -1;
  }
  buffer_.clear();
}

void SubprocessExecutor::restart() {
  stop();
  ++restarts_;
  spdlog::debug("restarting worker (restart #{})", restarts_);
  start();
}

bool SubprocessExecutor::send_line(const std::string& line) {
  std::string data = line;
  data.push_back('\n');
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

SubprocessExecutor::ReadStatus SubprocessExecutor::read_line(std::int64_t timeout_ms, std::size_t max_bytes,
                                                             std::string& out) {
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
  char chunk[65536];
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      out = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return ReadStatus::Line;
    }
    if (buffer_.size() > max_bytes) return ReadStatus::Overflow;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) return ReadStatus::Timeout;
    pollfd p{fd_, POLLIN, 0};
    const int pr = ::poll(&p, 1, static_cast<int>(std::min<std::int64_t>(left, 1 << 30)));
    if (pr < 0) {
      if (errno == EINTR) continue;
      return ReadStatus::Eof;
    }
    if (pr == 0) return ReadStatus::Timeout;
    const ssize_t n = ::read(fd_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      return ReadStatus::Eof;
    }
    if (n == 0) return ReadStatus::Eof;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::optional<ExecResponse> SubprocessExecutor::round_trip(ExecRequest& req, std::int64_t timeout_ms,
                                                           std::size_t max_bytes, ReadStatus& status) {
  req.id = next_id_++;
  if (!send_line(encode_request(req))) {
    status = ReadStatus::Eof;
    return std::nullopt;
  }
  std::string line;
  status = read_line(timeout_ms, max_bytes, line);
  if (status != ReadStatus::Line) return std::nullopt;
  ExecResponse r = decode_response(line);
  if (r.id != req.id) {
    throw FrameError("response id " + std::to_string(r.id) + " does not match request " + std::to_string(req.id));
  }
  return r;
}

CallResult SubprocessExecutor::call(const std::string& source, const std::string& entry, const ArgTuple& args,
                                    const ExecLimits& limits) {
  try {
    limits.validate();
  } catch (const std::invalid_argument& e) {
    return {ExecStatus::ProtocolError, Outcome(), e.what()};
  }
  ExecRequest req;
  req.op = ExecOp::Call;
  req.source = source;
  req.entry = entry;
  req.args = args;
  req.limits = limits;
  const std::size_t cap = static_cast<std::size_t>(limits.max_output_bytes) + kFrameOverhead;
  ReadStatus st = ReadStatus::Line;
  std::optional<ExecResponse> r;
  try {
    r = round_trip(req, limits.timeout_ms + timeout_grace_ms(limits.timeout_ms), cap, st);
  } catch (const FrameError& e) {
    restart();
    return {ExecStatus::ProtocolError, Outcome(), std::string("worker sent a bad frame: ") + e.what()};
  }
  if (!r) {
    restart();
    switch (st) {
      case ReadStatus::Timeout: return CallResult::timeout();
      case ReadStatus::Overflow: return {ExecStatus::Error, Outcome(), "output exceeds maxOutputBytes"};
      default: return CallResult::of(Outcome::err("ExecutorCrash", "worker exited during call"));
    }
  }
  switch (r->status) {
    case ExecStatus::Ok:
      if (!r->outcome) {
        restart();
        return {ExecStatus::ProtocolError, Outcome(), "ok response without outcome"};
      }
      if (r->outcome->is_ok() &&
          static_cast<std::int64_t>(encode(r->outcome->value()).size()) > limits.max_output_bytes) {
        return {ExecStatus::Error, Outcome(), "output exceeds maxOutputBytes"};
      }
      return CallResult::of(std::move(*r->outcome));
    case ExecStatus::Timeout: return CallResult::timeout();
    default: return {r->status, Outcome(), r->message};
  }
}

bool SubprocessExecutor::compare(const Outcome& a, const Outcome& b) {
  ExecRequest req;
  req.op = ExecOp::Compare;
  req.pair = std::make_pair(a, b);
  ReadStatus st = ReadStatus::Line;
  try {
    auto r = round_trip(req, options_.config.hard_timeout_ms, kControlFrameBytes, st);
    if (r && r->equal) return *r->equal;
  } catch (const FrameError& e) {
    spdlog::warn("compare: {}", e.what());
  }
  spdlog::warn("worker compare failed; using the native comparison");
  restart();
  return compare_outcomes(a, b);
}

TransformResult SubprocessExecutor::transform(const std::string& source, const std::string& kind,
                                              const std::string& entry) {
  ExecRequest req;
  req.op = ExecOp::Transform;
  req.source = source;
  req.entry = entry;
  req.transform_kind = kind;
  ReadStatus st = ReadStatus::Line;
  std::optional<ExecResponse> r;
  try {
    r = round_trip(req, options_.config.hard_timeout_ms, kControlFrameBytes + source.size() * 2, st);
  } catch (const FrameError& e) {
    restart();
    return {ExecStatus::ProtocolError, {}, e.what()};
  }
  if (!r) {
    restart();
    return {st == ReadStatus::Timeout ? ExecStatus::Timeout : ExecStatus::ProtocolError, {}, "transform failed"};
  }
  if (r->status == ExecStatus::Ok && !r->source) return {ExecStatus::ProtocolError, {}, "ok without source"};
  return {r->status, r->source.value_or(""), r->message};
}

HealthInfo SubprocessExecutor::health() { return health_; }

std::optional<HealthInfo> SubprocessExecutor::probe_health(std::int64_t timeout_ms) {
  ExecRequest req;
  req.op = ExecOp::Health;
  ReadStatus st = ReadStatus::Line;
  try {
    auto r = round_trip(req, timeout_ms, kControlFrameBytes, st);
    if (r && r->health) return r->health;
  } catch (const FrameError&) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

ExecutorPool::ExecutorPool(const Factory& factory, std::size_t size) {
  if (size == 0) throw std::invalid_argument("pool size must be >= 1");
  for (std::size_t i = 0; i < size; ++i) {
    all_.push_back(factory());
    free_.push_back(all_.back().get());
  }
}

ExecutorPool::Lease::Lease(Lease&& other) noexcept : pool_(other.pool_), exec_(other.exec_) {
  other.pool_ = nullptr;
  other.exec_ = nullptr;
}

ExecutorPool::Lease::~Lease() {
  if (pool_ != nullptr) pool_->release(exec_);
}

ExecutorPool::Lease ExecutorPool::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return !free_.empty(); });
  Executor* e = free_.back();
  free_.pop_back();
  return Lease(this, e);
}

std::optional<ExecutorPool::Lease> ExecutorPool::try_acquire() {
  std::lock_guard lock(mu_);
  if (free_.empty()) return std::nullopt;
  Executor* e = free_.back();
  free_.pop_back();
  return Lease(this, e);
}

std::size_t ExecutorPool::available() const {
  std::lock_guard lock(mu_);
  return free_.size();
}

void ExecutorPool::release(Executor* e) {
  {
    std::lock_guard lock(mu_);
    free_.push_back(e);
  }
  cv_.notify_one();
}

}  // namespace iosynth
