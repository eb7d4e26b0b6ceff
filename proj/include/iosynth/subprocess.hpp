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

// Wire-protocol client for an out-of-process worker, and a pool of
// executors handed to one session at a time.
//
// Launch contract: the worker command is run with one extra argument, the
// path of a WorkerConfig file in canonical encoding. The worker's stdin and
// stdout carry one frame per line; its first output line is a health
// response with id 0.

#ifndef IOSYNTH_SUBPROCESS_HPP
#define IOSYNTH_SUBPROCESS_HPP

#include <sys/types.h>

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "iosynth/executor.hpp"

namespace iosynth {

inline constexpr const char* kCapNetwork = "network";
inline constexpr const char* kCapFilesystemWrite = "filesystem-write";
inline constexpr const char* kCapProcessSpawn = "process-spawn";

struct WorkerConfig {
  std::int64_t hard_timeout_ms = 10'000;
  std::int64_t recursion_limit = 1000;
  std::vector<std::string> disallowed_capabilities = {kCapNetwork, kCapFilesystemWrite, kCapProcessSpawn};
};

std::string encode_worker_config(const WorkerConfig& c);
/// Throws FrameError on malformed input or unknown capabilities.
WorkerConfig decode_worker_config(std::string_view text);

struct SubprocessOptions {
  std::vector<std::string> command;  // argv prefix; the config path is appended
  WorkerConfig config;
  std::int64_t startup_timeout_ms = 10'000;
  std::filesystem::path stderr_path = "/dev/null";
};

/// Grace added to a call's timeoutMs before the gateway kills the worker.
std::int64_t timeout_grace_ms(std::int64_t timeout_ms);

/// Executor backed by one worker process. A call that outlives its timeout
/// plus grace kills the worker, reports timeout and restarts it; a worker
/// that dies mid-call yields Err("ExecutorCrash") and is restarted.
/// Throws ExecutorUnavailable when the worker cannot be (re)started.
class SubprocessExecutor : public Executor {
 public:
  explicit SubprocessExecutor(SubprocessOptions options);
  ~SubprocessExecutor() override;
  SubprocessExecutor(const SubprocessExecutor&) = delete;
  SubprocessExecutor& operator=(const SubprocessExecutor&) = delete;

  CallResult call(const std::string& source, const std::string& entry, const ArgTuple& args,
                  const ExecLimits& limits) override;
  bool compare(const Outcome& a, const Outcome& b) override;
  TransformResult transform(const std::string& source, const std::string& kind,
                            const std::string& entry) override;
  /// Cached startup health; see probe_health for a live round trip.
  HealthInfo health() override;
  /// Sends a health request; nullopt if no response within timeout_ms.
  std::optional<HealthInfo> probe_health(std::int64_t timeout_ms);

  int restarts() const { return restarts_; }
  pid_t pid() const { return pid_; }

 private:
  enum class ReadStatus { Line, Timeout, Eof, Overflow };

  void start();
  void stop();
  void restart();
  bool send_line(const std::string& line);
  ReadStatus read_line(std::int64_t timeout_ms, std::size_t max_bytes, std::string& out);
  std::optional<ExecResponse> round_trip(ExecRequest& req, std::int64_t timeout_ms,
                                         std::size_t max_bytes, ReadStatus& status);

  SubprocessOptions options_;
  std::filesystem::path config_path_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  std::int64_t next_id_ = 1;
  HealthInfo health_;
  int restarts_ = 0;
};

/// Fixed set of executors; a Lease gives exclusive use of one until it is
/// destroyed.
class ExecutorPool {
 public:
  using Factory = std::function<std::unique_ptr<Executor>()>;

  ExecutorPool(const Factory& factory, std::size_t size);

  class Lease {
   public:
    Lease(Lease&& other) noexcept;
    Lease& operator=(Lease&&) = delete;
    ~Lease();
    Executor& operator*() const { return *exec_; }
    Executor* operator->() const { return exec_; }

   private:
    friend class ExecutorPool;
    Lease(ExecutorPool* pool, Executor* exec) : pool_(pool), exec_(exec) {}
    ExecutorPool* pool_;
    Executor* exec_;
  };

  /// Blocks until an executor is free.
  Lease acquire();
  std::optional<Lease> try_acquire();
  std::size_t size() const { return all_.size(); }
  std::size_t available() const;

 private:
  void release(Executor* e);

  std::vector<std::unique_ptr<Executor>> all_;
  std::vector<Executor*> free_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
};

}  // namespace iosynth

#endif  // IOSYNTH_SUBPROCESS_HPP
