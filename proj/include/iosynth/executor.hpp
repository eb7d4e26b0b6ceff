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

// Execution-service contract. An Executor runs function source on argument
// tuples, compares outcomes under host semantics and rewrites source. The
// same contract is served in-process (ReferenceExecutor) and over the
// newline-delimited wire protocol (SubprocessExecutor).

#ifndef IOSYNTH_EXECUTOR_HPP
#define IOSYNTH_EXECUTOR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iosynth/value.hpp"

namespace iosynth {

inline constexpr const char* kProtocolVersion = "1";

struct ExecLimits {
  std::int64_t timeout_ms = 2000;
  std::int64_t max_output_bytes = 1'000'000;
  std::int64_t max_recursion_hint = 1000;

  /// Throws std::invalid_argument unless timeout_ms >= 1 and
  /// max_output_bytes >= 1024.
  void validate() const;
};

enum class ExecStatus { Ok, Error, Timeout, ProtocolError };

const char* status_name(ExecStatus s);
std::optional<ExecStatus> status_from_name(std::string_view name);

/// Result of one call. `outcome` is meaningful only when status == Ok;
/// `diagnostic` carries load errors and other non-behavioral detail.
struct CallResult {
  ExecStatus status = ExecStatus::Ok;
  Outcome outcome;
  std::string diagnostic;

  bool ok() const { return status == ExecStatus::Ok; }
  static CallResult of(Outcome o) { return {ExecStatus::Ok, std::move(o), {}}; }
  static CallResult timeout() { return {ExecStatus::Timeout, Outcome(), "timeout"}; }
  static CallResult load_failure(std::string why) {
    return {ExecStatus::ProtocolError, Outcome(), std::move(why)};
  }
};

struct TransformResult {
  ExecStatus status = ExecStatus::Ok;
  std::string source;
  std::string diagnostic;
};

struct HealthInfo {
  std::string version;
  std::vector<std::string> ops;

  bool supports(std::string_view op) const;
};

/// The executor could not serve a request at all (worker unrecoverable).
class ExecutorUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One connection to an execution service. Not thread-safe; a connection
/// serves one session at a time.
class Executor {
 public:
  virtual ~Executor() = default;

  virtual CallResult call(const std::string& source, const std::string& entry,
                          const ArgTuple& args, const ExecLimits& limits) = 0;
  /// Ok vs Err unequal; Err vs Err equal iff kinds match; Ok vs Ok by host
  /// equality (NaN equal to itself, Opaque by type and rendering).
  virtual bool compare(const Outcome& a, const Outcome& b) = 0;
  virtual TransformResult transform(const std::string& source, const std::string& kind,
                                    const std::string& entry) = 0;
  virtual HealthInfo health() = 0;
};

/// Reference implementation of compareOutcomes shared by the in-process
/// executor and the oracle.
bool compare_outcomes(const Outcome& a, const Outcome& b);

// ---------------------------------------------------------------------------
// Wire messages

enum class ExecOp { Call, Compare, Transform, Health };

const char* op_name(ExecOp op);

struct ExecRequest {
  std::int64_t id = 0;
  ExecOp op = ExecOp::Health;
  std::string source;
  std::string entry;
  ArgTuple args;
  std::optional<std::pair<Outcome, Outcome>> pair;
  std::string transform_kind;
  ExecLimits limits;
};

struct ExecResponse {
  std::int64_t id = 0;
  ExecStatus status = ExecStatus::Ok;
  std::optional<Outcome> outcome;
  std::optional<bool> equal;
  std::optional<std::string> source;
  std::string message;
  std::optional<HealthInfo> health;
};

/// Protocol-level failure decoding a frame.
class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line, no trailing newline. Op-specific fields only.
std::string encode_request(const ExecRequest& r);
std::string encode_response(const ExecResponse& r);
/// Unknown fields are ignored; missing required fields raise FrameError.
ExecRequest decode_request(std::string_view line);
ExecResponse decode_response(std::string_view line);

/// Serves one request frame against an executor and returns the response
/// frame. Malformed frames yield a protocolError response (id 0 when the id
/// itself is unreadable).
std::string serve_frame(Executor& exec, std::string_view line);

}  // namespace iosynth

#endif  // IOSYNTH_EXECUTOR_HPP
