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

// In-process executor over the builtin registry.
//
// A source resolves to native code in one of three ways:
//   - a "builtin:<name>" URI (entry ignored);
//   - a lookup-table candidate, recognised by its first line and executed by
//     reading its table and fallback literals;
//   - host source whose fingerprint matches a registered twin, so renamed
//     or reformatted copies of registry functions run natively.
// Anything else is a load failure.

#ifndef IOSYNTH_REFERENCE_EXECUTOR_HPP
#define IOSYNTH_REFERENCE_EXECUTOR_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iosynth/builtins.hpp"
#include "iosynth/executor.hpp"

namespace iosynth {

inline constexpr const char* kLookupTableMarker = "# lookup-table candidate";

struct ReferenceOptions {
  /// Serve the hang/crash/random_pick/noisy_identity functions.
  bool diagnostics = false;
  /// Offer a token-level rename as the anonymize transform. Off by default:
  /// health then reports transform as unsupported.
  bool lexical_transform = false;
};

/// Host source for a candidate that answers from a fixed table and falls
/// back to one outcome elsewhere. Error outcomes are stored by kind name.
/// Throws UnrenderableError if a key or value contains an Opaque.
std::string lookup_table_source(const std::string& entry,
                                const std::vector<std::pair<ArgTuple, Outcome>>& table,
                                const Outcome& fallback);

class ReferenceExecutor : public Executor {
 public:
  explicit ReferenceExecutor(ReferenceOptions options = {});

  CallResult call(const std::string& source, const std::string& entry, const ArgTuple& args,
                  const ExecLimits& limits) override;
  bool compare(const Outcome& a, const Outcome& b) override;
  TransformResult transform(const std::string& source, const std::string& kind,
                            const std::string& entry) override;
  HealthInfo health() override;

  std::size_t calls() const { return calls_; }

  struct Resolved;

 private:
  std::shared_ptr<const Resolved> resolve(const std::string& source, const std::string& entry);

  ReferenceOptions options_;
  std::unordered_map<std::string, std::shared_ptr<const Resolved>> cache_;
  std::size_t calls_ = 0;
};

}  // namespace iosynth

#endif  // IOSYNTH_REFERENCE_EXECUTOR_HPP
