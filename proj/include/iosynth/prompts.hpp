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

// Prompt rendering and response parsing. Every function here is pure: the
// same inputs give byte-identical text.

#ifndef IOSYNTH_PROMPTS_HPP
#define IOSYNTH_PROMPTS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iosynth/session.hpp"

namespace iosynth {

/// Shown in place of a value when a call raised.
inline constexpr const char* kErrorMarker = "Error";
inline constexpr const char* kNoErrorMarker = "No Error";

/// print('Result <index>: ' + str(<entry>(<args>)))
std::string render_invocation(std::string_view entry, const ArgTuple& args, std::size_t index);

/// Result <index>: <str(value)> or the error marker.
std::string render_result(const Outcome& o, std::size_t index);

/// The two sides of a counterexample as shown to the agent: values when
/// both calls returned, kinds when both raised, the error markers otherwise.
std::pair<std::string, std::string> counterexample_summaries(const Counterexample& cex);

/// Sentence stating what is left, e.g. "You have 10 additional function
/// invocations and 1 debugging check left."
std::string budget_sentence(std::int64_t remaining_io, std::int64_t debugging_checks);

/// Throws UnrenderableError for an initial example that has no literal form.
std::string render_initial_prompt(const Task& task, const Budgets& budgets);

/// Feedback after a step. Counters and numbering come from the state after
/// the step was applied.
std::string render_feedback_prompt(const Observation& obs, const SessionState& state);

/// Instructions prepended to harness turns in teacher mode. Embeds the
/// target source.
std::string teacher_prefix(const Task& task);

struct ParsedResponse {
  std::optional<Action> action;
  std::vector<std::string> diagnostics;
};

/// IMPLEMENTATION (a fenced block defining `entry`) wins over INVOCATIONS;
/// headers match case-insensitively with leading markdown tolerated.
ParsedResponse parse_response(std::string_view text, std::string_view entry);

}  // namespace iosynth

#endif  // IOSYNTH_PROMPTS_HPP
