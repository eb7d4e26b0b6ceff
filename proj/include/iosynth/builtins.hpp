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

// Registry of builtin target functions served by the reference executor.
// Every entry pairs a native implementation with its host-language twin
// source; mutants are derived from a base entry by one textual replacement
// on the twin and a matching switch in the native code.

#ifndef IOSYNTH_BUILTINS_HPP
#define IOSYNTH_BUILTINS_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "iosynth/host.hpp"
#include "iosynth/value.hpp"

namespace iosynth {

inline constexpr std::string_view kBuiltinScheme = "builtin:";

using NativeFn = std::function<Value(host::CallContext&, const ValueList&)>;

struct BuiltinFunction {
  std::string name;   // registry key; mutants are "<base>~<n>"
  std::string entry;  // function defined by the twin source
  std::vector<std::string> params;
  NativeFn fn;
  std::string twin;
  std::string base;      // mutants only
  std::string mutation;  // mutants only: "<find> => <replace>"
  bool diagnostic = false;

  std::string uri() const { return std::string(kBuiltinScheme) + name; }
};

struct BuiltinTask {
  std::string name;
  std::string suite;
  std::vector<std::string> tags;
  std::vector<ArgTuple> e0;
};

/// All functions: tasks, mutants, extra candidates and diagnostics.
const std::vector<BuiltinFunction>& builtin_registry();
const BuiltinFunction* find_builtin(std::string_view name);
/// The builtin task set in a fixed order.
const std::vector<BuiltinTask>& builtin_tasks();
std::vector<const BuiltinFunction*> builtin_mutants();

/// The case-study task and the nested-loop candidate from the transcript.
inline constexpr const char* kCaseStudyTask = "has_unique_elements";
inline constexpr const char* kPairwiseCandidate = "has_unique_elements_pairwise";

}  // namespace iosynth

#endif  // IOSYNTH_BUILTINS_HPP
