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

#ifndef IOSYNTH_TASK_HPP
#define IOSYNTH_TASK_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iosynth/value.hpp"

namespace iosynth {

enum class Variant { Annotated, Anonymized };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

inline constexpr const char* kAnonymousEntry = "solution";

/// One synthesis problem: a hidden target function plus the examples an
/// agent sees up front.
struct Task {
  std::string id;
  std::string suite;
  std::string source;  // host source or a builtin URI
  std::string entry;
  Variant variant = Variant::Annotated;
  std::vector<IOExample> e0;
  std::size_t arity = 0;
  std::vector<std::string> tags;

  std::vector<ArgTuple> e0_inputs() const;
};

}  // namespace iosynth

#endif  // IOSYNTH_TASK_HPP
