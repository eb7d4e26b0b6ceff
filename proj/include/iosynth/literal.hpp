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

// Host-language literal rendering and parsing. Prompts show values as host
// literals and agents answer with host call expressions, so both directions
// live here.

#ifndef IOSYNTH_LITERAL_HPP
#define IOSYNTH_LITERAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iosynth/value.hpp"

namespace iosynth {

class UnrenderableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LiteralError : public std::runtime_error {
 public:
  LiteralError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Renders v as a host literal expression that evaluates back to v. NaN and
/// infinities render as float('nan') / float('inf'). Throws
/// UnrenderableError if v contains an Opaque value.
std::string render_literal(const Value& v);

/// The host's repr(): like render_literal but never throws; non-finite
/// floats show as nan/inf and Opaque values show their captured rendering.
std::string render_repr(const Value& v);

/// The host's str(): repr() except that a top-level string is shown raw.
std::string render_display(const Value& v);

/// Renders positional arguments as they appear between call parentheses.
std::string render_args(const ArgTuple& args);

/// Parses one literal expression (the whole input must be consumed apart
/// from surrounding whitespace). Supports None/True/False, numbers, string
/// literals, list/tuple/dict/set displays, unary minus, and the calls
/// float('nan'|'inf'|...), set(), list(...), tuple(...), dict(), range(...)
/// inside list/tuple/set.
Value parse_literal(std::string_view text);

/// Parses a comma-separated argument list (without the parentheses).
ArgTuple parse_args(std::string_view text);

/// Finds `<callee>(` in text and parses the balanced argument list that
/// follows. Returns the arguments and sets `end` past the closing paren.
ArgTuple parse_call(std::string_view text, std::string_view callee, std::size_t& end);

}  // namespace iosynth

#endif  // IOSYNTH_LITERAL_HPP
