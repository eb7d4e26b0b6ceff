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

// UTF-8 and string-escaping helpers.

#ifndef IOSYNTH_TEXT_HPP
#define IOSYNTH_TEXT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iosynth {

/// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
void utf8_append(std::string& out, char32_t cp);

/// Quotes a string the way a JSON serializer that keeps non-ASCII raw does:
/// escapes '"', '\\' and control characters below 0x20 only.
std::string json_quote(std::string_view s);
/// Parses a quoted JSON string at the start of `in`. Returns std::nullopt on
/// malformed input; `consumed` receives the byte length including quotes.
std::optional<std::string> json_unquote(std::string_view in, std::size_t& consumed);

/// Whitespace as understood by the host runtime's str.split().
bool is_host_space(char32_t c);
/// Printable as understood by the host runtime's repr() (approximate outside
/// Latin-1: only a few well-known format and separator characters escape).
bool is_host_printable(char32_t c);

std::string trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

}  // namespace iosynth

#endif  // IOSYNTH_TEXT_HPP
