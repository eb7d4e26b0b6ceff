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

// Lexical handling of host-language source: tokenizing, layout-insensitive
// fingerprints, and identifier renaming.

#ifndef IOSYNTH_PYSOURCE_HPP
#define IOSYNTH_PYSOURCE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iosynth::py {

class SourceError : public std::runtime_error {
 public:
  SourceError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class Tok { Name, Number, String, Op, Newline, Indent, Dedent, Comment };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;  // byte offset of text in the source
  std::size_t line;
};

/// Throws SourceError on unterminated strings, unbalanced brackets or
/// inconsistent dedents.
std::vector<Token> tokenize(std::string_view source);

/// True if source defines `def <name>(` at top level.
bool defines_function(const std::vector<Token>& tokens, std::string_view name);

/// Token stream with comments and layout removed and every occurrence of
/// `entry` as a name replaced by a placeholder. Two sources with equal
/// fingerprints differ only in comments, blank lines, spacing inside lines
/// and the entry function's name.
std::string fingerprint(std::string_view source, std::string_view entry);

/// Renames every name token equal to `from` that is not an attribute
/// (not preceded by '.'). Strings and comments are untouched.
std::string rename_identifier(std::string_view source, std::string_view from,
                              std::string_view to);

/// Non-blank lines.
std::size_t count_lines(std::string_view source);

}  // namespace iosynth::py

#endif  // IOSYNTH_PYSOURCE_HPP
