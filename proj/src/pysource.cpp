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

#include "iosynth/pysource.hpp"

#include <array>
#include <cctype>
#include <cstring>

namespace iosynth::py {

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

constexpr std::array<const char*, 23> kMultiOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "==", "!=", "<=", ">=", "**",
    "//",  "<<",  ">>",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^="};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    bool at_line_start = true;
    while (pos_ < s_.size()) {
      if (at_line_start && depth_ == 0) {
        if (!layout()) continue;
        at_line_start = false;
      }
      const char c = s_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        if (depth_ == 0) {
          if (!out_.empty() && out_.back().kind != Tok::Newline && has_code_on_line_) {
            out_.push_back({Tok::Newline, "\n", pos_ - 1, line_ - 1});
          }
          has_code_on_line_ = false;
          at_line_start = true;
        }
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
        continue;
      }
      if (c == '\\' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '\n' || s_[pos_ + 1] == '\r')) {
        pos_ += s_[pos_ + 1] == '\r' && pos_ + 2 < s_.size() && s_[pos_ + 2] == '\n' ? 3 : 2;
        ++line_;
        continue;
      }
      if (c == '#') {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        out_.push_back({Tok::Comment, std::string(s_.substr(start, pos_ - start)), start, line_});
        continue;
      }
      has_code_on_line_ = true;
      if (string_start()) {
        string_token();
        continue;
      }
      if (ident_start(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        out_.push_back({Tok::Name, std::string(s_.substr(start, pos_ - start)), start, line_});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
        number();
        continue;
      }
      op();
    }
    if (depth_ != 0) throw SourceError("unexpected EOF inside brackets", line_);
    if (!out_.empty() && out_.back().kind != Tok::Newline && has_code_on_line_) {
      out_.push_back({Tok::Newline, "\n", pos_, line_});
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      out_.push_back({Tok::Dedent, "", pos_, line_});
    }
    return std::move(out_);
  }

 private:
  // Measures indentation at the start of a logical line. Returns false when
  // the line is blank or comment-only (consumed up to its newline).
  bool layout() {
    std::size_t col = 0;
    std::size_t p = pos_;
    while (p < s_.size() && (s_[p] == ' ' || s_[p] == '\t' || s_[p] == '\f')) {
      col = s_[p] == '\t' ? (col / 8 + 1) * 8 : col + 1;
      ++p;
    }
    if (p >= s_.size()) {
      pos_ = p;
      return true;
    }
    if (s_[p] == '\n' || s_[p] == '\r' || s_[p] == '#') {
      pos_ = p;
      if (s_[p] == '#') {
        const std::size_t start = p;
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
        out_.push_back({Tok::Comment, std::string(s_.substr(start, pos_ - start)), start, line_});
      }
      while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      if (pos_ < s_.size()) {
        ++pos_;
        ++line_;
      }
      return false;
    }
    pos_ = p;
    if (col > indents_.back()) {
      indents_.push_back(col);
      out_.push_back({Tok::Indent, "", p, line_});
    } else {
      while (col < indents_.back()) {
        indents_.pop_back();
        out_.push_back({Tok::Dedent, "", p, line_});
      }
      if (col != indents_.back()) throw SourceError("unindent does not match any outer level", line_);
    }
    return true;
  }

  bool string_start() const {
    std::size_t p = pos_;
    std::size_t n = 0;
    while (p < s_.size() && n < 2 && std::strchr("rRbBuUfF", s_[p]) != nullptr) {
      ++p;
      ++n;
    }
    return p < s_.size() && (s_[p] == '\'' || s_[p] == '"');
  }

  void string_token() {
    const std::size_t start = pos_;
    const std::size_t start_line = line_;
    while (s_[pos_] != '\'' && s_[pos_] != '"') ++pos_;
    const char q = s_[pos_];
    const bool triple = s_.substr(pos_, 3) == std::string(3, q);
    pos_ += triple ? 3 : 1;
    while (true) {
      if (pos_ >= s_.size()) throw SourceError("unterminated string literal", start_line);
      const char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\n') ++line_;
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!triple) throw SourceError("unterminated string literal", start_line);
        ++line_;
      }
      if (c == q && (!triple || s_.substr(pos_, 3) == std::string(3, q))) {
        pos_ += triple ? 3 : 1;
        break;
      }
      ++pos_;
    }
    out_.push_back({Tok::String, std::string(s_.substr(start, pos_ - start)), start, start_line});
  }

  void number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        if ((c == 'e' || c == 'E') && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '+' || s_[pos_ + 1] == '-') &&
            !(s_.substr(start, 2) == "0x" || s_.substr(start, 2) == "0X")) {
          pos_ += 2;
          continue;
        }
        ++pos_;
      } else {
        break;
      }
    }
    out_.push_back({Tok::Number, std::string(s_.substr(start, pos_ - start)), start, line_});
  }

  void op() {
    const std::size_t start = pos_;
    for (const char* m : kMultiOps) {
      const std::size_t n = std::strlen(m);
      if (s_.substr(pos_, n) == m) {
        pos_ += n;
        out_.push_back({Tok::Op, m, start, line_});
        return;
      }
    }
    const char c = s_[pos_++];
    if (std::strchr("([{", c) != nullptr) ++depth_;
    if (std::strchr(")]}", c) != nullptr) {
      if (depth_ == 0) throw SourceError(std::string("unmatched '") + c + "'", line_);
      --depth_;
    }
    if (std::strchr("+-*/%@&|^~<>()[]{},:.;=!", c) == nullptr) {
      throw SourceError(std::string("invalid character '") + c + "'", line_);
    }
    out_.push_back({Tok::Op, std::string(1, c), start, line_});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  int depth_ = 0;
  bool has_code_on_line_ = false;
  std::vector<std::size_t> indents_;
  std::vector<Token> out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

bool defines_function(const std::vector<Token>& tokens, std::string_view name) {
  int level = 0;
  for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
    if (tokens[i].kind == Tok::Indent) ++level;
    if (tokens[i].kind == Tok::Dedent) --level;
    if (level == 0 && tokens[i].kind == Tok::Name && tokens[i].text == "def" &&
        tokens[i + 1].kind == Tok::Name && tokens[i + 1].text == name &&
        tokens[i + 2].text == "(") {
      return true;
    }
  }
  return false;
}

std::string fingerprint(std::string_view source, std::string_view entry) {
  const std::vector<Token> toks = tokenize(source);
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    switch (t.kind) {
      case Tok::Comment:
        break;
      case Tok::Newline:
        out += "\n";
        break;
      case Tok::Indent:
        out += "{\n";
        break;
      case Tok::Dedent:
        out += "}\n";
        break;
      case Tok::Name:
        if (t.text == entry && !(i > 0 && toks[i - 1].text == ".")) {
          out += "\x01";
        } else {
          out += t.text;
        }
        out += ' ';
        break;
      default:
        out += t.text;
        out += ' ';
    }
  }
  return out;
}

std::string rename_identifier(std::string_view source, std::string_view from, std::string_view to) {
  const std::vector<Token> toks = tokenize(source);
  std::string out;
  std::size_t copied = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != Tok::Name || t.text != from) continue;
    std::size_t j = i;
    while (j > 0 && toks[j - 1].kind == Tok::Comment) --j;
    if (j > 0 && toks[j - 1].kind == Tok::Op && toks[j - 1].text == ".") continue;
    out.append(source.substr(copied, t.offset - copied));
    out.append(to);
    copied = t.offset + t.text.size();
  }
  out.append(source.substr(copied));
  return out;
}

std::size_t count_lines(std::string_view source) {
  std::size_t n = 0;
  bool blank = true;
  for (char c : source) {
    if (c == '\n') {
      if (!blank) ++n;
      blank = true;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
    }
  }
  if (!blank) ++n;
  return n;
}

}  // namespace iosynth::py
