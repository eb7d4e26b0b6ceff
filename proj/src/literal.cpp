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

#include "iosynth/literal.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "iosynth/host.hpp"
#include "iosynth/text.hpp"

namespace iosynth {

LiteralError::LiteralError(const std::string& what, std::size_t offset)
    : std::runtime_error("literal parse error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

// ---------------------------------------------------------------------------
// rendering

namespace {

enum class Mode { Literal, Repr };

std::string repr_string(const std::string& s) {
  const std::u32string cps = utf8_decode(s);
  bool has_single = false;
  bool has_double = false;
  for (char32_t c : cps) {
    has_single |= c == '\'';
    has_double |= c == '"';
  }
  const char32_t quote = (has_single && !has_double) ? U'"' : U'\'';
  std::string out;
  out.push_back(static_cast<char>(quote));
  char buf[16];
  for (char32_t c : cps) {
    if (c == quote || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c == '\t') {
      out += "\\t";
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\r') {
      out += "\\r";
    } else if (c < 0x20 || c == 0x7F) {
      std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned>(c));
      out += buf;
    } else if (c < 0x7F) {
      out.push_back(static_cast<char>(c));
    } else if (is_host_printable(c)) {
      utf8_append(out, c);
    } else if (c <= 0xFF) {
      std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned>(c));
      out += buf;
    } else if (c <= 0xFFFF) {
      std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
      out += buf;
    } else {
      std::snprintf(buf, sizeof buf, "\\U%08x", static_cast<unsigned>(c));
      out += buf;
    }
  }
  out.push_back(static_cast<char>(quote));
  return out;
}

void render(const Value& v, Mode mode, std::string& out);

void render_items(const ValueList& items, Mode mode, std::string& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    render(items[i], mode, out);
  }
}

void render(const Value& v, Mode mode, std::string& out) {
  using K = Value::Kind;
  switch (v.kind()) {
    case K::Null:
      out += "None";
      break;
    case K::Bool:
      out += v.as_bool() ? "True" : "False";
      break;
    case K::Int:
      out += v.as_int().to_string();
      break;
    case K::Float: {
      const double d = v.as_float();
      if (mode == Mode::Literal && !std::isfinite(d)) {
        if (std::isnan(d)) {
          out += "float('nan')";
        } else {
          out += d > 0 ? "float('inf')" : "-float('inf')";
        }
      } else {
        out += float_repr(d);
      }
      break;
    }
    case K::Str:
      out += repr_string(v.as_str());
      break;
    case K::List:
      out.push_back('[');
      render_items(v.items(), mode, out);
      out.push_back(']');
      break;
    case K::Tuple:
      out.push_back('(');
      render_items(v.items(), mode, out);
      if (v.items().size() == 1) out.push_back(',');
      out.push_back(')');
      break;
    case K::Set:
      if (v.items().empty()) {
        out += "set()";
      } else {
        out.push_back('{');
        render_items(v.items(), mode, out);
        out.push_back('}');
      }
      break;
    case K::Map: {
      out.push_back('{');
      bool first = true;
      for (const auto& [k, val] : v.pairs()) {
        if (!first) out += ", ";
        first = false;
        render(k, mode, out);
        out += ": ";
        render(val, mode, out);
      }
      out.push_back('}');
      break;
    }
    case K::Opaque:
      if (mode == Mode::Literal) {
        throw UnrenderableError("value of type '" + v.as_opaque().type_name +
                                "' has no literal form");
      }
      out += v.as_opaque().repr;
      break;
  }
}

}  // namespace

std::string render_literal(const Value& v) {
  std::string out;
  render(v, Mode::Literal, out);
  return out;
}

std::string render_repr(const Value& v) {
  std::string out;
  render(v, Mode::Repr, out);
  return out;
}

std::string render_display(const Value& v) {
  if (v.is(Value::Kind::Str)) return v.as_str();
  return render_repr(v);
}

std::string render_args(const ArgTuple& args) {
  std::string out;
  for (std::size_t i = 0; i < args.args.size(); ++i) {
    if (i) out += ", ";
    out += render_literal(args.args[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  Value parse_document() {
    skip_ws();
    Value v = expression(0);
    skip_ws();
    if (pos_ != in_.size()) fail("unexpected trailing text");
    return v;
  }

  // Parses `a, b, c` up to (not including) `close`, or to end of input when
  // close is '\0'.
  ValueList parse_arg_list(char close) {
    ValueList out;
    skip_ws();
    while (pos_ < in_.size() && peek() != close) {
      out.push_back(expression(0));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        continue;
      }
      break;
    }
    skip_ws();
    return out;
  }

  std::size_t pos() const { return pos_; }
  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }
  void advance() { ++pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw LiteralError(what, pos_); }

 private:
  static constexpr int kMaxDepth = 500;

  void skip_ws() {
    while (pos_ < in_.size()) {
      const char c = in_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (c == '\\' && pos_ + 1 < in_.size() && in_[pos_ + 1] == '\n') {
        pos_ += 2;
      } else if (c == '#') {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool is_ident_start(char c) const {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < in_.size() &&
           (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(in_.substr(start, pos_ - start));
  }

  Value expression(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    skip_ws();
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      Value operand = expression(depth + 1);
      if (!host::is_number(operand)) fail("unary operator needs a number");
      if (c == '+') {
        return operand.is(Value::Kind::Bool) ? Value::integer(BigInt(operand.as_bool() ? 1 : 0))
                                             : operand;
      }
      return host::neg(operand);
    }
    return atom(depth);
  }

  Value atom(int depth) {
    skip_ws();
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < in_.size() &&
         std::isdigit(static_cast<unsigned char>(in_[pos_ + 1])))) {
      return number();
    }
    if (c == '\'' || c == '"') return string_concat();
    if (c == '[') {
      ++pos_;
      ValueList items = items_until(']', depth);
      return Value::list(std::move(items));
    }
    if (c == '(') return paren(depth);
    if (c == '{') return brace(depth);
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      std::string name = identifier();
      skip_ws();
      if ((name == "r" || name == "R" || name == "u" || name == "U") &&
          (peek() == '\'' || peek() == '"') && pos_ == start + name.size()) {
        pos_ = start;
        return string_concat();
      }
      if (name == "None") return Value::null();
      if (name == "True") return Value::boolean(true);
      if (name == "False") return Value::boolean(false);
      if (peek() == '(') return call(name, start, depth);
      pos_ = start;
      fail("unsupported name '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  ValueList items_until(char close, int depth) {
    ValueList items;
    skip_ws();
    while (peek() != close) {
      items.push_back(expression(depth + 1));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
      } else if (peek() != close) {
        fail(std::string("expected ',' or '") + close + "'");
      }
    }
    ++pos_;
    return items;
  }

  Value paren(int depth) {
    ++pos_;
    skip_ws();
    if (peek() == ')') {
      ++pos_;
      return Value::tuple({});
    }
    Value first = expression(depth + 1);
    skip_ws();
    if (peek() == ')') {
      ++pos_;
      return first;  // parenthesized expression
    }
    if (peek() != ',') fail("expected ',' or ')'");
    ++pos_;
    ValueList items{first};
    ValueList rest = items_until(')', depth);
    items.insert(items.end(), rest.begin(), rest.end());
    return Value::tuple(std::move(items));
  }

  Value brace(int depth) {
    ++pos_;
    skip_ws();
    if (peek() == '}') {
      ++pos_;
      return Value::map({});
    }
    const std::size_t first_pos = pos_;
    Value first = expression(depth + 1);
    skip_ws();
    if (peek() == ':') {
      host::MapBuilder map;
      Value key = first;
      std::size_t key_pos = first_pos;
      while (true) {
        expect(':');
        Value val = expression(depth + 1);
        try {
          map.set(key, std::move(val));
        } catch (const host::HostError& e) {
          throw LiteralError(e.what(), key_pos);
        }
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          skip_ws();
        }
        if (peek() == '}') {
          ++pos_;
          return map.build();
        }
        key_pos = pos_;
        key = expression(depth + 1);
      }
    }
    ValueList items{first};
    if (peek() == ',') {
      ++pos_;
      ValueList rest = items_until('}', depth);
      items.insert(items.end(), rest.begin(), rest.end());
    } else {
      expect('}');
    }
    try {
      return host::make_set(items);
    } catch (const host::HostError& e) {
      throw LiteralError(e.what(), first_pos);
    }
  }

  // range(...) arguments produce a list of ints; only valid inside list(),
  // tuple() or set().
  ValueList range_items(int depth) {
    const std::size_t at = pos_;
    expect('(');
    ValueList args = items_until(')', depth);
    if (args.empty() || args.size() > 3) throw LiteralError("range expects 1 to 3 arguments", at);
    std::vector<BigInt> n;
    for (const auto& a : args) {
      if (!(a.is(Value::Kind::Int) || a.is(Value::Kind::Bool))) {
        throw LiteralError("range arguments must be integers", at);
      }
      n.push_back(host::index_value(a));
    }
    BigInt start = 0;
    BigInt stop = 0;
    BigInt step = 1;
    if (n.size() == 1) {
      stop = n[0];
    } else {
      start = n[0];
      stop = n[1];
      if (n.size() == 3) step = n[2];
    }
    if (step.is_zero()) throw LiteralError("range step must not be zero", at);
    ValueList out;
    for (BigInt i = start; step.sign() > 0 ? i < stop : i > stop; i = i + step) {
      out.push_back(Value::integer(i));
      if (out.size() > 10'000'000) throw LiteralError("range too large", at);
    }
    return out;
  }

  ValueList iterable_arg(int depth) {
    skip_ws();
    if (in_.substr(pos_, 5) == "range") {
      const std::size_t save = pos_;
      pos_ += 5;
      skip_ws();
      if (peek() == '(') return range_items(depth);
      pos_ = save;
    }
    Value v = expression(depth + 1);
    try {
      return host::iterate(v);
    } catch (const host::HostError& e) {
      fail(e.what());
    }
  }

  Value call(const std::string& name, std::size_t start, int depth) {
    if (name == "float") {
      expect('(');
      skip_ws();
      Value arg = expression(depth + 1);
      expect(')');
      if (host::is_number(arg)) {
        if (arg.is(Value::Kind::Float)) return arg;
        return host::truediv(arg, Value::integer(BigInt(1)));
      }
      if (!arg.is(Value::Kind::Str)) throw LiteralError("float() needs a number or string", start);
      std::string s = trim(arg.as_str());
      std::string lower;
      for (char ch : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      bool neg = false;
      std::string body = lower;
      if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body = body.substr(1);
      }
      if (body == "nan") return Value::floating(std::nan(""));
      if (body == "inf" || body == "infinity") return Value::floating(neg ? -HUGE_VAL : HUGE_VAL);
      double d = 0;
      auto res = std::from_chars(s.data() + (s[0] == '+' ? 1 : 0), s.data() + s.size(), d);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw LiteralError("could not convert string to float", start);
      }
      return Value::floating(d);
    }
    if (name == "set" || name == "list" || name == "tuple" || name == "frozenset") {
      expect('(');
      skip_ws();
      ValueList items;
      if (peek() != ')') items = iterable_arg(depth);
      expect(')');
      if (name == "list") return Value::list(std::move(items));
      if (name == "tuple") return Value::tuple(std::move(items));
      try {
        return host::make_set(items);
      } catch (const host::HostError& e) {
        throw LiteralError(e.what(), start);
      }
    }
    if (name == "dict") {
      expect('(');
      expect(')');
      return Value::map({});
    }
    pos_ = start;
    fail("unsupported call '" + name + "'");
  }

  Value number() {
    const std::size_t start = pos_;
    // hex/octal/binary integers
    if (peek() == '0' && pos_ + 1 < in_.size() &&
        std::strchr("xXoObB", in_[pos_ + 1]) != nullptr) {
      const char base_ch = static_cast<char>(std::tolower(static_cast<unsigned char>(in_[pos_ + 1])));
      const int base = base_ch == 'x' ? 16 : (base_ch == 'o' ? 8 : 2);
      pos_ += 2;
      BigInt v = 0;
      bool any = false;
      while (pos_ < in_.size()) {
        const char d = in_[pos_];
        int dv = -1;
        if (d >= '0' && d <= '9') dv = d - '0';
        if (d >= 'a' && d <= 'f') dv = d - 'a' + 10;
        if (d >= 'A' && d <= 'F') dv = d - 'A' + 10;
        if (d == '_') {
          ++pos_;
          continue;
        }
        if (dv < 0 || dv >= base) break;
        v = v * BigInt(base) + BigInt(dv);
        any = true;
        ++pos_;
      }
      if (!any) throw LiteralError("bad integer literal", start);
      return Value::integer(v);
    }
    std::string text;
    bool is_float = false;
    while (pos_ < in_.size()) {
      const char d = in_[pos_];
      if (std::isdigit(static_cast<unsigned char>(d))) {
        text.push_back(d);
      } else if (d == '_') {
        // digit separator
      } else if (d == '.') {
        is_float = true;
        text.push_back(d);
      } else if ((d == 'e' || d == 'E')) {
        is_float = true;
        text.push_back('e');
        if (pos_ + 1 < in_.size() && (in_[pos_ + 1] == '+' || in_[pos_ + 1] == '-')) {
          ++pos_;
          text.push_back(in_[pos_]);
        }
      } else {
        break;
      }
      ++pos_;
    }
    if (peek() == 'j' || peek() == 'J') throw LiteralError("complex numbers are unsupported", start);
    if (!is_float) {
      if (text.size() > 1 && text[0] == '0' && text.find_first_not_of('0') != std::string::npos) {
        throw LiteralError("leading zeros in decimal integer literals are not permitted", start);
      }
      return Value::integer(BigInt::parse(text));
    }
    if (text.back() == '.') text.push_back('0');
    if (text.front() == '.') text.insert(text.begin(), '0');
    double d = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), d);
    if (res.ec == std::errc::result_out_of_range) {
      // Overflow maps to inf, underflow to zero, as in the host.
      d = text.find("e-") != std::string::npos ? 0.0 : HUGE_VAL;
    } else if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw LiteralError("bad float literal", start);
    }
    return Value::floating(d);
  }

  Value string_concat() {
    std::string out;
    bool any = false;
    while (true) {
      skip_ws();
      const std::size_t save = pos_;
      bool raw = false;
      if (pos_ < in_.size() && std::strchr("rRuUbBfF", in_[pos_]) != nullptr &&
          pos_ + 1 < in_.size() && (in_[pos_ + 1] == '\'' || in_[pos_ + 1] == '"' ||
                                    std::strchr("rRbB", in_[pos_ + 1]) != nullptr)) {
        std::size_t p = pos_;
        std::string prefix;
        while (p < in_.size() && std::strchr("rRuUbBfF", in_[p]) != nullptr && prefix.size() < 2) {
          prefix.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(in_[p]))));
          ++p;
        }
        if (p < in_.size() && (in_[p] == '\'' || in_[p] == '"')) {
          if (prefix.find('b') != std::string::npos) fail("bytes literals are unsupported");
          if (prefix.find('f') != std::string::npos) fail("f-strings are unsupported");
          raw = prefix.find('r') != std::string::npos;
          pos_ = p;
        }
      }
      if (peek() != '\'' && peek() != '"') {
        pos_ = save;
        break;
      }
      out += string_literal(raw);
      any = true;
    }
    if (!any) fail("expected string literal");
    return Value::str(std::move(out));
  }

  std::string string_literal(bool raw) {
    const std::size_t start = pos_;
    const char q = in_[pos_];
    const bool triple = in_.substr(pos_, 3) == std::string(3, q);
    pos_ += triple ? 3 : 1;
    std::string out;
    while (true) {
      if (pos_ >= in_.size()) throw LiteralError("unterminated string literal", start);
      const char c = in_[pos_];
      if (c == q) {
        if (!triple) {
          ++pos_;
          return out;
        }
        if (in_.substr(pos_, 3) == std::string(3, q)) {
          pos_ += 3;
          return out;
        }
      }
      if (c == '\n' && !triple) throw LiteralError("unterminated string literal", start);
      if (c != '\\') {
        out.push_back(c);
        ++pos_;
        continue;
      }
      if (pos_ + 1 >= in_.size()) throw LiteralError("unterminated string literal", start);
      const char e = in_[pos_ + 1];
      if (raw) {
        out.push_back('\\');
        out.push_back(e);
        pos_ += 2;
        continue;
      }
      pos_ += 2;
      switch (e) {
        case '\n': break;
        case '\\': out.push_back('\\'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        case 'a': out.push_back('\a'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'v': out.push_back('\v'); break;
        case 'x':
          utf8_append(out, hex_escape(2, start));
          break;
        case 'u':
          utf8_append(out, hex_escape(4, start));
          break;
        case 'U':
          utf8_append(out, hex_escape(8, start));
          break;
        case 'N':
          throw LiteralError("named unicode escapes are unsupported", start);
        default:
          if (e >= '0' && e <= '7') {
            char32_t v = static_cast<char32_t>(e - '0');
            for (int k = 0; k < 2 && pos_ < in_.size() && in_[pos_] >= '0' && in_[pos_] <= '7'; ++k) {
              v = v * 8 + static_cast<char32_t>(in_[pos_] - '0');
              ++pos_;
            }
            utf8_append(out, v);
          } else {
            out.push_back('\\');
            out.push_back(e);
          }
      }
    }
  }

  char32_t hex_escape(int digits, std::size_t start) {
    char32_t v = 0;
    for (int k = 0; k < digits; ++k) {
      if (pos_ >= in_.size() || !std::isxdigit(static_cast<unsigned char>(in_[pos_]))) {
        throw LiteralError("truncated escape sequence", start);
      }
      const char d = static_cast<char>(std::tolower(static_cast<unsigned char>(in_[pos_])));
      v = v * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(d)) ? d - '0' : d - 'a' + 10);
      ++pos_;
    }
    if (v > 0x10FFFF) throw LiteralError("escape out of range", start);
    return v;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

Value parse_literal(std::string_view text) { return Parser(text).parse_document(); }

ArgTuple parse_args(std::string_view text) {
  Parser p(text);
  ValueList args = p.parse_arg_list('\0');
  if (p.pos() != text.size()) p.fail("unexpected trailing text in argument list");
  return ArgTuple{std::move(args)};
}

ArgTuple parse_call(std::string_view text, std::string_view callee, std::size_t& end) {
  std::size_t at = 0;
  while (true) {
    at = text.find(callee, at);
    if (at == std::string_view::npos) {
      throw LiteralError("call to '" + std::string(callee) + "' not found", 0);
    }
    const bool boundary_before =
        at == 0 || !(std::isalnum(static_cast<unsigned char>(text[at - 1])) || text[at - 1] == '_');
    std::size_t p = at + callee.size();
    while (p < text.size() && (text[p] == ' ' || text[p] == '\t')) ++p;
    if (boundary_before && p < text.size() && text[p] == '(') {
      Parser parser(text.substr(p + 1));
      ValueList args = parser.parse_arg_list(')');
      if (parser.peek() != ')') parser.fail("expected ')' closing the call");
      end = p + 1 + parser.pos() + 1;
      return ArgTuple{std::move(args)};
    }
    at += callee.size();
  }
}

}  // namespace iosynth
