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

#include "iosynth/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <system_error>

#include "iosynth/text.hpp"

namespace iosynth {

Value Value::list(ValueList items) {
  return Value(Rep(ListRep{std::make_shared<const ValueList>(std::move(items))}));
}

Value Value::tuple(ValueList items) {
  return Value(Rep(TupleRep{std::make_shared<const ValueList>(std::move(items))}));
}

Value Value::map(ValuePairs pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (structural_eq(pairs[i].first, pairs[j].first)) {
        throw std::invalid_argument("duplicate map key");
      }
    }
  }
  return Value(Rep(MapRep{std::make_shared<const ValuePairs>(std::move(pairs))}));
}

Value Value::set(ValueList items) {
  std::sort(items.begin(), items.end(),
            [](const Value& a, const Value& b) { return structural_compare(a, b) < 0; });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const Value& a, const Value& b) { return structural_eq(a, b); }),
              items.end());
  return Value(Rep(SetRep{std::make_shared<const ValueList>(std::move(items))}));
}

Value Value::opaque(std::string type_name, std::string repr) {
  return Value(Rep(OpaqueRep{
      std::make_shared<const OpaqueValue>(OpaqueValue{std::move(type_name), std::move(repr)})}));
}

const ValueList& Value::items() const {
  switch (kind()) {
    case Kind::List:
      return *std::get<ListRep>(rep_).items;
    case Kind::Tuple:
      return *std::get<TupleRep>(rep_).items;
    case Kind::Set:
      return *std::get<SetRep>(rep_).items;
    default:
      throw std::bad_variant_access();
  }
}

const Value* Value::field(std::string_view key) const {
  if (!is(Kind::Map)) return nullptr;
  for (const auto& [k, v] : pairs()) {
    if (k.is(Kind::Str) && k.as_str() == key) return &v;
  }
  return nullptr;
}

bool Value::contains_opaque() const {
  switch (kind()) {
    case Kind::Opaque:
      return true;
    case Kind::List:
    case Kind::Tuple:
    case Kind::Set:
      return std::any_of(items().begin(), items().end(),
                         [](const Value& v) { return v.contains_opaque(); });
    case Kind::Map:
      return std::any_of(pairs().begin(), pairs().end(), [](const auto& p) {
        return p.first.contains_opaque() || p.second.contains_opaque();
      });
    default:
      return false;
  }
}

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Null: return "Null";
    case Value::Kind::Bool: return "Bool";
    case Value::Kind::Int: return "Int";
    case Value::Kind::Float: return "Float";
    case Value::Kind::Str: return "Str";
    case Value::Kind::List: return "List";
    case Value::Kind::Tuple: return "Tuple";
    case Value::Kind::Map: return "Map";
    case Value::Kind::Set: return "Set";
    case Value::Kind::Opaque: return "Opaque";
  }
  return "?";
}

namespace {

int compare_floats(double a, double b) {
  const bool an = std::isnan(a);
  const bool bn = std::isnan(b);
  if (an || bn) return static_cast<int>(an) - static_cast<int>(bn);
  if (a < b) return -1;
  if (a > b) return 1;
  return static_cast<int>(std::signbit(b)) - static_cast<int>(std::signbit(a));
}

int compare_lists(const ValueList& a, const ValueList& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = structural_compare(a[i], b[i]); c != 0) return c;
  }
  return (a.size() > b.size()) - (a.size() < b.size());
}

int three_way(const std::string& a, const std::string& b) {
  const int c = a.compare(b);
  return (c > 0) - (c < 0);
}

}  // namespace

int structural_compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  }
  switch (a.kind()) {
    case Value::Kind::Null:
      return 0;
    case Value::Kind::Bool:
      return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
    case Value::Kind::Int: {
      const auto c = a.as_int() <=> b.as_int();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Value::Kind::Float:
      return compare_floats(a.as_float(), b.as_float());
    case Value::Kind::Str:
      return three_way(a.as_str(), b.as_str());
    case Value::Kind::List:
    case Value::Kind::Tuple:
    case Value::Kind::Set:
      return compare_lists(a.items(), b.items());
    case Value::Kind::Map: {
      const auto& pa = a.pairs();
      const auto& pb = b.pairs();
      const std::size_t n = std::min(pa.size(), pb.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = structural_compare(pa[i].first, pb[i].first); c != 0) return c;
        if (int c = structural_compare(pa[i].second, pb[i].second); c != 0) return c;
      }
      return (pa.size() > pb.size()) - (pa.size() < pb.size());
    }
    case Value::Kind::Opaque: {
      if (int c = three_way(a.as_opaque().type_name, b.as_opaque().type_name); c != 0) return c;
      return three_way(a.as_opaque().repr, b.as_opaque().repr);
    }
  }
  return 0;
}

bool structural_eq(const Value& a, const Value& b) { return structural_compare(a, b) == 0; }

Outcome Outcome::err(std::string kind, std::string message) {
  if (kind.empty()) throw std::invalid_argument("error outcome needs a kind");
  return Outcome(std::move(kind), std::move(message));
}

bool structural_eq(const Outcome& a, const Outcome& b) {
  if (a.is_ok() != b.is_ok()) return false;
  if (a.is_ok()) return structural_eq(a.value(), b.value());
  return a.error_kind() == b.error_kind() && a.error_message() == b.error_message();
}

bool structural_eq(const ArgTuple& a, const ArgTuple& b) {
  return a.args.size() == b.args.size() && compare_lists(a.args, b.args) == 0;
}

// ---------------------------------------------------------------------------
// float repr

std::string float_repr(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::scientific);
  std::string sci(buf, res.ptr);
  // sci looks like "-1.2345e+17" or "5e-07".
  bool neg = false;
  std::size_t pos = 0;
  if (sci[0] == '-') {
    neg = true;
    pos = 1;
  }
  const std::size_t epos = sci.find('e');
  std::string digits;
  for (std::size_t i = pos; i < epos; ++i) {
    if (sci[i] != '.') digits.push_back(sci[i]);
  }
  const int exp10 = std::stoi(sci.substr(epos + 1));
  std::string out = neg ? "-" : "";
  if (exp10 >= -4 && exp10 < 16) {
    if (exp10 >= 0) {
      const auto int_len = static_cast<std::size_t>(exp10) + 1;
      std::string int_part = digits.substr(0, std::min(int_len, digits.size()));
      while (int_part.size() < int_len) int_part.push_back('0');
      std::string frac = digits.size() > int_len ? digits.substr(int_len) : "0";
      out += int_part + "." + frac;
    } else {
      out += "0." + std::string(static_cast<std::size_t>(-exp10 - 1), '0') + digits;
    }
  } else {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    char ebuf[16];
    std::snprintf(ebuf, sizeof ebuf, "e%c%02d", exp10 < 0 ? '-' : '+', std::abs(exp10));
    out += ebuf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// encoding

DecodeError::DecodeError(const std::string& what, std::size_t offset)
    : std::runtime_error("malformed encoding at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

namespace {

void encode_into(const Value& v, std::string& out);

void encode_items(const ValueList& items, char open, char close, std::string& out) {
  out.push_back(open);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(',');
    encode_into(items[i], out);
  }
  out.push_back(close);
}

void encode_into(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::Null:
      out.push_back('N');
      break;
    case Value::Kind::Bool:
      out.push_back(v.as_bool() ? 'T' : 'F');
      break;
    case Value::Kind::Int:
      out.push_back('i');
      out += v.as_int().to_string();
      break;
    case Value::Kind::Float:
      out.push_back('d');
      out += float_repr(v.as_float());
      break;
    case Value::Kind::Str:
      out.push_back('s');
      out += json_quote(v.as_str());
      break;
    case Value::Kind::List:
      encode_items(v.items(), '[', ']', out);
      break;
    case Value::Kind::Tuple:
      encode_items(v.items(), '(', ')', out);
      break;
    case Value::Kind::Set:
      encode_items(v.items(), '<', '>', out);
      break;
    case Value::Kind::Map: {
      out.push_back('{');
      bool first = true;
      for (const auto& [k, val] : v.pairs()) {
        if (!first) out.push_back(',');
        first = false;
        encode_into(k, out);
        out.push_back(':');
        encode_into(val, out);
      }
      out.push_back('}');
      break;
    }
    case Value::Kind::Opaque:
      out.push_back('o');
      out += json_quote(v.as_opaque().type_name);
      out += json_quote(v.as_opaque().repr);
      break;
  }
}

class Decoder {
 public:
  explicit Decoder(std::string_view in) : in_(in) {}

  Value document() {
    Value v = value(0);
    if (pos_ != in_.size()) fail("trailing bytes");
    return v;
  }

 private:
  static constexpr int kMaxDepth = 2000;

  [[noreturn]] void fail(const std::string& what) const { throw DecodeError(what, pos_); }

  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c || pos_ >= in_.size()) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string quoted() {
    if (peek() != '"') fail("expected string");
    std::size_t consumed = 0;
    auto s = json_unquote(in_.substr(pos_), consumed);
    if (!s) fail("bad string literal");
    pos_ += consumed;
    return *s;
  }

  ValueList sequence(char close, int depth) {
    ValueList items;
    if (peek() == close) {
      ++pos_;
      return items;
    }
    while (true) {
      items.push_back(value(depth + 1));
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(close);
      return items;
    }
  }

  Value value(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    if (pos_ >= in_.size()) fail("unexpected end of input");
    const std::size_t start = pos_;
    const char tag = in_[pos_++];
    switch (tag) {
      case 'N':
        return Value::null();
      case 'T':
        return Value::boolean(true);
      case 'F':
        return Value::boolean(false);
      case 'i': {
        std::size_t end = pos_;
        if (end < in_.size() && in_[end] == '-') ++end;
        while (end < in_.size() && in_[end] >= '0' && in_[end] <= '9') ++end;
        auto text = in_.substr(pos_, end - pos_);
        if (text.empty() || text == "-") fail("bad int");
        const auto digits = text.front() == '-' ? text.substr(1) : text;
        if (digits.size() > 1 && digits.front() == '0') fail("bad int: leading zero");
        pos_ = end;
        return Value::integer(BigInt::parse(text));
      }
      case 'd': {
        std::size_t end = pos_;
        while (end < in_.size() && std::strchr("0123456789+-.eEnaif", in_[end]) != nullptr) ++end;
        auto text = in_.substr(pos_, end - pos_);
        double d = 0;
        if (text == "nan") {
          d = std::nan("");
        } else if (text == "inf") {
          d = HUGE_VAL;
        } else if (text == "-inf") {
          d = -HUGE_VAL;
        } else {
          auto res = std::from_chars(text.data(), text.data() + text.size(), d);
          if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
            fail("bad float");
          }
        }
        pos_ = end;
        return Value::floating(d);
      }
      case 's':
        return Value::str(quoted());
      case '[':
        return Value::list(sequence(']', depth));
      case '(':
        return Value::tuple(sequence(')', depth));
      case '<': {
        ValueList items = sequence('>', depth);
        const std::size_t n = items.size();
        Value set = Value::set(std::move(items));
        if (set.items().size() != n) throw DecodeError("duplicate set element", start);
        return set;
      }
      case '{': {
        ValuePairs pairs;
        if (peek() == '}') {
          ++pos_;
        } else {
          while (true) {
            Value k = value(depth + 1);
            expect(':');
            Value v = value(depth + 1);
            pairs.emplace_back(std::move(k), std::move(v));
            if (peek() == ',') {
              ++pos_;
              continue;
            }
            expect('}');
            break;
          }
        }
        try {
          return Value::map(std::move(pairs));
        } catch (const std::invalid_argument&) {
          throw DecodeError("duplicate map key", start);
        }
      }
      case 'o': {
        std::string type = quoted();
        std::string repr = quoted();
        return Value::opaque(std::move(type), std::move(repr));
      }
      default:
        pos_ = start;
        fail(std::string("unknown tag '") + tag + "'");
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode(const Value& v) {
  std::string out;
  encode_into(v, out);
  return out;
}

Value decode(std::string_view bytes) { return Decoder(bytes).document(); }

Value outcome_to_value(const Outcome& o) {
  if (o.is_ok()) return Value::map({{Value::str("ok"), o.value()}});
  return Value::map({{Value::str("err"), Value::str(o.error_kind())},
                     {Value::str("message"), Value::str(o.error_message())}});
}

Outcome outcome_from_value(const Value& v) {
  if (!v.is(Value::Kind::Map)) throw std::invalid_argument("outcome must be a map");
  if (const Value* ok = v.field("ok")) return Outcome::ok(*ok);
  const Value* kind = v.field("err");
  if (!kind || !kind->is(Value::Kind::Str) || kind->as_str().empty()) {
    throw std::invalid_argument("outcome needs 'ok' or a non-empty 'err'");
  }
  const Value* msg = v.field("message");
  return Outcome::err(kind->as_str(),
                      msg && msg->is(Value::Kind::Str) ? msg->as_str() : std::string());
}

}  // namespace iosynth
