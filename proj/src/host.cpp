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

#include "iosynth/host.hpp"

#include <algorithm>
#include <cmath>

#include "iosynth/literal.hpp"
#include "iosynth/text.hpp"

namespace iosynth::host {

using K = Value::Kind;

namespace {

[[noreturn]] void type_error(const std::string& msg) { throw HostError("TypeError", msg); }

std::string quoted_type(const Value& v) { return "'" + type_name(v) + "'"; }

[[noreturn]] void unsupported(const char* op, const Value& a, const Value& b) {
  type_error(std::string("unsupported operand type(s) for ") + op + ": " + quoted_type(a) +
             " and " + quoted_type(b));
}

[[noreturn]] void unorderable(const char* op, const Value& a, const Value& b) {
  type_error(std::string("'") + op + "' not supported between instances of " + quoted_type(a) +
             " and " + quoted_type(b));
}

bool is_intlike(const Value& v) { return v.is(K::Int) || v.is(K::Bool); }

BigInt as_bigint(const Value& v) {
  if (v.is(K::Bool)) return BigInt(v.as_bool() ? 1 : 0);
  return v.as_int();
}

double int_to_float(const BigInt& i) {
  try {
    return i.to_double();
  } catch (const std::overflow_error&) {
    throw HostError("OverflowError", "int too large to convert to float");
  }
}

double as_double(const Value& v) {
  if (v.is(K::Float)) return v.as_float();
  return int_to_float(as_bigint(v));
}

// Three-way numeric comparison; nullopt when unordered (NaN involved).
std::optional<int> num_compare(const Value& a, const Value& b) {
  if (is_intlike(a) && is_intlike(b)) {
    const auto c = as_bigint(a) <=> as_bigint(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.is(K::Float) && b.is(K::Float)) {
    const double x = a.as_float();
    const double y = b.as_float();
    if (std::isnan(x) || std::isnan(y)) return std::nullopt;
    return (x > y) - (x < y);
  }
  if (a.is(K::Float)) {
    if (std::isnan(a.as_float())) return std::nullopt;
    return -BigInt::compare(as_bigint(b), a.as_float());
  }
  if (std::isnan(b.as_float())) return std::nullopt;
  return BigInt::compare(as_bigint(a), b.as_float());
}

bool eq_impl(const Value& a, const Value& b, bool reflexive);

bool seq_eq(const ValueList& a, const ValueList& b, bool reflexive) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq_impl(a[i], b[i], reflexive)) return false;
  }
  return true;
}

bool eq_impl(const Value& a, const Value& b, bool reflexive) {
  if (is_number(a) && is_number(b)) {
    if (reflexive && a.is(K::Float) && b.is(K::Float) && std::isnan(a.as_float()) &&
        std::isnan(b.as_float())) {
      return true;
    }
    auto c = num_compare(a, b);
    return c && *c == 0;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Null:
      return true;
    case K::Str:
      return a.as_str() == b.as_str();
    case K::List:
    case K::Tuple:
      return seq_eq(a.items(), b.items(), reflexive);
    case K::Set: {
      if (a.items().size() != b.items().size()) return false;
      for (const auto& x : a.items()) {
        bool found = std::any_of(b.items().begin(), b.items().end(),
                                 [&](const Value& y) { return eq_impl(x, y, reflexive); });
        if (!found) return false;
      }
      return true;
    }
    case K::Map: {
      if (a.pairs().size() != b.pairs().size()) return false;
      for (const auto& [k, v] : a.pairs()) {
        auto it = std::find_if(b.pairs().begin(), b.pairs().end(),
                               [&](const auto& p) { return eq_impl(k, p.first, reflexive); });
        if (it == b.pairs().end() || !eq_impl(v, it->second, reflexive)) return false;
      }
      return true;
    }
    case K::Opaque:
      return a.as_opaque().type_name == b.as_opaque().type_name &&
             a.as_opaque().repr == b.as_opaque().repr;
    default:
      return false;
  }
}

bool is_subset(const Value& a, const Value& b) {
  for (const auto& x : a.items()) {
    if (!std::any_of(b.items().begin(), b.items().end(),
                     [&](const Value& y) { return eq(x, y); })) {
      return false;
    }
  }
  return true;
}

enum class Cmp { Lt, Le, Gt, Ge };

const char* cmp_symbol(Cmp op) {
  switch (op) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

bool apply_three_way(int c, Cmp op) {
  switch (op) {
    case Cmp::Lt: return c < 0;
    case Cmp::Le: return c <= 0;
    case Cmp::Gt: return c > 0;
    case Cmp::Ge: return c >= 0;
  }
  return false;
}

bool rich_compare(const Value& a, const Value& b, Cmp op) {
  if (is_number(a) && is_number(b)) {
    auto c = num_compare(a, b);
    return c && apply_three_way(*c, op);
  }
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
      case K::Str:
        // UTF-8 byte order coincides with code point order.
        return apply_three_way(a.as_str().compare(b.as_str()) < 0   ? -1
                               : a.as_str().compare(b.as_str()) > 0 ? 1
                                                                    : 0,
                               op);
      case K::List:
      case K::Tuple: {
        const auto& x = a.items();
        const auto& y = b.items();
        const std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
          if (!eq(x[i], y[i])) return rich_compare(x[i], y[i], op);
        }
        const int c = (x.size() > y.size()) - (x.size() < y.size());
        return apply_three_way(c, op);
      }
      case K::Set: {
        const std::size_t na = a.items().size();
        const std::size_t nb = b.items().size();
        switch (op) {
          case Cmp::Lt: return na < nb && is_subset(a, b);
          case Cmp::Le: return na <= nb && is_subset(a, b);
          case Cmp::Gt: return na > nb && is_subset(b, a);
          case Cmp::Ge: return na >= nb && is_subset(b, a);
        }
        return false;
      }
      default:
        break;
    }
  }
  unorderable(cmp_symbol(op), a, b);
}

Value int_or_bool_result(BigInt i) { return Value::integer(std::move(i)); }

std::int64_t clamp_count(const BigInt& n) {
  if (n.sign() <= 0) return 0;
  if (!n.fits_int64() || n.as_int64() > 50'000'000) {
    throw HostError("MemoryError", "");
  }
  return n.as_int64();
}

Value repeat(const Value& seq, const BigInt& times) {
  const std::int64_t n = clamp_count(times);
  if (seq.is(K::Str)) {
    if (static_cast<double>(seq.as_str().size()) * static_cast<double>(n) > 5e7) {
      throw HostError("MemoryError", "");
    }
    std::string out;
    out.reserve(seq.as_str().size() * static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out += seq.as_str();
    return Value::str(std::move(out));
  }
  if (static_cast<double>(seq.items().size()) * static_cast<double>(n) > 5e7) {
    throw HostError("MemoryError", "");
  }
  ValueList out;
  out.reserve(seq.items().size() * static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.insert(out.end(), seq.items().begin(), seq.items().end());
  return seq.is(K::List) ? Value::list(std::move(out)) : Value::tuple(std::move(out));
}

// CPython float_divmod.
void float_divmod(double vx, double wx, double& floordiv_out, double& mod_out) {
  double m = std::fmod(vx, wx);
  double div = (vx - m) / wx;
  if (m != 0.0) {
    if ((wx < 0) != (m < 0)) {
      m += wx;
      div -= 1.0;
    }
  } else {
    m = std::copysign(0.0, wx);
  }
  double fd = 0.0;
  if (div != 0.0) {
    fd = std::floor(div);
    if (div - fd > 0.5) fd += 1.0;
  } else {
    fd = std::copysign(0.0, vx / wx);
  }
  floordiv_out = fd;
  mod_out = m;
}

std::int64_t normalize_index(std::int64_t i, std::int64_t n) { return i < 0 ? i + n : i; }

}  // namespace

std::string type_name(const Value& v) {
  switch (v.kind()) {
    case K::Null: return "NoneType";
    case K::Bool: return "bool";
    case K::Int: return "int";
    case K::Float: return "float";
    case K::Str: return "str";
    case K::List: return "list";
    case K::Tuple: return "tuple";
    case K::Map: return "dict";
    case K::Set: return "set";
    case K::Opaque: return v.as_opaque().type_name;
  }
  return "object";
}

bool is_number(const Value& v) { return v.is(K::Bool) || v.is(K::Int) || v.is(K::Float); }

bool truthy(const Value& v) {
  switch (v.kind()) {
    case K::Null: return false;
    case K::Bool: return v.as_bool();
    case K::Int: return !v.as_int().is_zero();
    case K::Float: return v.as_float() != 0.0;
    case K::Str: return !v.as_str().empty();
    case K::List:
    case K::Tuple:
    case K::Set: return !v.items().empty();
    case K::Map: return !v.pairs().empty();
    case K::Opaque: return true;
  }
  return true;
}

bool hashable(const Value& v) {
  switch (v.kind()) {
    case K::List:
    case K::Map:
    case K::Set:
      return false;
    case K::Tuple:
      return std::all_of(v.items().begin(), v.items().end(),
                         [](const Value& x) { return hashable(x); });
    default:
      return true;
  }
}

void require_hashable(const Value& v) {
  if (hashable(v)) return;
  if (v.is(K::Tuple)) {
    for (const auto& x : v.items()) require_hashable(x);
  }
  type_error("unhashable type: " + quoted_type(v));
}

bool eq(const Value& a, const Value& b) { return eq_impl(a, b, false); }
bool eq_reflexive(const Value& a, const Value& b) { return eq_impl(a, b, true); }
bool lt(const Value& a, const Value& b) { return rich_compare(a, b, Cmp::Lt); }
bool le(const Value& a, const Value& b) { return rich_compare(a, b, Cmp::Le); }
bool gt(const Value& a, const Value& b) { return rich_compare(a, b, Cmp::Gt); }
bool ge(const Value& a, const Value& b) { return rich_compare(a, b, Cmp::Ge); }

Value integer(std::int64_t i) { return Value::integer(BigInt(i)); }
Value boolean(bool b) { return Value::boolean(b); }

Value add(const Value& a, const Value& b) {
  if (is_number(a) && is_number(b)) {
    if (is_intlike(a) && is_intlike(b)) return int_or_bool_result(as_bigint(a) + as_bigint(b));
    return Value::floating(as_double(a) + as_double(b));
  }
  if (a.is(K::Str)) {
    if (!b.is(K::Str)) {
      type_error("can only concatenate str (not \"" + type_name(b) + "\") to str");
    }
    return Value::str(a.as_str() + b.as_str());
  }
  if (a.is(K::List) || a.is(K::Tuple)) {
    if (b.kind() != a.kind()) {
      type_error("can only concatenate " + type_name(a) + " (not \"" + type_name(b) + "\") to " +
                 type_name(a));
    }
    ValueList out = a.items();
    out.insert(out.end(), b.items().begin(), b.items().end());
    return a.is(K::List) ? Value::list(std::move(out)) : Value::tuple(std::move(out));
  }
  unsupported("+", a, b);
}

Value sub(const Value& a, const Value& b) {
  if (is_number(a) && is_number(b)) {
    if (is_intlike(a) && is_intlike(b)) return int_or_bool_result(as_bigint(a) - as_bigint(b));
    return Value::floating(as_double(a) - as_double(b));
  }
  if (a.is(K::Set) && b.is(K::Set)) {
    ValueList out;
    for (const auto& x : a.items()) {
      if (!contains(b, x)) out.push_back(x);
    }
    return Value::set(std::move(out));
  }
  unsupported("-", a, b);
}

Value mul(const Value& a, const Value& b) {
  if (is_number(a) && is_number(b)) {
    if (is_intlike(a) && is_intlike(b)) return int_or_bool_result(as_bigint(a) * as_bigint(b));
    return Value::floating(as_double(a) * as_double(b));
  }
  const bool a_seq = a.is(K::Str) || a.is(K::List) || a.is(K::Tuple);
  const bool b_seq = b.is(K::Str) || b.is(K::List) || b.is(K::Tuple);
  if (a_seq && is_intlike(b)) return repeat(a, as_bigint(b));
  if (b_seq && is_intlike(a)) return repeat(b, as_bigint(a));
  if ((a_seq && b.is(K::Float)) || (b_seq && a.is(K::Float))) {
    type_error("can't multiply sequence by non-int of type 'float'");
  }
  unsupported("*", a, b);
}

Value truediv(const Value& a, const Value& b) {
  if (!(is_number(a) && is_number(b))) unsupported("/", a, b);
  if (is_intlike(a) && is_intlike(b)) {
    const BigInt y = as_bigint(b);
    if (y.is_zero()) throw HostError("ZeroDivisionError", "division by zero");
    try {
      return Value::floating(BigInt::true_div(as_bigint(a), y));
    } catch (const std::overflow_error&) {
      throw HostError("OverflowError", "integer division result too large for a float");
    }
  }
  const double y = as_double(b);
  if (y == 0.0) throw HostError("ZeroDivisionError", "float division by zero");
  return Value::floating(as_double(a) / y);
}

Value floordiv(const Value& a, const Value& b) {
  if (!(is_number(a) && is_number(b))) unsupported("//", a, b);
  if (is_intlike(a) && is_intlike(b)) {
    const BigInt y = as_bigint(b);
    if (y.is_zero()) throw HostError("ZeroDivisionError", "integer division or modulo by zero");
    return Value::integer(BigInt::floor_div(as_bigint(a), y));
  }
  const double y = as_double(b);
  if (y == 0.0) throw HostError("ZeroDivisionError", "float floor division by zero");
  double q = 0;
  double m = 0;
  float_divmod(as_double(a), y, q, m);
  return Value::floating(q);
}

Value mod(const Value& a, const Value& b) {
  if (a.is(K::Str)) {
    // printf-style formatting is not modelled; a format string without
    // directives raises exactly this in the host.
    type_error("not all arguments converted during string formatting");
  }
  if (!(is_number(a) && is_number(b))) unsupported("%", a, b);
  if (is_intlike(a) && is_intlike(b)) {
    const BigInt y = as_bigint(b);
    if (y.is_zero()) throw HostError("ZeroDivisionError", "integer division or modulo by zero");
    return Value::integer(BigInt::floor_mod(as_bigint(a), y));
  }
  const double y = as_double(b);
  if (y == 0.0) throw HostError("ZeroDivisionError", "float modulo");
  double q = 0;
  double m = 0;
  float_divmod(as_double(a), y, q, m);
  return Value::floating(m);
}

Value neg(const Value& a) {
  if (is_intlike(a)) return Value::integer(-as_bigint(a));
  if (a.is(K::Float)) return Value::floating(-a.as_float());
  type_error("bad operand type for unary -: " + quoted_type(a));
}

Value abs(const Value& a) {
  if (is_intlike(a)) return Value::integer(as_bigint(a).abs());
  if (a.is(K::Float)) return Value::floating(std::fabs(a.as_float()));
  type_error("bad operand type for abs(): " + quoted_type(a));
}

std::int64_t len(const Value& v) {
  switch (v.kind()) {
    case K::Str:
      return static_cast<std::int64_t>(utf8_decode(v.as_str()).size());
    case K::List:
    case K::Tuple:
    case K::Set:
      return static_cast<std::int64_t>(v.items().size());
    case K::Map:
      return static_cast<std::int64_t>(v.pairs().size());
    default:
      type_error("object of type " + quoted_type(v) + " has no len()");
  }
}

ValueList iterate(const Value& v) {
  switch (v.kind()) {
    case K::List:
    case K::Tuple:
    case K::Set:
      return v.items();
    case K::Str: {
      ValueList out;
      for (char32_t c : utf8_decode(v.as_str())) {
        std::string s;
        utf8_append(s, c);
        out.push_back(Value::str(std::move(s)));
      }
      return out;
    }
    case K::Map: {
      ValueList out;
      for (const auto& p : v.pairs()) out.push_back(p.first);
      return out;
    }
    default:
      type_error(quoted_type(v) + " object is not iterable");
  }
}

bool contains(const Value& container, const Value& item) {
  switch (container.kind()) {
    case K::Str:
      if (!item.is(K::Str)) {
        type_error("'in <string>' requires string as left operand, not " + type_name(item));
      }
      return container.as_str().find(item.as_str()) != std::string::npos;
    case K::List:
    case K::Tuple:
      return std::any_of(container.items().begin(), container.items().end(),
                         [&](const Value& x) { return eq(x, item); });
    case K::Set:
      require_hashable(item);
      return std::any_of(container.items().begin(), container.items().end(),
                         [&](const Value& x) { return eq(x, item); });
    case K::Map:
      require_hashable(item);
      return std::any_of(container.pairs().begin(), container.pairs().end(),
                         [&](const auto& p) { return eq(p.first, item); });
    default:
      type_error("argument of type " + quoted_type(container) + " is not iterable");
  }
}

BigInt index_value(const Value& v) {
  if (is_intlike(v)) return as_bigint(v);
  type_error(quoted_type(v) + " object cannot be interpreted as an integer");
}

Value getitem(const Value& container, const Value& index) {
  switch (container.kind()) {
    case K::Str:
    case K::List:
    case K::Tuple: {
      if (!is_intlike(index)) {
        type_error(type_name(container) + " indices must be integers or slices, not " +
                   type_name(index));
      }
      const BigInt raw = as_bigint(index);
      const std::int64_t n = len(container);
      const std::string msg = std::string(container.is(K::Str) ? "string" : type_name(container)) +
                              " index out of range";
      if (!raw.fits_int64()) throw HostError("IndexError", msg);
      const std::int64_t i = normalize_index(raw.as_int64(), n);
      if (i < 0 || i >= n) throw HostError("IndexError", msg);
      if (container.is(K::Str)) {
        std::string s;
        utf8_append(s, utf8_decode(container.as_str())[static_cast<std::size_t>(i)]);
        return Value::str(std::move(s));
      }
      return container.items()[static_cast<std::size_t>(i)];
    }
    case K::Map: {
      require_hashable(index);
      for (const auto& [k, v] : container.pairs()) {
        if (eq(k, index)) return v;
      }
      throw HostError("KeyError", repr(index));
    }
    default:
      type_error(quoted_type(container) + " object is not subscriptable");
  }
}

Value slice(const Value& seq, std::optional<BigInt> start, std::optional<BigInt> stop,
            std::optional<BigInt> step) {
  if (seq.is(K::Map)) type_error("unhashable type: 'slice'");
  if (!(seq.is(K::Str) || seq.is(K::List) || seq.is(K::Tuple))) {
    type_error(quoted_type(seq) + " object is not subscriptable");
  }
  const std::int64_t n = len(seq);
  std::int64_t st = 1;
  if (step) {
    if (step->is_zero()) throw HostError("ValueError", "slice step cannot be zero");
    st = step->fits_int64() ? step->as_int64() : (step->sign() > 0 ? INT64_MAX : -INT64_MAX);
  }
  auto clamp = [&](const std::optional<BigInt>& b, std::int64_t dflt) -> std::int64_t {
    if (!b) return dflt;
    std::int64_t v = 0;
    if (!b->fits_int64()) {
      v = b->sign() > 0 ? INT64_MAX / 2 : -(INT64_MAX / 2);
    } else {
      v = b->as_int64();
    }
    if (v < 0) {
      v += n;
      if (v < 0) v = st < 0 ? -1 : 0;
    } else if (v >= n) {
      v = st < 0 ? n - 1 : n;
    }
    return v;
  };
  const std::int64_t lo = clamp(start, st < 0 ? n - 1 : 0);
  const std::int64_t hi = clamp(stop, st < 0 ? -1 : n);
  std::vector<std::int64_t> idx;
  if (st > 0) {
    for (std::int64_t i = lo; i < hi; i += st) idx.push_back(i);
  } else {
    for (std::int64_t i = lo; i > hi; i += st) idx.push_back(i);
  }
  if (seq.is(K::Str)) {
    const std::u32string cps = utf8_decode(seq.as_str());
    std::string out;
    for (auto i : idx) utf8_append(out, cps[static_cast<std::size_t>(i)]);
    return Value::str(std::move(out));
  }
  ValueList out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(seq.items()[static_cast<std::size_t>(i)]);
  return seq.is(K::List) ? Value::list(std::move(out)) : Value::tuple(std::move(out));
}

Value make_set(const ValueList& items) {
  ValueList out;
  for (const auto& x : items) {
    require_hashable(x);
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const Value& y) { return eq(x, y) || structural_eq(x, y); });
    if (!dup) out.push_back(x);
  }
  return Value::set(std::move(out));
}

Value list_of(const Value& iterable) { return Value::list(iterate(iterable)); }

namespace {

// CPython listobject.c: count_run / binarysort / minrun for the stable sort.
using LessFn = std::function<bool(const Value&, const Value&)>;

struct SortSlice {
  ValueList* keys;
  ValueList* values;  // may be null
  void swap(std::size_t i, std::size_t j) const {
    std::swap((*keys)[i], (*keys)[j]);
    if (values) std::swap((*values)[i], (*values)[j]);
  }
  void reverse(std::size_t lo, std::size_t hi) const {
    while (lo + 1 < hi) {
      --hi;
      swap(lo, hi);
      ++lo;
    }
  }
};

std::size_t count_run(const SortSlice& s, std::size_t lo, std::size_t hi, bool& descending) {
  descending = false;
  const auto& k = *s.keys;
  std::size_t p = lo + 1;
  if (p == hi) return 1;
  std::size_t n = 2;
  if (lt(k[p], k[p - 1])) {
    descending = true;
    for (p = p + 1; p < hi; ++p, ++n) {
      if (!lt(k[p], k[p - 1])) break;
    }
  } else {
    for (p = p + 1; p < hi; ++p, ++n) {
      if (lt(k[p], k[p - 1])) break;
    }
  }
  return n;
}

void binarysort(const SortSlice& s, std::size_t lo, std::size_t hi, std::size_t start) {
  auto& k = *s.keys;
  if (lo == start) ++start;
  for (; start < hi; ++start) {
    std::size_t l = lo;
    std::size_t r = start;
    const Value pivot = k[start];
    do {
      const std::size_t p = l + ((r - l) >> 1);
      if (lt(pivot, k[p])) {
        r = p;
      } else {
        l = p + 1;
      }
    } while (l < r);
    for (std::size_t p = start; p > l; --p) s.swap(p, p - 1);
  }
}

std::size_t compute_minrun(std::size_t n) {
  std::size_t r = 0;
  while (n >= 64) {
    r |= n & 1;
    n >>= 1;
  }
  return n + r;
}

void merge_runs(const SortSlice& s, std::size_t lo, std::size_t mid, std::size_t hi) {
  ValueList keys(s.keys->begin() + static_cast<std::ptrdiff_t>(lo),
                 s.keys->begin() + static_cast<std::ptrdiff_t>(hi));
  ValueList vals;
  if (s.values) {
    vals.assign(s.values->begin() + static_cast<std::ptrdiff_t>(lo),
                s.values->begin() + static_cast<std::ptrdiff_t>(hi));
  }
  std::size_t i = 0;
  std::size_t j = mid - lo;
  const std::size_t left_end = mid - lo;
  const std::size_t right_end = hi - lo;
  std::size_t out = lo;
  while (i < left_end && j < right_end) {
    const bool take_right = lt(keys[j], keys[i]);
    const std::size_t src = take_right ? j++ : i++;
    (*s.keys)[out] = keys[src];
    if (s.values) (*s.values)[out] = vals[src];
    ++out;
  }
  for (; i < left_end; ++i, ++out) {
    (*s.keys)[out] = keys[i];
    if (s.values) (*s.values)[out] = vals[i];
  }
  for (; j < right_end; ++j, ++out) {
    (*s.keys)[out] = keys[j];
    if (s.values) (*s.values)[out] = vals[j];
  }
}

void host_sort(ValueList& keys, ValueList* values, bool reverse) {
  SortSlice s{&keys, values};
  const std::size_t n = keys.size();
  if (reverse) s.reverse(0, n);
  if (n >= 2) {
    const std::size_t minrun = compute_minrun(n);
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t lo = 0;
    std::size_t remaining = n;
    while (remaining > 0) {
      bool descending = false;
      std::size_t run = count_run(s, lo, lo + remaining, descending);
      if (descending) s.reverse(lo, lo + run);
      if (run < minrun) {
        const std::size_t force = remaining <= minrun ? remaining : minrun;
        binarysort(s, lo, lo + force, lo + run);
        run = force;
      }
      runs.emplace_back(lo, run);
      lo += run;
      remaining -= run;
    }
    while (runs.size() > 1) {
      std::vector<std::pair<std::size_t, std::size_t>> next;
      for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
        merge_runs(s, runs[i].first, runs[i + 1].first, runs[i + 1].first + runs[i + 1].second);
        next.emplace_back(runs[i].first, runs[i].second + runs[i + 1].second);
      }
      if (runs.size() % 2 == 1) next.push_back(runs.back());
      runs = std::move(next);
    }
  }
  if (reverse) s.reverse(0, n);
}

}  // namespace

ValueList sorted(ValueList items, const std::function<Value(const Value&)>& key, bool reverse) {
  if (!key) {
    host_sort(items, nullptr, reverse);
    return items;
  }
  ValueList keys;
  keys.reserve(items.size());
  for (const auto& x : items) keys.push_back(key(x));
  host_sort(keys, &items, reverse);
  return items;
}

Value max_of(const ValueList& items) {
  if (items.empty()) throw HostError("ValueError", "max() arg is an empty sequence");
  Value best = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (gt(items[i], best)) best = items[i];
  }
  return best;
}

Value min_of(const ValueList& items) {
  if (items.empty()) throw HostError("ValueError", "min() arg is an empty sequence");
  Value best = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (lt(items[i], best)) best = items[i];
  }
  return best;
}

std::string repr(const Value& v) { return render_repr(v); }
std::string str(const Value& v) { return render_display(v); }

Value int_from_str(const std::string& s) {
  const std::u32string cps = utf8_decode(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_host_space(cps[b])) ++b;
  while (e > b && is_host_space(cps[e - 1])) --e;
  std::string digits;
  bool neg = false;
  std::size_t i = b;
  if (i < e && (cps[i] == '+' || cps[i] == '-')) {
    neg = cps[i] == '-';
    ++i;
  }
  bool last_underscore = true;  // disallow leading underscore
  for (; i < e; ++i) {
    const char32_t c = cps[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(static_cast<char>(c));
      last_underscore = false;
    } else if (c == '_' && !last_underscore) {
      last_underscore = true;
    } else {
      digits.clear();
      break;
    }
  }
  if (digits.empty() || last_underscore) {
    throw HostError("ValueError", "invalid literal for int() with base 10: " + render_repr(Value::str(s)));
  }
  BigInt v = BigInt::parse(digits);
  return Value::integer(neg ? -v : v);
}

CallContext::Frame::Frame(CallContext& ctx) : ctx_(ctx) {
  if (++ctx_.depth_ > ctx_.max_depth_) {
    --ctx_.depth_;
    throw HostError("RecursionError", "maximum recursion depth exceeded");
  }
}

namespace {

const std::string& need_str(const Value& v, const char* method) {
  if (!v.is(K::Str)) {
    throw HostError("AttributeError",
                    "'" + type_name(v) + "' object has no attribute '" + method + "'");
  }
  return v.as_str();
}

char32_t lower_cp(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if ((c >= 0xC0 && c <= 0xDE && c != 0xD7) || (c >= 0x391 && c <= 0x3AB && c != 0x3A2) ||
      (c >= 0x410 && c <= 0x42F)) {
    return c + 32;
  }
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  if (c == 0x178) return 0xFF;
  if (c >= 0x100 && c <= 0x17F && c != 0x130 && c != 0x131 && c != 0x138 && c != 0x149 &&
      c != 0x17F) {
    // Latin Extended-A alternates upper/lower pairs, with a phase shift
    // after U+0138.
    const bool shifted = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    const bool upper = shifted ? (c % 2 == 1) : (c % 2 == 0);
    return upper ? c + 1 : c;
  }
  return c;
}

}  // namespace

Value str_lower(const Value& s) {
  const std::u32string cps = utf8_decode(need_str(s, "lower"));
  std::string out;
  for (char32_t c : cps) {
    if (c == 0x130) {
      utf8_append(out, U'i');
      utf8_append(out, 0x307);
    } else {
      utf8_append(out, lower_cp(c));
    }
  }
  return Value::str(std::move(out));
}

ValueList str_split(const Value& s) {
  const std::u32string cps = utf8_decode(need_str(s, "split"));
  ValueList out;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_host_space(cps[i])) ++i;
    if (i >= cps.size()) break;
    const std::size_t start = i;
    while (i < cps.size() && !is_host_space(cps[i])) ++i;
    out.push_back(Value::str(utf8_encode(std::u32string_view(cps).substr(start, i - start))));
  }
  return out;
}

ValueList str_split(const Value& s, const Value& sep) {
  const std::string& text = need_str(s, "split");
  if (!sep.is(K::Str)) {
    throw HostError("TypeError", "must be str or None, not " + type_name(sep));
  }
  const std::string& d = sep.as_str();
  if (d.empty()) throw HostError("ValueError", "empty separator");
  ValueList out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(d, start);
    if (at == std::string::npos) {
      out.push_back(Value::str(text.substr(start)));
      break;
    }
    out.push_back(Value::str(text.substr(start, at - start)));
    start = at + d.size();
  }
  return out;
}

bool str_startswith(const Value& s, const Value& prefix) {
  const std::string& text = need_str(s, "startswith");
  if (prefix.is(K::Tuple)) {
    for (const auto& p : prefix.items()) {
      if (!p.is(K::Str)) {
        throw HostError("TypeError", "tuple for startswith must only contain str, not " + type_name(p));
      }
      if (text.compare(0, p.as_str().size(), p.as_str()) == 0) return true;
    }
    return false;
  }
  if (!prefix.is(K::Str)) {
    throw HostError("TypeError",
                    "startswith first arg must be str or a tuple of str, not " + type_name(prefix));
  }
  return text.compare(0, prefix.as_str().size(), prefix.as_str()) == 0;
}

Value str_join(const Value& sep, const ValueList& items) {
  const std::string& d = need_str(sep, "join");
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].is(K::Str)) {
      throw HostError("TypeError", "sequence item " + std::to_string(i) + ": expected str instance, " +
                                       type_name(items[i]) + " found");
    }
    if (i) out += d;
    out += items[i].as_str();
  }
  return Value::str(std::move(out));
}

Value ord(const Value& c) {
  if (!c.is(K::Str)) {
    throw HostError("TypeError", "ord() expected string of length 1, but " + type_name(c) + " found");
  }
  const std::u32string cps = utf8_decode(c.as_str());
  if (cps.size() != 1) {
    throw HostError("TypeError", "ord() expected a character, but string of length " +
                                     std::to_string(cps.size()) + " found");
  }
  return Value::integer(BigInt(static_cast<std::int64_t>(cps[0])));
}

Value chr(const Value& i) {
  if (!is_int(i)) {
    throw HostError("TypeError", "'" + type_name(i) + "' object cannot be interpreted as an integer");
  }
  const BigInt n = index_value(i);
  if (!n.fits_int64() || n.as_int64() < 0 || n.as_int64() > 0x10FFFF) {
    throw HostError("ValueError", "chr() arg not in range(0x110000)");
  }
  std::string out;
  utf8_append(out, static_cast<char32_t>(n.as_int64()));
  return Value::str(std::move(out));
}

Value sum(const ValueList& items, CallContext* ctx) {
  Value total = integer(0);
  for (const auto& x : items) {
    if (ctx) ctx->tick();
    if (x.is(K::Str)) throw HostError("TypeError", "unsupported operand type(s) for +: 'int' and 'str'");
    total = add(total, x);
  }
  return total;
}

bool is_int(const Value& v) { return v.is(K::Int) || v.is(K::Bool); }

const Value* MapBuilder::get(const Value& key) const {
  require_hashable(key);
  for (const auto& [k, v] : pairs_) {
    if (eq(k, key) || structural_eq(k, key)) return &v;
  }
  return nullptr;
}

void MapBuilder::set(const Value& key, Value value) {
  require_hashable(key);
  for (auto& [k, v] : pairs_) {
    if (eq(k, key) || structural_eq(k, key)) {
      v = std::move(value);
      return;
    }
  }
  pairs_.emplace_back(key, std::move(value));
}

Value MapBuilder::build() const { return Value::map(pairs_); }

}  // namespace iosynth::host
