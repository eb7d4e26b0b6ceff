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

#include "iosynth/builtins.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "iosynth/literal.hpp"

namespace iosynth {

namespace {

using host::CallContext;
using K = Value::Kind;

Value I(std::int64_t i) { return Value::integer(BigInt(i)); }
Value B(bool b) { return Value::boolean(b); }
Value S(std::string s) { return Value::str(std::move(s)); }
const std::optional<BigInt> kNone;

// Argument of range(): must be an int.
BigInt range_arg(const Value& v) {
  if (!host::is_int(v)) {
    throw host::HostError("TypeError",
                          "'" + host::type_name(v) + "' object cannot be interpreted as an integer");
  }
  return host::index_value(v);
}

// Calls body(i) for i in range(start, stop).
template <typename F>
void for_range(CallContext& c, const BigInt& start, const BigInt& stop, F&& body) {
  if (start.fits_int64() && stop.fits_int64()) {
    for (std::int64_t i = start.as_int64(); i < stop.as_int64(); ++i) {
      c.tick();
      body(BigInt(i));
    }
    return;
  }
  for (BigInt i = start; i < stop; i = i + BigInt(1)) {
    c.tick();
    body(i);
  }
}

Value slice_from(const Value& v, std::int64_t start) { return host::slice(v, BigInt(start), kNone); }
Value reversed(const Value& v) { return host::slice(v, kNone, kNone, BigInt(-1)); }

// ---------------------------------------------------------------------------
// Native twins. `m` selects a mutant (0 = original).

Value has_unique_elements(CallContext&, const ValueList& a, int m) {
  const std::int64_t n = host::len(a[0]);
  const Value src = m == 2 ? slice_from(a[0], 1) : a[0];
  const auto u = static_cast<std::int64_t>(host::make_set(host::iterate(src)).items().size());
  return B(m == 1 ? n >= u : n == u);
}

Value pairwise_unique(CallContext& c, const ValueList& a, int) {
  const std::int64_t n = host::len(a[0]);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      c.tick();
      if (host::eq(host::getitem(a[0], I(i)), host::getitem(a[0], I(j)))) return B(false);
    }
  }
  return B(true);
}

Value sum_list(CallContext& c, const ValueList& a, int m) {
  Value total = I(m == 1 ? 1 : 0);
  for (const auto& x : host::iterate(m == 2 ? slice_from(a[0], 1) : a[0])) {
    c.tick();
    total = m == 3 ? host::sub(total, x) : host::add(total, x);
  }
  return total;
}

Value reverse_string(CallContext&, const ValueList& a, int m) {
  if (m == 1) return host::slice(a[0], kNone, kNone, BigInt(1));
  if (m == 2) return host::slice(a[0], kNone, BigInt(0), BigInt(-1));
  return reversed(a[0]);
}

Value abs_sort(CallContext&, const ValueList& a, int m) {
  ValueList items = host::iterate(a[0]);
  if (m == 1) return Value::list(host::sorted(std::move(items)));
  return Value::list(host::sorted(std::move(items), [](const Value& v) { return host::abs(v); }, m == 2));
}

Value is_palindrome(CallContext&, const ValueList& a, int m) {
  Value cleaned = m == 1 ? a[0] : host::str_lower(a[0]);
  if (m == 2) {
    const Value tail = slice_from(cleaned, 1);
    return B(host::eq(tail, reversed(tail)));
  }
  return B(host::eq(cleaned, reversed(cleaned)));
}

Value fibonacci_closed_form(const Value& n) {
  const double root5 = std::pow(5.0, 0.5);
  double x = 0;
  if (n.is(Value::Kind::Float)) {
    x = n.as_float();
  } else {
    try {
      x = n.as_int().to_double();
    } catch (const std::overflow_error&) {
      throw host::HostError("OverflowError", "int too large to convert to float");
    }
  }
  const double p = std::pow((1 + root5) / 2, x);
  if (std::isinf(p)) throw host::HostError("OverflowError", "(34, 'Numerical result out of range')");
  return Value::integer(BigInt::from_double(std::nearbyint(p / root5)));
}

Value fibonacci(CallContext& c, const ValueList& a, int m) {
  if (m == 3 && host::gt(a[0], I(100))) return fibonacci_closed_form(a[0]);
  const BigInt count = range_arg(m == 1 ? host::sub(a[0], I(1)) : a[0]);
  Value x = I(0);
  Value y = I(1);
  for_range(c, BigInt(0), count, [&](const BigInt&) {
    Value next = m == 2 ? host::mul(x, y) : host::add(x, y);
    x = y;
    y = std::move(next);
  });
  return x;
}

Value count_vowels(CallContext& c, const ValueList& a, int m) {
  const Value vowels = S(m == 2 ? "aeio" : "aeiou");
  std::int64_t count = 0;
  for (const auto& ch : host::iterate(m == 1 ? a[0] : host::str_lower(a[0]))) {
    c.tick();
    if (host::contains(vowels, ch)) ++count;
  }
  return I(count);
}

Value max_element(CallContext& c, const ValueList& a, int m) {
  Value best = m == 2 ? I(0) : host::getitem(a[0], I(0));
  for (const auto& x : host::iterate(slice_from(a[0], 1))) {
    c.tick();
    if (m == 1 ? host::lt(x, best) : host::gt(x, best)) best = x;
  }
  return best;
}

Value factorial(CallContext& c, const ValueList& a, int m) {
  if (m == 3) {
    Value result = I(1);
    Value n = a[0];
    while (host::gt(n, I(1))) {
      c.tick();
      result = host::mul(result, n);
      n = host::sub(n, I(1));
    }
    return result;
  }
  const BigInt stop = range_arg(m == 1 ? a[0] : host::add(a[0], I(1)));
  Value result = I(1);
  for_range(c, BigInt(2), stop, [&](const BigInt& i) {
    result = m == 2 ? host::add(result, Value::integer(i)) : host::mul(result, Value::integer(i));
  });
  return result;
}

Value gcd(CallContext& c, const ValueList& a, int m) {
  Value x = a[0];
  Value y = a[1];
  while (m == 2 ? host::gt(y, I(1)) : host::truthy(y)) {
    c.tick();
    Value r = host::mod(x, y);
    x = y;
    y = std::move(r);
  }
  return m == 1 ? x : host::abs(x);
}

Value is_prime(CallContext& c, const ValueList& a, int m) {
  const Value& n = a[0];
  if (host::lt(n, I(m == 1 ? 1 : 2))) return B(false);
  Value i = I(2);
  while (true) {
    c.tick();
    const Value sq = host::mul(i, i);
    if (!(m == 2 ? host::lt(sq, n) : host::le(sq, n))) break;
    if (host::eq(host::mod(n, i), I(0))) return B(false);
    i = host::add(i, I(m == 3 ? 2 : 1));
  }
  return B(true);
}

Value count_words(CallContext&, const ValueList& a, int m) {
  ValueList words = m == 1 ? host::str_split(a[0], S(" ")) : host::str_split(a[0]);
  const auto n = static_cast<std::int64_t>(words.size());
  return I(m == 2 ? std::max<std::int64_t>(n - 1, 0) : n);
}

Value flatten_impl(CallContext& c, const Value& lst, int m) {
  CallContext::Frame frame(c);
  ValueList result;
  for (const auto& item : host::iterate(lst)) {
    c.tick();
    const bool nested = item.is(K::List) || (m == 2 && item.is(K::Tuple));
    if (!nested) {
      result.push_back(item);
    } else if (m == 1) {
      for (const auto& x : host::iterate(item)) result.push_back(x);
    } else {
      const Value inner = flatten_impl(c, item, m);
      for (const auto& x : inner.items()) result.push_back(x);
    }
  }
  return Value::list(std::move(result));
}

Value flatten(CallContext& c, const ValueList& a, int m) { return flatten_impl(c, a[0], m); }

Value second_largest(CallContext&, const ValueList& a, int m) {
  ValueList pool = host::iterate(a[0]);
  if (m != 2) pool = host::iterate(host::make_set(pool));
  const Value unique = Value::list(host::sorted(std::move(pool)));
  if (host::len(unique) < 2) return Value::null();
  return host::getitem(unique, I(m == 1 ? 1 : -2));
}

Value run_length_encode(CallContext& c, const ValueList& a, int m) {
  const Value& s = a[0];
  if (!host::truthy(s)) return S("");
  ValueList out;
  Value prev = host::getitem(s, I(0));
  std::int64_t count = 1;
  for (const auto& ch : host::iterate(slice_from(s, 1))) {
    c.tick();
    if (m == 2 ? host::ne(ch, prev) : host::eq(ch, prev)) {
      ++count;
    } else {
      out.push_back(host::add(prev, S(std::to_string(count))));
      prev = ch;
      count = m == 1 ? 0 : 1;
    }
  }
  out.push_back(host::add(prev, S(std::to_string(count))));
  return host::str_join(S(""), out);
}

Value char_frequency(CallContext& c, const ValueList& a, int m) {
  host::MapBuilder freq;
  for (const auto& ch : host::iterate(m == 2 ? host::str_lower(a[0]) : a[0])) {
    c.tick();
    const Value* cur = freq.get(ch);
    const Value base = cur ? *cur : I(m == 1 ? 1 : 0);
    freq.set(ch, host::add(base, I(1)));
  }
  return freq.build();
}

Value merge_sorted(CallContext& c, const ValueList& args, int m) {
  const Value& a = args[0];
  const Value& b = args[1];
  ValueList result;
  std::int64_t i = 0;
  std::int64_t j = 0;
  while (i < host::len(a) && j < host::len(b)) {
    c.tick();
    const Value x = host::getitem(a, I(i));
    const Value y = host::getitem(b, I(j));
    if (m == 2 ? host::ge(x, y) : host::le(x, y)) {
      result.push_back(host::getitem(a, I(i)));
      ++i;
    } else {
      result.push_back(host::getitem(b, I(j)));
      ++j;
    }
  }
  for (const auto& x : host::iterate(slice_from(a, i))) result.push_back(x);
  for (const auto& x : host::iterate(slice_from(b, m == 1 ? j + 1 : j))) result.push_back(x);
  return Value::list(std::move(result));
}

Value dedupe_preserve_order(CallContext& c, const ValueList& a, int m) {
  host::MapBuilder seen;
  ValueList result;
  for (const auto& x : host::iterate(a[0])) {
    c.tick();
    if (seen.get(x) != nullptr) continue;
    seen.set(m == 1 ? Value::null() : x, Value::null());
    if (m == 2) {
      result.insert(result.begin(), x);
    } else {
      result.push_back(x);
    }
  }
  return Value::list(std::move(result));
}

Value digit_sum(CallContext& c, const ValueList& a, int m) {
  Value n = m == 1 ? a[0] : host::abs(a[0]);
  Value total = I(0);
  while (host::gt(n, I(0))) {
    c.tick();
    total = host::add(total, host::mod(n, I(m == 2 ? 9 : 10)));
    n = host::floordiv(n, I(10));
  }
  return total;
}

Value running_max(CallContext& c, const ValueList& a, int m) {
  ValueList result;
  Value current;
  for (const auto& x : host::iterate(a[0])) {
    c.tick();
    if (current.is(K::Null) || (m == 1 ? host::lt(x, current) : host::gt(x, current))) current = x;
    result.push_back(m == 2 ? x : current);
  }
  return Value::list(std::move(result));
}

Value binary_search(CallContext& c, const ValueList& a, int m) {
  const Value& lst = a[0];
  const Value& target = a[1];
  std::int64_t lo = 0;
  std::int64_t hi = host::len(lst) - 1;
  while (m == 1 ? lo < hi : lo <= hi) {
    c.tick();
    const std::int64_t mid = (lo + hi) / 2;
    if (host::eq(host::getitem(lst, I(mid)), target)) return I(mid);
    if (host::lt(host::getitem(lst, I(mid)), target)) {
      lo = mid + (m == 2 ? 2 : 1);
    } else {
      hi = mid - 1;
    }
  }
  return I(-1);
}

Value celsius_to_fahrenheit(CallContext&, const ValueList& a, int m) {
  const Value scaled = host::mul(a[0], I(9));
  const Value q = m == 2 ? host::floordiv(scaled, I(5)) : host::truediv(scaled, I(5));
  return host::add(q, I(m == 1 ? 31 : 32));
}

Value count_occurrences(CallContext& c, const ValueList& a, int m) {
  std::int64_t count = m == 2 ? 1 : 0;
  for (const auto& x : host::iterate(a[0])) {
    c.tick();
    if (m == 1 ? host::ne(x, a[1]) : host::eq(x, a[1])) ++count;
  }
  return I(count);
}

Value longest_common_prefix(CallContext& c, const ValueList& a, int m) {
  const Value& strs = a[0];
  if (!host::truthy(strs)) return S("");
  Value prefix = host::getitem(strs, I(0));
  for (const auto& s : host::iterate(slice_from(strs, m == 2 ? 2 : 1))) {
    while (!host::str_startswith(s, prefix)) {
      c.tick();
      prefix = m == 1 ? slice_from(prefix, 1) : host::slice(prefix, kNone, BigInt(-1));
    }
  }
  return prefix;
}

Value rotate_list(CallContext&, const ValueList& a, int m) {
  const Value& lst = a[0];
  if (!host::truthy(lst)) return lst;
  const std::int64_t n = host::len(lst);
  const Value k = host::mod(a[1], I(m == 2 ? n + 1 : n));
  if (!host::is_int(k)) {
    throw host::HostError("TypeError", "slice indices must be integers or None or have an __index__ method");
  }
  const BigInt ki = host::index_value(k);
  if (m == 1) return host::add(host::slice(lst, ki, kNone), host::slice(lst, kNone, ki));
  return host::add(host::slice(lst, -ki, kNone), host::slice(lst, kNone, -ki));
}

Value is_anagram(CallContext&, const ValueList& a, int m) {
  const Value x = host::str_lower(a[0]);
  if (m == 2) {
    const Value sx = host::make_set(host::iterate(x));
    return B(host::eq(sx, host::make_set(host::iterate(host::str_lower(a[1])))));
  }
  const Value sx = Value::list(host::sorted(host::iterate(x)));
  const Value y = m == 1 ? a[1] : host::str_lower(a[1]);
  return B(host::eq(sx, Value::list(host::sorted(host::iterate(y)))));
}

Value filter_even(CallContext& c, const ValueList& a, int m) {
  ValueList out;
  for (const auto& x : host::iterate(a[0])) {
    c.tick();
    if (m != 2 && !host::is_int(x)) continue;
    if (host::eq(host::mod(x, I(2)), I(m == 1 ? 1 : 0))) out.push_back(x);
  }
  return Value::list(std::move(out));
}

Value sum_of_squares(CallContext& c, const ValueList& a, int m) {
  const BigInt stop = range_arg(m == 1 ? a[0] : host::add(a[0], I(1)));
  BigInt total = 0;
  for_range(c, BigInt(1), stop, [&](const BigInt& i) { total = total + (m == 2 ? i * BigInt(2) : i * i); });
  return Value::integer(total);
}

Value word_lengths(CallContext& c, const ValueList& a, int m) {
  ValueList out;
  for (const auto& w : m == 1 ? host::str_split(a[0], S(" ")) : host::str_split(a[0])) {
    c.tick();
    out.push_back(I(host::len(w) - (m == 2 ? 1 : 0)));
  }
  return Value::list(std::move(out));
}

Value clamp(CallContext&, const ValueList& a, int m) {
  const Value& x = a[0];
  const Value& lo = a[1];
  const Value& hi = a[2];
  if (host::lt(x, lo)) return m == 1 ? hi : lo;
  if (host::gt(x, m == 2 ? lo : hi)) return hi;
  return x;
}

Value to_binary(CallContext& c, const ValueList& a, int m) {
  Value n = a[0];
  if (host::eq(n, I(0))) return S(m == 1 ? "" : "0");
  Value digits = S("");
  while (host::gt(n, I(0))) {
    c.tick();
    const Value bit = S(host::str(host::mod(n, I(2))));
    digits = m == 2 ? host::add(digits, bit) : host::add(bit, digits);
    n = host::floordiv(n, I(2));
  }
  return digits;
}

Value caesar_shift(CallContext& c, const ValueList& a, int m) {
  Value out = S("");
  for (const auto& ch : host::iterate(a[0])) {
    c.tick();
    const bool lower = host::le(S("a"), ch) && (m == 2 ? host::lt(ch, S("z")) : host::le(ch, S("z")));
    if (lower) {
      const Value shifted = host::add(host::sub(host::ord(ch), I(97)), a[1]);
      out = host::add(out, host::chr(host::add(host::mod(shifted, I(m == 1 ? 25 : 26)), I(97))));
    } else {
      out = host::add(out, ch);
    }
  }
  return out;
}

Value median(CallContext&, const ValueList& a, int m) {
  const Value s = Value::list(host::sorted(host::iterate(a[0])));
  const std::int64_t n = host::len(s);
  if (n == 0) return Value::null();
  const std::int64_t mid = n / 2;
  if ((n % 2 == 1) != (m == 1)) return host::getitem(s, I(mid));
  const Value total = host::add(host::getitem(s, I(mid - 1)), host::getitem(s, I(mid)));
  return m == 2 ? host::floordiv(total, I(2)) : host::truediv(total, I(2));
}

// ---------------------------------------------------------------------------
// Registry tables

using MutantFn = Value (*)(CallContext&, const ValueList&, int);

struct Mutation {
  const char* find;
  const char* replace;
};

struct TaskDef {
  const char* name;
  const char* suite;
  std::vector<std::string> params;
  MutantFn fn;
  const char* twin;
  std::vector<Mutation> mutations;
  std::vector<const char*> e0;
  std::vector<std::string> tags;
};

const std::vector<TaskDef>& task_defs() {
  static const std::vector<TaskDef> defs = {
      {"has_unique_elements", "builtin-list", {"lst"}, has_unique_elements,
       R"(def has_unique_elements(lst):
    return len(lst) == len(set(lst))
)",
       {{"len(lst) == len(set(lst))", "len(lst) >= len(set(lst))"},
        {"len(set(lst))", "len(set(lst[1:]))"}},
       {"[1, 2, 3, 4, 5]", "[1, 2, 2, 4, 5]", "['a', 'b', 'c', 'd', 'e']", "['apple', 'banana', 'apple']",
        "[]", "[10, 20, 30, 40, 50, 60]", "[10, 20, 30, 30, 50, 60]", "['x', 'y', 'z']", "[1, 1, 1, 1]",
        "list(range(100))"},
       {"list", "hashing"}},
      {"sum_list", "builtin-list", {"lst"}, sum_list,
       R"(def sum_list(lst):
    total = 0
    for x in lst:
        total += x
    return total
)",
       {{"total = 0", "total = 1"}, {"for x in lst:", "for x in lst[1:]:"}, {"total += x", "total -= x"}},
       {"[1, 2, 3]", "[]", "[5]", "[-1, -2, -3]", "[0, 0, 0]", "[10, 20, 30, 40]", "[1.5, 2.5]", "[100]",
        "[-5, 5]", "[7, 8, 9, 10, 11]"},
       {"list", "arithmetic"}},
      {"reverse_string", "builtin-string", {"s"}, reverse_string,
       R"(def reverse_string(s):
    return s[::-1]
)",
       {{"s[::-1]", "s[::1]"}, {"s[::-1]", "s[:0:-1]"}},
       {"'hello'", "''", "'a'", "'racecar'", "'abc def'", "'12345'", "'Hello, World!'", "'ab'", "'  x'",
        "'python'"},
       {"string", "slicing"}},
      {"abs_sort", "builtin-list", {"lst"}, abs_sort,
       R"(def abs_sort(lst):
    return sorted(lst, key=abs)
)",
       {{"sorted(lst, key=abs)", "sorted(lst)"}, {"key=abs)", "key=abs, reverse=True)"}},
       {"[-3, 1, -2]", "[]", "[5]", "[-1, 1]", "[3, -3, 2, -2]", "[0, -5, 4]", "[10, -20, 30]", "[-7]",
        "[1, 2, 3]", "[-1, -2, -3]"},
       {"list", "sorting"}},
      {"is_palindrome", "builtin-string", {"s"}, is_palindrome,
       R"(def is_palindrome(s):
    cleaned = s.lower()
    return cleaned == cleaned[::-1]
)",
       {{"cleaned = s.lower()", "cleaned = s"},
        {"return cleaned == cleaned[::-1]", "return cleaned[1:] == cleaned[1:][::-1]"}},
       {"'racecar'", "'hello'", "''", "'A'", "'Madam'", "'ab'", "'aba'", "'Noon'", "'abcba'", "'abca'"},
       {"string"}},
      {"fibonacci", "builtin-number", {"n"}, fibonacci,
       R"(def fibonacci(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
)",
       {{"range(n)", "range(n - 1)"},
        {"a + b", "a * b"},
        {"    a, b = 0, 1\n", "    if n > 100:\n        return round(((1 + 5 ** 0.5) / 2) ** n / 5 ** 0.5)\n    a, b = 0, 1\n"}},
       {"0", "1", "2", "3", "4", "5", "6", "8", "10", "12"},
       {"number", "sequence"}},
      {"count_vowels", "builtin-string", {"s"}, count_vowels,
       R"(def count_vowels(s):
    count = 0
    for ch in s.lower():
        if ch in 'aeiou':
            count += 1
    return count
)",
       {{"for ch in s.lower():", "for ch in s:"}, {"'aeiou'", "'aeio'"}},
       {"'hello'", "''", "'AEIOU'", "'rhythm'", "'Programming'", "'a'", "'xyz'", "'Education'", "'banana'",
        "'OpenAI'"},
       {"string", "counting"}},
      {"max_element", "builtin-list", {"lst"}, max_element,
       R"(def max_element(lst):
    best = lst[0]
    for x in lst[1:]:
        if x > best:
            best = x
    return best
)",
       {{"if x > best:", "if x < best:"}, {"best = lst[0]", "best = 0"}},
       {"[1, 5, 3]", "[-1, -5]", "[7]", "[2, 2, 2]", "[0, -1, 1]", "[10, 9, 8]", "[1, 2, 3, 4, 100]",
        "[-10, -20, -5]", "[3.5, 2.1]", "[42, 17]"},
       {"list"}},
      {"factorial", "builtin-number", {"n"}, factorial,
       R"(def factorial(n):
    result = 1
    for i in range(2, n + 1):
        result *= i
    return result
)",
       {{"range(2, n + 1)", "range(2, n)"},
        {"result *= i", "result += i"},
        {"    for i in range(2, n + 1):\n        result *= i\n", "    while n > 1:\n        result *= n\n        n -= 1\n"}},
       {"0", "1", "2", "3", "4", "5", "6", "10", "12", "20"},
       {"number"}},
      {"gcd", "builtin-number", {"a", "b"}, gcd,
       R"(def gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)
)",
       {{"return abs(a)", "return a"}, {"while b:", "while b > 1:"}},
       {"12, 8", "7, 3", "0, 5", "5, 0", "100, 75", "17, 17", "-12, 8", "1, 1", "54, 24", "81, 27"},
       {"number"}},
      {"is_prime", "builtin-number", {"n"}, is_prime,
       R"(def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True
)",
       {{"if n < 2:", "if n < 1:"}, {"while i * i <= n:", "while i * i < n:"}, {"i += 1", "i += 2"}},
       {"2", "3", "4", "5", "9", "11", "1", "0", "17", "25"},
       {"number", "predicate"}},
      {"count_words", "builtin-string", {"s"}, count_words,
       R"(def count_words(s):
    return len(s.split())
)",
       {{"s.split()", "s.split(' ')"}, {"len(s.split())", "len(s.split()[1:])"}},
       {"'hello world'", "''", "' '", "'one'", "'a b c'", "'  leading'", "'trailing  '",
        "'multiple   spaces here'", "'tab\\tsep'", "'The quick brown fox'"},
       {"string", "counting"}},
      {"flatten", "builtin-list", {"lst"}, flatten,
       R"(def flatten(lst):
    result = []
    for item in lst:
        if isinstance(item, list):
            result.extend(flatten(item))
        else:
            result.append(item)
    return result
)",
       {{"result.extend(flatten(item))", "result.extend(item)"},
        {"isinstance(item, list)", "isinstance(item, (list, tuple))"}},
       {"[1, [2, 3]]", "[]", "[[1], [2], [3]]", "[1, [2, [3, [4]]]]", "[[]]", "['a', ['b']]", "[1, 2, 3]",
        "[[1, 2], [3, 4]]", "[(1, 2), [3]]", "[[[]], 1]"},
       {"list", "recursion"}},
      {"second_largest", "builtin-list", {"lst"}, second_largest,
       R"(def second_largest(lst):
    unique = sorted(set(lst))
    if len(unique) < 2:
        return None
    return unique[-2]
)",
       {{"unique[-2]", "unique[1]"}, {"sorted(set(lst))", "sorted(lst)"}},
       {"[1, 2, 3]", "[5, 5, 4]", "[1]", "[]", "[3, 3, 3]", "[10, 20, 30, 40]", "[-1, -2, -3]", "[2, 1]",
        "[7, 7, 8, 8]", "[100, 50, 75]"},
       {"list", "sorting"}},
      {"run_length_encode", "builtin-string", {"s"}, run_length_encode,
       R"(def run_length_encode(s):
    if not s:
        return ''
    out = []
    prev = s[0]
    count = 1
    for ch in s[1:]:
        if ch == prev:
            count += 1
        else:
            out.append(prev + str(count))
            prev = ch
            count = 1
    out.append(prev + str(count))
    return ''.join(out)
)",
       {{"\n            count = 1", "\n            count = 0"}, {"if ch == prev:", "if ch != prev:"}},
       {"'aaabbc'", "''", "'a'", "'abc'", "'aabbaa'", "'zzzz'", "'abcaab'", "'xxxyyyzzz'", "'hello'",
        "'mississippi'"},
       {"string", "encoding"}},
      {"char_frequency", "builtin-string", {"s"}, char_frequency,
       R"(def char_frequency(s):
    freq = {}
    for ch in s:
        freq[ch] = freq.get(ch, 0) + 1
    return freq
)",
       {{"freq.get(ch, 0)", "freq.get(ch, 1)"}, {"for ch in s:", "for ch in s.lower():"}},
       {"'hello'", "''", "'aaa'", "'abc'", "'Mississippi'", "'a b'", "'112233'", "'zz'", "'AaBb'",
        "'banana'"},
       {"string", "counting", "dict"}},
      {"merge_sorted", "builtin-list", {"a", "b"}, merge_sorted,
       R"(def merge_sorted(a, b):
    result = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] <= b[j]:
            result.append(a[i])
            i += 1
        else:
            result.append(b[j])
            j += 1
    result.extend(a[i:])
    result.extend(b[j:])
    return result
)",
       {{"result.extend(b[j:])", "result.extend(b[j + 1:])"}, {"if a[i] <= b[j]:", "if a[i] >= b[j]:"}},
       {"[1, 3, 5], [2, 4, 6]", "[], []", "[1], []", "[], [1]", "[1, 2], [3, 4]", "[5], [1, 2, 3]",
        "[1, 1], [1]", "[-3, 0], [-2, 5]", "[2, 4, 6, 8], [1]", "[0], [0]"},
       {"list", "sorting"}},
      {"dedupe_preserve_order", "builtin-list", {"lst"}, dedupe_preserve_order,
       R"(def dedupe_preserve_order(lst):
    seen = set()
    result = []
    for x in lst:
        if x not in seen:
            seen.add(x)
            result.append(x)
    return result
)",
       {{"seen.add(x)", "seen.add(None)"}, {"result.append(x)", "result.insert(0, x)"}},
       {"[1, 2, 2, 3]", "[]", "[1, 1, 1]", "['a', 'b', 'a']", "[3, 2, 1, 2, 3]", "[True, 1, 0, False]",
        "[5]", "[1, 2, 3]", "['x', 'x', 'y', 'y']", "[0, 0, 1, 0]"},
       {"list", "hashing"}},
      {"digit_sum", "builtin-number", {"n"}, digit_sum,
       R"(def digit_sum(n):
    n = abs(n)
    total = 0
    while n > 0:
        total += n % 10
        n //= 10
    return total
)",
       {{"n = abs(n)", "n = n"}, {"n % 10", "n % 9"}},
       {"0", "5", "12", "999", "-45", "1000", "7", "123456", "10", "-1"},
       {"number"}},
      {"running_max", "builtin-list", {"lst"}, running_max,
       R"(def running_max(lst):
    result = []
    current = None
    for x in lst:
        if current is None or x > current:
            current = x
        result.append(current)
    return result
)",
       {{"x > current", "x < current"}, {"result.append(current)", "result.append(x)"}},
       {"[1, 3, 2, 5, 4]", "[]", "[5]", "[-1, -2, -3]", "[2, 2, 2]", "[1, 2, 3]", "[3, 2, 1]",
        "[0, 10, 5, 20]", "[-5, 0, -3]", "[7, 7, 8]"},
       {"list"}},
      {"binary_search", "builtin-list", {"lst", "target"}, binary_search,
       R"(def binary_search(lst, target):
    lo, hi = 0, len(lst) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if lst[mid] == target:
            return mid
        if lst[mid] < target:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1
)",
       {{"while lo <= hi:", "while lo < hi:"}, {"lo = mid + 1", "lo = mid + 2"}},
       {"[1, 2, 3, 4, 5], 3", "[1, 2, 3, 4, 5], 6", "[], 1", "[7], 7", "[1, 3, 5, 7, 9], 1",
        "[1, 3, 5, 7, 9], 9", "[2, 4, 6], 5", "[10, 20, 30, 40], 40", "[-5, -1, 0, 3], -1", "[1, 2], 2"},
       {"list", "search"}},
      {"celsius_to_fahrenheit", "builtin-number", {"c"}, celsius_to_fahrenheit,
       R"(def celsius_to_fahrenheit(c):
    return c * 9 / 5 + 32
)",
       {{"+ 32", "+ 31"}, {"c * 9 / 5", "c * 9 // 5"}},
       {"0", "100", "-40", "37", "25", "-10", "1", "50", "15.5", "200"},
       {"number", "float"}},
      {"count_occurrences", "builtin-list", {"lst", "target"}, count_occurrences,
       R"(def count_occurrences(lst, target):
    count = 0
    for x in lst:
        if x == target:
            count += 1
    return count
)",
       {{"if x == target:", "if x != target:"}, {"count = 0", "count = 1"}},
       {"[1, 2, 1, 3], 1", "[], 5", "['a', 'b', 'a'], 'a'", "[1, 2, 3], 4", "[0, 0, 0], 0",
        "[True, 1, 1.0], 1", "[None, None], None", "[1, 2, 3], '1'", "[[1], [1]], [1]", "[5], 5"},
       {"list", "counting"}},
      {"longest_common_prefix", "builtin-string", {"strs"}, longest_common_prefix,
       R"(def longest_common_prefix(strs):
    if not strs:
        return ''
    prefix = strs[0]
    for s in strs[1:]:
        while not s.startswith(prefix):
            prefix = prefix[:-1]
    return prefix
)",
       {{"prefix = prefix[:-1]", "prefix = prefix[1:]"}, {"for s in strs[1:]:", "for s in strs[2:]:"}},
       {"['flower', 'flow', 'flight']", "['dog', 'racecar', 'car']", "[]", "['a']", "['abc', 'abc']",
        "['', 'abc']", "['prefix', 'pre', 'prelude']", "['same', 'same', 'same']", "['ab', 'a']",
        "['interview', 'internet', 'interval']"},
       {"string", "list"}},
      {"rotate_list", "builtin-list", {"lst", "k"}, rotate_list,
       R"(def rotate_list(lst, k):
    if not lst:
        return lst
    k = k % len(lst)
    return lst[-k:] + lst[:-k]
)",
       {{"lst[-k:] + lst[:-k]", "lst[k:] + lst[:k]"}, {"k % len(lst)", "k % (len(lst) + 1)"}},
       {"[1, 2, 3, 4, 5], 2", "[1, 2, 3], 0", "[], 3", "[1], 5", "[1, 2, 3], 3", "[1, 2, 3], 4",
        "['a', 'b', 'c'], 1", "[1, 2, 3, 4], -1", "[5, 6], 1", "[1, 2, 3, 4, 5, 6], 10"},
       {"list", "slicing"}},
      {"is_anagram", "builtin-string", {"a", "b"}, is_anagram,
       R"(def is_anagram(a, b):
    return sorted(a.lower()) == sorted(b.lower())
)",
       {{"sorted(b.lower())", "sorted(b)"},
        {"return sorted(a.lower()) == sorted(b.lower())", "return set(a.lower()) == set(b.lower())"}},
       {"'listen', 'silent'", "'hello', 'world'", "'', ''", "'a', 'A'", "'abc', 'cab'", "'aab', 'abb'",
        "'Dormitory', 'dirtyroom'", "'abc', 'abcd'", "'night', 'thing'", "'rat', 'car'"},
       {"string", "sorting", "predicate"}},
      {"filter_even", "builtin-list", {"lst"}, filter_even,
       R"(def filter_even(lst):
    return [x for x in lst if isinstance(x, int) and x % 2 == 0]
)",
       {{"x % 2 == 0", "x % 2 == 1"}, {"isinstance(x, int) and x % 2 == 0", "x % 2 == 0"}},
       {"[1, 2, 3, 4]", "[]", "[2, 4, 6]", "[1, 3, 5]", "[0]", "[-2, -1]", "[2.0, 4]", "['a', 2]",
        "[10, 15, 20]", "[True, False, 2]"},
       {"list", "filter"}},
      {"sum_of_squares", "builtin-number", {"n"}, sum_of_squares,
       R"(def sum_of_squares(n):
    return sum(i * i for i in range(1, n + 1))
)",
       {{"range(1, n + 1)", "range(1, n)"}, {"i * i", "i * 2"}},
       {"0", "1", "2", "3", "4", "5", "10", "-3", "7", "20"},
       {"number", "arithmetic"}},
      {"word_lengths", "builtin-string", {"s"}, word_lengths,
       R"(def word_lengths(s):
    return [len(w) for w in s.split()]
)",
       {{"s.split()", "s.split(' ')"}, {"len(w)", "len(w) - 1"}},
       {"'hello world'", "''", "'a bb ccc'", "'  spaced   out  '", "'one'", "'The quick brown fox'",
        "'x y z'", "'tab\\tsep'", "'123 4567'", "'punctuation, too!'"},
       {"string", "list"}},
      {"clamp", "builtin-number", {"x", "lo", "hi"}, clamp,
       R"(def clamp(x, lo, hi):
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x
)",
       {{"return lo", "return hi"}, {"if x > hi:", "if x > lo:"}},
       {"5, 0, 10", "-5, 0, 10", "15, 0, 10", "0, 0, 10", "10, 0, 10", "3, 3, 3", "2.5, 1, 2",
        "-1, -5, -2", "7, 0, 100", "100, 0, 50"},
       {"number"}},
      {"to_binary", "builtin-number", {"n"}, to_binary,
       R"(def to_binary(n):
    if n == 0:
        return '0'
    digits = ''
    while n > 0:
        digits = str(n % 2) + digits
        n //= 2
    return digits
)",
       {{"return '0'", "return ''"}, {"digits = str(n % 2) + digits", "digits = digits + str(n % 2)"}},
       {"0", "1", "2", "5", "8", "10", "255", "16", "7", "1023"},
       {"number", "string"}},
      {"caesar_shift", "builtin-string", {"s", "k"}, caesar_shift,
       R"(def caesar_shift(s, k):
    out = ''
    for ch in s:
        if 'a' <= ch <= 'z':
            out += chr((ord(ch) - 97 + k) % 26 + 97)
        else:
            out += ch
    return out
)",
       {{"% 26", "% 25"}, {"'a' <= ch <= 'z'", "'a' <= ch < 'z'"}},
       {"'abc', 1", "'xyz', 3", "'', 5", "'hello world', 13", "'ABC', 1", "'abc', 0", "'abc', 26",
        "'zebra', -1", "'a1b2', 2", "'shift', 52"},
       {"string", "encoding"}},
      {"median", "builtin-list", {"lst"}, median,
       R"(def median(lst):
    s = sorted(lst)
    n = len(s)
    if n == 0:
        return None
    mid = n // 2
    if n % 2 == 1:
        return s[mid]
    return (s[mid - 1] + s[mid]) / 2
)",
       {{"if n % 2 == 1:", "if n % 2 == 0:"}, {") / 2", ") // 2"}},
       {"[3, 1, 2]", "[4, 1, 3, 2]", "[]", "[5]", "[1, 2]", "[7, 7, 7]", "[-1, -5, 3]",
        "[10, 20, 30, 40, 50]", "[1.5, 2.5]", "[2, 4, 6, 8]"},
       {"list", "sorting", "float"}},
  };
  return defs;
}

const char* kPairwiseTwin = R"(def solution(lst):
    # Use a simple pairwise comparison approach
    n = len(lst)
    for i in range(n):
        for j in range(i + 1, n):
            if lst[i] == lst[j]:
                return False
    return True
)";

// Diagnostic functions exercise executor failure paths; they are only
// served when diagnostics are enabled.
Value diag_hang(CallContext& c, const ValueList&) {
  for (;;) c.tick();
}

Value diag_crash(CallContext&, const ValueList&) {
  throw host::HostError("ExecutorCrash", "diagnostic crash");
}

Value diag_random(CallContext&, const ValueList&) {
  static thread_local std::random_device rd;
  return Value::integer(BigInt(static_cast<std::int64_t>(rd() % 1000000)));
}

Value diag_noisy(CallContext&, const ValueList& a) { return a[0]; }

std::string apply_mutation(const std::string& twin, const Mutation& mu, const std::string& name) {
  const std::size_t at = twin.find(mu.find);
  if (at == std::string::npos || twin.find(mu.find, at + 1) != std::string::npos) {
    throw std::logic_error("mutation of " + name + " must match exactly once: " + mu.find);
  }
  std::string out = twin;
  out.replace(at, std::char_traits<char>::length(mu.find), mu.replace);
  return out;
}

std::string strip_newline(const char* s) {
  std::string out(s);
  while (!out.empty() && out.front() == '\n') out.erase(out.begin());
  return out;
}

std::vector<BuiltinFunction> build_registry() {
  std::vector<BuiltinFunction> out;
  for (const TaskDef& d : task_defs()) {
    const MutantFn fn = d.fn;
    out.push_back({d.name, d.name, d.params,
                   [fn](CallContext& c, const ValueList& a) { return fn(c, a, 0); }, d.twin, "", "",
                   false});
    for (std::size_t i = 0; i < d.mutations.size(); ++i) {
      const int m = static_cast<int>(i) + 1;
      const std::string name = std::string(d.name) + "~" + std::to_string(m);
      out.push_back({name, d.name, d.params,
                     [fn, m](CallContext& c, const ValueList& a) { return fn(c, a, m); },
                     apply_mutation(d.twin, d.mutations[i], name), d.name,
                     strip_newline(d.mutations[i].find) + " => " + strip_newline(d.mutations[i].replace),
                     false});
    }
  }
  out.push_back({kPairwiseCandidate, "solution", {"lst"},
                 [](CallContext& c, const ValueList& a) { return pairwise_unique(c, a, 0); }, kPairwiseTwin,
                 "", "", false});
  out.push_back({"hang", "hang", {"x"}, diag_hang, "def hang(x):\n    while True:\n        pass\n", "", "", true});
  out.push_back({"crash", "crash", {"x"}, diag_crash,
                 "def crash(x):\n    import os\n    os._exit(3)\n", "", "", true});
  out.push_back({"random_pick", "random_pick", {"x"}, diag_random,
                 "def random_pick(x):\n    import random\n    return random.randrange(1000000)\n", "", "",
                 true});
  out.push_back({"noisy_identity", "noisy_identity", {"x"}, diag_noisy,
                 "def noisy_identity(x):\n    print('side effect', x)\n    return x\n", "", "", true});
  return out;
}

std::vector<BuiltinTask> build_tasks() {
  std::vector<BuiltinTask> out;
  for (const TaskDef& d : task_defs()) {
    BuiltinTask t{d.name, d.suite, d.tags, {}};
    for (const char* args : d.e0) t.e0.push_back(parse_args(args));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

const std::vector<BuiltinFunction>& builtin_registry() {
  static const std::vector<BuiltinFunction> reg = build_registry();
  return reg;
}

const BuiltinFunction* find_builtin(std::string_view name) {
  static const std::unordered_map<std::string, const BuiltinFunction*> index = [] {
    std::unordered_map<std::string, const BuiltinFunction*> m;
    for (const auto& f : builtin_registry()) m.emplace(f.name, &f);
    return m;
  }();
  const auto it = index.find(std::string(name));
  return it == index.end() ? nullptr : it->second;
}

const std::vector<BuiltinTask>& builtin_tasks() {
  static const std::vector<BuiltinTask> tasks = build_tasks();
  return tasks;
}

std::vector<const BuiltinFunction*> builtin_mutants() {
  std::vector<const BuiltinFunction*> out;
  for (const auto& f : builtin_registry()) {
    if (!f.base.empty()) out.push_back(&f);
  }
  return out;
}

}  // namespace iosynth
