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

#ifndef IOSYNTH_VALUE_HPP
#define IOSYNTH_VALUE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "iosynth/bigint.hpp"

namespace iosynth {

class Value;

using ValueList = std::vector<Value>;
using ValuePairs = std::vector<std::pair<Value, Value>>;

/// Host value outside the supported kinds, captured by type name and
/// rendering. Only ever produced by executors.
struct OpaqueValue {
  std::string type_name;
  std::string repr;
};

/// Immutable dynamic value shared by tasks, agents, the oracle and executors.
///
/// Containers are held behind shared immutable storage, so copying a Value is
/// O(1) and Values may be shared freely between threads.
class Value {
 public:
  enum class Kind { Null, Bool, Int, Float, Str, List, Tuple, Map, Set, Opaque };

  Value() = default;  // Null

  static Value null() { return Value(); }
  static Value boolean(bool b) { return Value(Rep(b)); }
  static Value integer(BigInt i) { return Value(Rep(std::move(i))); }
  static Value floating(double d) { return Value(Rep(d)); }
  static Value str(std::string s) { return Value(Rep(Str{std::move(s)})); }
  static Value list(ValueList items);
  static Value tuple(ValueList items);
  /// Throws std::invalid_argument if two keys are structurally identical.
  static Value map(ValuePairs pairs);
  /// Structural duplicates are dropped; element order is canonicalized.
  static Value set(ValueList items);
  static Value opaque(std::string type_name, std::string repr);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is(Kind k) const { return kind() == k; }
  bool is_sequence() const { return is(Kind::List) || is(Kind::Tuple); }

  bool as_bool() const { return std::get<bool>(rep_); }
  const BigInt& as_int() const { return std::get<BigInt>(rep_); }
  double as_float() const { return std::get<double>(rep_); }
  const std::string& as_str() const { return std::get<Str>(rep_).s; }
  /// Elements of a List, Tuple or Set (Sets in canonical order).
  const ValueList& items() const;
  const ValuePairs& pairs() const { return *std::get<MapRep>(rep_).pairs; }
  const OpaqueValue& as_opaque() const { return *std::get<OpaqueRep>(rep_).v; }

  /// Looks up a Str-keyed entry of a Map.
  const Value* field(std::string_view key) const;

  /// True if this value or anything nested inside it is Opaque.
  bool contains_opaque() const;

 private:
  struct Str {
    std::string s;
  };
  struct ListRep {
    std::shared_ptr<const ValueList> items;
  };
  struct TupleRep {
    std::shared_ptr<const ValueList> items;
  };
  struct MapRep {
    std::shared_ptr<const ValuePairs> pairs;
  };
  struct SetRep {
    std::shared_ptr<const ValueList> items;
  };
  struct OpaqueRep {
    std::shared_ptr<const OpaqueValue> v;
  };
  using Rep = std::variant<std::monostate, bool, BigInt, double, Str, ListRep, TupleRep, MapRep,
                           SetRep, OpaqueRep>;

  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

const char* kind_name(Value::Kind k);

/// Structural identity: same kind, recursively identical contents. Int 1 and
/// Float 1.0 differ; NaN is identical to NaN; Map order is significant.
bool structural_eq(const Value& a, const Value& b);

/// Total order consistent with structural_eq, used for canonical Set order.
int structural_compare(const Value& a, const Value& b);

/// Behavior of one call: a value, or an error identified by its class name.
class Outcome {
 public:
  Outcome() = default;  // Ok(Null)
  static Outcome ok(Value v) { return Outcome(std::move(v)); }
  /// kind must be non-empty.
  static Outcome err(std::string kind, std::string message = {});

  bool is_ok() const { return !error_.has_value(); }
  bool is_err() const { return error_.has_value(); }
  const Value& value() const { return value_; }
  const std::string& error_kind() const { return error_->kind; }
  const std::string& error_message() const { return error_->message; }

 private:
  struct Error {
    std::string kind;
    std::string message;
  };
  explicit Outcome(Value v) : value_(std::move(v)) {}
  Outcome(std::string kind, std::string message)
      : error_(Error{std::move(kind), std::move(message)}) {}

  Value value_;
  std::optional<Error> error_;
};

/// Structural identity on outcomes, including error messages.
bool structural_eq(const Outcome& a, const Outcome& b);

/// Positional arguments of one call.
struct ArgTuple {
  ValueList args;

  std::size_t arity() const { return args.size(); }
  Value as_tuple() const { return Value::tuple(args); }
  static ArgTuple from_tuple(const Value& tuple) { return ArgTuple{tuple.items()}; }
};

bool structural_eq(const ArgTuple& a, const ArgTuple& b);

struct IOExample {
  ArgTuple input;
  Outcome output;
};

// ---------------------------------------------------------------------------
// Canonical encoding
//
//   N                 null
//   T | F             bool
//   i-?[0-9]+         int
//   d<repr>           float, shortest round-trip repr; dnan dinf d-inf
//   s"<escaped>"      str, JSON string escaping, raw UTF-8 otherwise
//   [v,...]           list
//   (v,...)           tuple
//   {k:v,...}         map, pairs in stored order
//   <v,...>           set, canonical element order
//   o"<type>""<repr>" opaque
//
// No whitespace is emitted or accepted.
// ---------------------------------------------------------------------------

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

std::string encode(const Value& v);
/// Throws DecodeError on malformed input or trailing bytes.
Value decode(std::string_view bytes);

/// Outcomes travel as Maps: {s"ok":v} or {s"err":s"Kind",s"message":s"..."}.
Value outcome_to_value(const Outcome& o);
Outcome outcome_from_value(const Value& v);

/// Shortest round-trip repr of a double, formatted like the host runtime
/// ("1.0", "1e+16", "1.5e-07", "nan", "inf", "-inf").
std::string float_repr(double d);

}  // namespace iosynth

#endif  // IOSYNTH_VALUE_HPP
