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

// Host-runtime semantics over Value: the equality, ordering, arithmetic and
// container operations of the benchmark's host language, reimplemented
// natively so builtin functions behave like their source twins. Operations
// signal host exceptions by throwing HostError with the host class name.

#ifndef IOSYNTH_HOST_HPP
#define IOSYNTH_HOST_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iosynth/value.hpp"

namespace iosynth::host {

/// A host exception escaping a builtin. `kind` is the class name.
class HostError : public std::runtime_error {
 public:
  HostError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// Raised by CallContext::tick() once the wall-clock deadline passes.
struct DeadlineExceeded {};

/// Cooperative deadline for long-running builtins.
class CallContext {
 public:
  using Clock = std::chrono::steady_clock;

  explicit CallContext(std::chrono::milliseconds budget)
      : deadline_(Clock::now() + budget) {}
  CallContext() : deadline_(Clock::time_point::max()) {}

  /// Cheap; checks the clock every 1024 calls.
  void tick() {
    if ((++ticks_ & 1023U) == 0 && Clock::now() > deadline_) throw DeadlineExceeded{};
  }
  bool expired() const { return Clock::now() > deadline_; }

  void set_max_depth(int d) { max_depth_ = d; }

  /// Scoped recursion level; throws HostError("RecursionError") past the
  /// configured depth.
  class Frame {
   public:
    explicit Frame(CallContext& ctx);
    ~Frame() { --ctx_.depth_; }
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;

   private:
    CallContext& ctx_;
  };

 private:
  Clock::time_point deadline_;
  std::uint64_t ticks_ = 0;
  int depth_ = 0;
  int max_depth_ = 1000;
};

std::string type_name(const Value& v);

bool truthy(const Value& v);
bool is_number(const Value& v);  // Bool, Int or Float
bool hashable(const Value& v);
void require_hashable(const Value& v);

bool eq(const Value& a, const Value& b);
inline bool ne(const Value& a, const Value& b) { return !eq(a, b); }
bool lt(const Value& a, const Value& b);
bool le(const Value& a, const Value& b);
bool gt(const Value& a, const Value& b);
bool ge(const Value& a, const Value& b);

/// Host equality with NaN treated as equal to NaN and Opaque values equal iff
/// type name and rendering match. This is the outcome-comparison relation.
bool eq_reflexive(const Value& a, const Value& b);

Value add(const Value& a, const Value& b);
Value sub(const Value& a, const Value& b);
Value mul(const Value& a, const Value& b);
Value truediv(const Value& a, const Value& b);
Value floordiv(const Value& a, const Value& b);
Value mod(const Value& a, const Value& b);
Value neg(const Value& a);
Value abs(const Value& a);

Value integer(std::int64_t i);
Value boolean(bool b);

std::int64_t len(const Value& v);
/// Elements visited by a for-loop: sequence items, set items, characters of
/// a string, keys of a map.
ValueList iterate(const Value& v);
bool contains(const Value& container, const Value& item);
Value getitem(const Value& container, const Value& index);
Value slice(const Value& seq, std::optional<BigInt> start, std::optional<BigInt> stop,
            std::optional<BigInt> step = std::nullopt);
/// Integer required by range(), chr(), bin() and similar.
BigInt index_value(const Value& v);

Value make_set(const ValueList& items);
Value list_of(const Value& iterable);

/// Host list sort: stable, comparisons via lt() in the host's merge order
/// for lists shorter than 64 elements. With `key`, keys are computed first.
ValueList sorted(ValueList items, const std::function<Value(const Value&)>& key = {},
                 bool reverse = false);
Value max_of(const ValueList& items);
Value min_of(const ValueList& items);

std::string repr(const Value& v);
std::string str(const Value& v);
/// int(<str>) parsing in base 10.
Value int_from_str(const std::string& s);

// String methods. Non-Str receivers raise AttributeError as the host does.
Value str_lower(const Value& s);
/// split() with no separator: runs of whitespace, no empty fields.
ValueList str_split(const Value& s);
/// split(sep) with an explicit separator.
ValueList str_split(const Value& s, const Value& sep);
bool str_startswith(const Value& s, const Value& prefix);
Value str_join(const Value& sep, const ValueList& items);
Value ord(const Value& c);
Value chr(const Value& i);
/// sum(iterable) with start 0.
Value sum(const ValueList& items, CallContext* ctx = nullptr);
/// isinstance(v, int); bool counts as int.
bool is_int(const Value& v);

/// Insertion-ordered map keyed by host equality.
class MapBuilder {
 public:
  const Value* get(const Value& key) const;
  void set(const Value& key, Value value);
  Value build() const;

 private:
  ValuePairs pairs_;
};

}  // namespace iosynth::host

#endif  // IOSYNTH_HOST_HPP
