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

// Records are Maps with Str keys. These helpers build and read them with
// errors that name the offending field.

#ifndef IOSYNTH_RECORD_HPP
#define IOSYNTH_RECORD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iosynth/value.hpp"

namespace iosynth {

class RecordError : public std::runtime_error {
 public:
  RecordError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace rec {
inline Value i64(std::int64_t v) { return Value::integer(BigInt(v)); }
}  // namespace rec

class RecordBuilder {
 public:
  RecordBuilder& add(std::string key, Value v) {
    pairs_.emplace_back(Value::str(std::move(key)), std::move(v));
    return *this;
  }
  Value build() const { return Value::map(pairs_); }

 private:
  ValuePairs pairs_;
};

class RecordReader {
 public:
  /// Throws RecordError unless v is a Map.
  RecordReader(const Value& v, std::string what);

  const Value* find(std::string_view key) const { return v_.field(key); }
  const Value& get(std::string_view key) const;
  const Value& kind(std::string_view key, Value::Kind k) const;
  std::string str(std::string_view key) const;
  std::string str_or(std::string_view key, std::string fallback) const;
  std::int64_t i64(std::string_view key) const;
  std::int64_t i64_or(std::string_view key, std::int64_t fallback) const;
  bool boolean(std::string_view key) const;
  bool boolean_or(std::string_view key, bool fallback) const;
  double number(std::string_view key) const;

 private:
  [[noreturn]] void fail(std::string_view key, const std::string& why) const;

  const Value& v_;
  std::string what_;
};

}  // namespace iosynth

#endif  // IOSYNTH_RECORD_HPP
