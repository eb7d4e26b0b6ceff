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

#include "iosynth/record.hpp"

namespace iosynth {

RecordReader::RecordReader(const Value& v, std::string what) : v_(v), what_(std::move(what)) {
  if (!v.is(Value::Kind::Map)) throw RecordError("", what_ + ": expected a record (map)");
}

void RecordReader::fail(std::string_view key, const std::string& why) const {
  throw RecordError(std::string(key), what_ + ": field '" + std::string(key) + "' " + why);
}

const Value& RecordReader::get(std::string_view key) const {
  const Value* f = find(key);
  if (f == nullptr) fail(key, "is missing");
  return *f;
}

const Value& RecordReader::kind(std::string_view key, Value::Kind k) const {
  const Value& f = get(key);
  if (!f.is(k)) fail(key, std::string("must be ") + kind_name(k));
  return f;
}

std::string RecordReader::str(std::string_view key) const {
  return kind(key, Value::Kind::Str).as_str();
}

std::string RecordReader::str_or(std::string_view key, std::string fallback) const {
  return find(key) ? str(key) : fallback;
}

std::int64_t RecordReader::i64(std::string_view key) const {
  const Value& f = kind(key, Value::Kind::Int);
  if (!f.as_int().fits_int64()) fail(key, "is out of range");
  return f.as_int().as_int64();
}

std::int64_t RecordReader::i64_or(std::string_view key, std::int64_t fallback) const {
  return find(key) ? i64(key) : fallback;
}

bool RecordReader::boolean(std::string_view key) const {
  return kind(key, Value::Kind::Bool).as_bool();
}

bool RecordReader::boolean_or(std::string_view key, bool fallback) const {
  return find(key) ? boolean(key) : fallback;
}

double RecordReader::number(std::string_view key) const {
  const Value& f = get(key);
  if (f.is(Value::Kind::Float)) return f.as_float();
  if (f.is(Value::Kind::Int)) return f.as_int().to_double();
  fail(key, "must be a number");
}

}  // namespace iosynth
