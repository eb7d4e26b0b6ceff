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

#ifndef IOSYNTH_BIGINT_HPP
#define IOSYNTH_BIGINT_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace iosynth {

/// Arbitrary-precision signed integer with an int64 fast path.
///
/// Values that fit in int64 never allocate; larger magnitudes are held in a
/// shared immutable representation, so copies are cheap and thread-safe.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  BigInt(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)

  /// Parses an optionally signed decimal string. Throws std::invalid_argument.
  static BigInt parse(std::string_view decimal);
  /// Truncates toward zero. Throws std::domain_error for NaN or infinity.
  static BigInt from_double(double d);

  std::string to_string() const;
  /// Digits in base 2 without prefix or sign.
  std::string to_binary_digits() const;

  bool fits_int64() const { return !big_; }
  std::int64_t as_int64() const { return small_; }
  int sign() const;
  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_odd() const;

  /// Nearest double, ties to even. Throws std::overflow_error when the
  /// magnitude exceeds the double range.
  double to_double() const;

  BigInt operator-() const;
  BigInt abs() const { return sign() < 0 ? -*this : *this; }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  // Floor division and modulo with the sign of the divisor. Divisor must be
  // non-zero.
  static BigInt floor_div(const BigInt& a, const BigInt& b);
  static BigInt floor_mod(const BigInt& a, const BigInt& b);
  /// Correctly rounded a / b. Divisor must be non-zero; throws
  /// std::overflow_error if the quotient does not fit a double.
  static double true_div(const BigInt& a, const BigInt& b);

  /// Exact three-way comparison against a finite double.
  static int compare(const BigInt& a, double d);

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

  struct Impl;

 private:
  explicit BigInt(std::shared_ptr<const Impl> big) : big_(std::move(big)) {}
  static BigInt from_impl(const Impl& impl);
  Impl to_impl() const;

  std::int64_t small_ = 0;
  std::shared_ptr<const Impl> big_;
};

}  // namespace iosynth

#endif  // IOSYNTH_BIGINT_HPP
