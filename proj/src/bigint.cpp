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

#include "iosynth/bigint.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iosynth {

namespace mp = boost::multiprecision;

struct BigInt::Impl {
  mp::cpp_int v;
};

BigInt BigInt::from_impl(const Impl& impl) {
  static const mp::cpp_int kMin = std::numeric_limits<std::int64_t>::min();
  static const mp::cpp_int kMax = std::numeric_limits<std::int64_t>::max();
  if (impl.v >= kMin && impl.v <= kMax) {
    return BigInt(impl.v.convert_to<std::int64_t>());
  }
  return BigInt(std::make_shared<const Impl>(impl));
}

BigInt::Impl BigInt::to_impl() const {
  if (big_) return *big_;
  return Impl{mp::cpp_int(small_)};
}

BigInt BigInt::parse(std::string_view decimal) {
  std::string_view digits = decimal;
  bool neg = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    neg = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("invalid digit in integer literal");
    }
  }
  if (digits.size() <= 18) {
    std::int64_t v = 0;
    for (char c : digits) v = v * 10 + (c - '0');
    return BigInt(neg ? -v : v);
  }
  Impl impl{mp::cpp_int(std::string(digits))};
  if (neg) impl.v = -impl.v;
  return from_impl(impl);
}

BigInt BigInt::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("cannot convert non-finite float");
  d = std::trunc(d);
  if (d >= -9.2e18 && d <= 9.2e18) return BigInt(static_cast<std::int64_t>(d));
  int exp = 0;
  double mant = std::frexp(d, &exp);  // d = mant * 2^exp, 0.5 <= |mant| < 1
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Impl impl{mp::cpp_int(m)};
  impl.v <<= (exp - 53);
  return from_impl(impl);
}

std::string BigInt::to_string() const {
  if (!big_) return std::to_string(small_);
  return big_->v.str();
}

std::string BigInt::to_binary_digits() const {
  mp::cpp_int v = mp::abs(to_impl().v);
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(mp::bit_test(v, 0) ? '1' : '0');
    v >>= 1;
  }
  return {out.rbegin(), out.rend()};
}

int BigInt::sign() const {
  if (!big_) return (small_ > 0) - (small_ < 0);
  return big_->v.sign();
}

bool BigInt::is_odd() const {
  if (!big_) return (small_ & 1) != 0;
  return mp::bit_test(mp::abs(big_->v), 0);
}

double BigInt::to_double() const {
  if (!big_) {
    // Exact when |small_| < 2^53; otherwise go through the rounding path.
    if (small_ > -(1LL << 53) && small_ < (1LL << 53)) return static_cast<double>(small_);
  }
  return true_div(*this, BigInt(1));
}

BigInt BigInt::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return BigInt(-small_);
  Impl impl = to_impl();
  impl.v = -impl.v;
  return from_impl(impl);
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  std::int64_t r = 0;
  if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return BigInt(r);
  return BigInt::from_impl(BigInt::Impl{a.to_impl().v + b.to_impl().v});
}

BigInt operator-(const BigInt& a, const BigInt& b) {
  std::int64_t r = 0;
  if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return BigInt(r);
  return BigInt::from_impl(BigInt::Impl{a.to_impl().v - b.to_impl().v});
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  std::int64_t r = 0;
  if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return BigInt(r);
  return BigInt::from_impl(BigInt::Impl{a.to_impl().v * b.to_impl().v});
}

BigInt BigInt::floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ &&
      !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    std::int64_t q = a.small_ / b.small_;
    if ((a.small_ % b.small_ != 0) && ((a.small_ < 0) != (b.small_ < 0))) --q;
    return BigInt(q);
  }
  mp::cpp_int x = a.to_impl().v;
  mp::cpp_int y = b.to_impl().v;
  mp::cpp_int q = x / y;  // truncates
  mp::cpp_int r = x - q * y;
  if (r != 0 && ((r < 0) != (y < 0))) q -= 1;
  return from_impl(Impl{q});
}

BigInt BigInt::floor_mod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("modulo by zero");
  if (!a.big_ && !b.big_ && b.small_ != -1) {
    std::int64_t r = a.small_ % b.small_;
    if (r != 0 && ((r < 0) != (b.small_ < 0))) r += b.small_;
    return BigInt(r);
  }
  if (!b.big_ && b.small_ == -1) return BigInt(0);
  mp::cpp_int x = a.to_impl().v;
  mp::cpp_int y = b.to_impl().v;
  mp::cpp_int r = x % y;
  if (r != 0 && ((r < 0) != (y < 0))) r += y;
  return from_impl(Impl{r});
}

double BigInt::true_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_) {
    const std::int64_t lim = 1LL << 53;
    if (a.small_ > -lim && a.small_ < lim && b.small_ > -lim && b.small_ < lim) {
      return static_cast<double>(a.small_) / static_cast<double>(b.small_);
    }
  }
  mp::cpp_int x = a.to_impl().v;
  mp::cpp_int y = b.to_impl().v;
  const bool neg = (x < 0) != (y < 0);
  x = mp::abs(x);
  y = mp::abs(y);
  if (x == 0) return neg ? -0.0 : 0.0;
  // Scale so the integer quotient carries at least 55 significant bits, then
  // fold the remainder into a sticky bit and round once via ldexp.
  const long long xb = static_cast<long long>(mp::msb(x));
  const long long yb = static_cast<long long>(mp::msb(y));
  long long shift = 55 - (xb - yb);
  if (shift > 0) {
    x <<= shift;
  } else {
    y <<= -shift;
  }
  mp::cpp_int q = x / y;
  mp::cpp_int r = x - q * y;
  // q has 55 or 56 bits; reduce to 54 bits plus sticky so one rounding step
  // (in the conversion below) is exact round-half-even.
  long long extra = static_cast<long long>(mp::msb(q)) + 1 - 54;
  bool sticky = r != 0;
  if (extra > 0) {
    mp::cpp_int low = q & ((mp::cpp_int(1) << extra) - 1);
    if (low != 0) sticky = true;
    q >>= extra;
    shift -= extra;
  }
  // q is now a 54-bit integer; round to 53 bits by hand.
  auto bits = q.convert_to<std::uint64_t>();
  std::uint64_t mant = bits >> 1;
  const bool half = (bits & 1) != 0;
  if (half && (sticky || (mant & 1))) ++mant;
  long long exp2 = 1 - shift;  // value = mant * 2^exp2
  // Denormal/overflow handling is left to ldexp; overflow check first.
  const long long top = static_cast<long long>(64 - __builtin_clzll(mant)) + exp2;
  if (top > 1024) throw std::overflow_error("integer division result too large for a float");
  double result = std::ldexp(static_cast<double>(mant), static_cast<int>(exp2));
  if (std::isinf(result)) throw std::overflow_error("integer division result too large for a float");
  return neg ? -result : result;
}

int BigInt::compare(const BigInt& a, double d) {
  if (std::isinf(d)) return d > 0 ? -1 : 1;
  const double t = std::trunc(d);
  const BigInt ti = from_double(t);
  const auto c = a <=> ti;
  if (c < 0) return -1;
  if (c > 0) return 1;
  const double frac = d - t;
  if (frac > 0) return -1;
  if (frac < 0) return 1;
  return 0;
}

bool operator==(const BigInt& a, const BigInt& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (!a.big_ || !b.big_) return false;  // normalized: big never fits int64
  return a.big_->v == b.big_->v;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const int c = a.to_impl().v.compare(b.to_impl().v);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace iosynth
