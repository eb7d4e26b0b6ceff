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

#include <gtest/gtest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "iosynth/value.hpp"

namespace iosynth {
namespace {

Value I(std::int64_t i) { return Value::integer(BigInt(i)); }
Value F(double d) { return Value::floating(d); }
Value S(const char* s) { return Value::str(s); }

TEST(Encode, Scalars) {
  EXPECT_EQ(encode(Value::null()), "N");
  EXPECT_EQ(encode(Value::boolean(true)), "T");
  EXPECT_EQ(encode(I(1)), "i1");
  EXPECT_EQ(encode(I(-42)), "i-42");
  EXPECT_EQ(encode(F(2.0)), "d2.0");
  EXPECT_EQ(encode(F(0.1)), "d0.1");
  EXPECT_EQ(encode(F(1e16)), "d1e+16");
  EXPECT_EQ(encode(F(std::nan(""))), "dnan");
  EXPECT_EQ(encode(F(-HUGE_VAL)), "d-inf");
  EXPECT_EQ(encode(S("a\"b")), "s\"a\\\"b\"");
}

TEST(Encode, Containers) {
  EXPECT_EQ(encode(Value::list({I(1), F(2.0), S("a")})), "[i1,d2.0,s\"a\"]");
  EXPECT_EQ(encode(Value::tuple({I(1), I(2)})), "(i1,i2)");
  EXPECT_EQ(encode(Value::map({{S("k"), Value::null()}})), "{s\"k\":N}");
  EXPECT_EQ(encode(Value::set({I(3), I(1), I(3)})), "<i1,i3>");
  EXPECT_EQ(encode(Value::opaque("Foo", "<Foo>")), "o\"Foo\"\"<Foo>\"");
}

TEST(Encode, BigIntRoundTrip) {
  const Value big = Value::integer(BigInt::parse("-123456789012345678901234567890"));
  EXPECT_EQ(encode(big), "i-123456789012345678901234567890");
  EXPECT_TRUE(structural_eq(decode(encode(big)), big));
}

TEST(Decode, TupleRoundTrip) {
  const Value t = Value::tuple({I(1), I(2)});
  EXPECT_TRUE(structural_eq(decode(encode(t)), t));
}

TEST(Decode, UnknownTagReportsOffset) {
  try {
    decode("[i1,q2]");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Decode, RejectsMalformed) {
  for (const char* bad : {"", "i", "i-", "[i1", "[i1,]", "i1 ", " i1", "s\"abc", "{s\"a\":N,s\"a\":N}",
                          "<i1,i1>", "d", "dfoo", "i01", "Tx"}) {
    EXPECT_THROW(decode(bad), DecodeError) << bad;
  }
}

TEST(Decode, SetOrderIsCanonicalized) {
  // Workers may emit set elements in any order.
  EXPECT_EQ(encode(decode("<i2,s\"a\",i1>")), "<i1,i2,s\"a\">");
}

TEST(Decode, NanRoundTrips) {
  const Value v = decode(encode(F(std::nan(""))));
  ASSERT_TRUE(v.is(Value::Kind::Float));
  EXPECT_TRUE(std::isnan(v.as_float()));
}

TEST(Decode, DeepNesting) {
  const Value v = testgen::Gen::nested(50);
  EXPECT_TRUE(structural_eq(decode(encode(v)), v));
}

TEST(Property, RoundTripOverGeneratedCorpus) {
  testgen::Gen g(7);
  g.allow_opaque = true;
  for (int i = 0; i < 3000; ++i) {
    const Value v = g.value(4);
    const std::string e = encode(v);
    const Value back = decode(e);
    ASSERT_TRUE(structural_eq(back, v)) << e;
    ASSERT_EQ(encode(back), e);
  }
}

TEST(Property, StructuralEqIsEquivalence) {
  testgen::Gen g(11);
  g.allow_nan = false;
  std::vector<Value> pool;
  for (int i = 0; i < 60; ++i) {
    Value v = g.value(2);
    pool.push_back(v);
    pool.push_back(decode(encode(v)));
  }
  for (const auto& a : pool) {
    ASSERT_TRUE(structural_eq(a, a));
    for (const auto& b : pool) {
      ASSERT_EQ(structural_eq(a, b), structural_eq(b, a));
      ASSERT_EQ(structural_eq(a, b), structural_compare(a, b) == 0);
      if (!structural_eq(a, b)) continue;
      for (const auto& c : pool) {
        if (structural_eq(b, c)) ASSERT_TRUE(structural_eq(a, c));
      }
    }
  }
}

TEST(StructuralEq, Basics) {
  EXPECT_TRUE(structural_eq(I(1), I(1)));
  EXPECT_FALSE(structural_eq(I(1), F(1.0)));
  EXPECT_FALSE(structural_eq(I(1), Value::boolean(true)));
  EXPECT_TRUE(structural_eq(Value::list({Value::tuple({I(1)})}), Value::list({Value::tuple({I(1)})})));
  EXPECT_TRUE(structural_eq(F(std::nan("")), F(std::nan(""))));
  EXPECT_FALSE(structural_eq(Value::list({I(1)}), Value::tuple({I(1)})));
}

TEST(Map, DuplicateKeyRejected) {
  EXPECT_THROW(Value::map({{I(1), I(2)}, {I(1), I(3)}}), std::invalid_argument);
  // Distinct kinds are distinct keys structurally.
  EXPECT_NO_THROW(Value::map({{I(1), I(2)}, {F(1.0), I(3)}}));
}

TEST(Outcome, ErrRequiresKind) {
  EXPECT_THROW(Outcome::err(""), std::invalid_argument);
  const Outcome o = Outcome::err("TypeError", "");
  EXPECT_TRUE(o.is_err());
  EXPECT_EQ(o.error_kind(), "TypeError");
}

TEST(Outcome, ValueRoundTrip) {
  const Outcome a = Outcome::ok(I(3));
  const Outcome b = Outcome::err("ValueError", "bad \"thing\"");
  EXPECT_EQ(encode(outcome_to_value(a)), "{s\"ok\":i3}");
  EXPECT_TRUE(structural_eq(outcome_from_value(outcome_to_value(b)), b));
  EXPECT_TRUE(structural_eq(outcome_from_value(decode(encode(outcome_to_value(a)))), a));
}

TEST(FloatRepr, MatchesHostFormatting) {
  EXPECT_EQ(float_repr(1.0), "1.0");
  EXPECT_EQ(float_repr(-0.0), "-0.0");
  EXPECT_EQ(float_repr(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(float_repr(1e16), "1e+16");
  EXPECT_EQ(float_repr(123456789012345.6), "123456789012345.6");
  EXPECT_EQ(float_repr(0.0001), "0.0001");
  EXPECT_EQ(float_repr(0.00001), "1e-05");
  EXPECT_EQ(float_repr(1.5e-7), "1.5e-07");
  EXPECT_EQ(float_repr(1e300 * 10), "1e+301");
  EXPECT_EQ(float_repr(HUGE_VAL), "inf");
}

TEST(Value, SharingIsCheap) {
  const Value big = Value::list(ValueList(1000, I(1)));
  const Value copy = big;
  EXPECT_EQ(&big.items(), &copy.items());
}

TEST(Value, ContainsOpaque) {
  EXPECT_FALSE(Value::list({I(1)}).contains_opaque());
  EXPECT_TRUE(Value::list({Value::tuple({Value::opaque("X", "x")})}).contains_opaque());
}

}  // namespace
}  // namespace iosynth
