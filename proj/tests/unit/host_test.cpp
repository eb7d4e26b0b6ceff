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

#include "iosynth/host.hpp"
#include "iosynth/literal.hpp"

namespace iosynth::host {
namespace {

Value L(const char* text) { return parse_literal(text); }

std::string err_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const HostError& e) {
    return e.kind();
  }
  return "";
}

TEST(HostEq, CrossKindNumeric) {
  EXPECT_TRUE(eq(L("1"), L("1.0")));
  EXPECT_TRUE(eq(L("True"), L("1")));
  EXPECT_FALSE(eq(L("float('nan')"), L("float('nan')")));
  EXPECT_TRUE(eq_reflexive(L("float('nan')"), L("float('nan')")));
  EXPECT_TRUE(eq(L("[1, (2, 3)]"), L("[1.0, (2, 3.0)]")));
  EXPECT_FALSE(eq(L("[1]"), L("(1,)")));
  EXPECT_TRUE(eq(L("{1, 2}"), L("{2.0, 1}")));
  EXPECT_TRUE(eq(L("{'a': 1, 'b': 2}"), L("{'b': 2, 'a': 1}")));
  EXPECT_FALSE(eq(L("'1'"), L("1")));
}

TEST(HostEq, BigIntVsFloat) {
  EXPECT_TRUE(eq(L("9007199254740993"), L("9007199254740993")));
  EXPECT_FALSE(eq(L("9007199254740993"), L("9007199254740992.0")));
  EXPECT_TRUE(eq(L("9007199254740992"), L("9007199254740992.0")));
}

TEST(HostEq, OpaqueByTypeAndRendering) {
  EXPECT_TRUE(eq_reflexive(Value::opaque("W", "<w>"), Value::opaque("W", "<w>")));
  EXPECT_FALSE(eq_reflexive(Value::opaque("W", "<w>"), Value::opaque("V", "<w>")));
}

TEST(HostOrder, Comparisons) {
  EXPECT_TRUE(lt(L("1"), L("1.5")));
  EXPECT_TRUE(lt(L("[1, 2]"), L("[1, 3]")));
  EXPECT_TRUE(lt(L("[1]"), L("[1, 0]")));
  EXPECT_TRUE(lt(L("'Z'"), L("'a'")));
  EXPECT_TRUE(le(L("{1}"), L("{1, 2}")));
  EXPECT_FALSE(lt(L("{1, 3}"), L("{1, 2}")));
  EXPECT_EQ(err_kind([] { lt(L("1"), L("'a'")); }), "TypeError");
  EXPECT_EQ(err_kind([] { lt(L("None"), L("None")); }), "TypeError");
}

TEST(HostArith, Semantics) {
  EXPECT_EQ(render_repr(add(L("1"), L("True"))), "2");
  EXPECT_EQ(render_repr(add(L("'a'"), L("'b'"))), "'ab'");
  EXPECT_EQ(render_repr(add(L("[1]"), L("[2]"))), "[1, 2]");
  EXPECT_EQ(render_repr(floordiv(L("-7"), L("2"))), "-4");
  EXPECT_EQ(render_repr(mod(L("-7"), L("2"))), "1");
  EXPECT_EQ(render_repr(mod(L("7.5"), L("-2"))), "-0.5");
  EXPECT_EQ(render_repr(truediv(L("1"), L("3"))), "0.3333333333333333");
  EXPECT_EQ(render_repr(mul(L("'ab'"), L("3"))), "'ababab'");
  EXPECT_EQ(render_repr(mul(L("[0]"), L("-1"))), "[]");
  EXPECT_EQ(render_repr(mul(L("99999999999"), L("99999999999"))), "9999999999800000000001");
  EXPECT_EQ(err_kind([] { truediv(L("1"), L("0")); }), "ZeroDivisionError");
  EXPECT_EQ(err_kind([] { mod(L("1.0"), L("0")); }), "ZeroDivisionError");
  EXPECT_EQ(err_kind([] { add(L("1"), L("'a'")); }), "TypeError");
  EXPECT_EQ(err_kind([] { add(L("[1]"), L("(1,)")); }), "TypeError");
  EXPECT_EQ(err_kind([] { mod(L("'%s'"), L("1")); }), "TypeError");
  EXPECT_EQ(render_repr(abs(L("-2.5"))), "2.5");
  EXPECT_EQ(render_repr(neg(L("True"))), "-1");
}

TEST(HostContainers, IndexingAndSlicing) {
  EXPECT_EQ(render_repr(getitem(L("[1, 2, 3]"), L("-1"))), "3");
  EXPECT_EQ(render_repr(getitem(L("'h\\xe9llo'"), L("1"))), "'\xc3\xa9'");
  EXPECT_EQ(err_kind([] { getitem(L("[]"), L("0")); }), "IndexError");
  EXPECT_EQ(err_kind([] { getitem(L("{'a': 1}"), L("'b'")); }), "KeyError");
  EXPECT_EQ(err_kind([] { getitem(L("[1]"), L("'a'")); }), "TypeError");
  EXPECT_EQ(err_kind([] { getitem(L("{1, 2}"), L("0")); }), "TypeError");
  EXPECT_EQ(render_repr(getitem(L("{1: 'x'}"), L("1.0"))), "'x'");
  EXPECT_EQ(render_repr(slice(L("'hello'"), std::nullopt, std::nullopt, BigInt(-1))), "'olleh'");
  EXPECT_EQ(render_repr(slice(L("[1, 2, 3, 4]"), BigInt(1), std::nullopt)), "[2, 3, 4]");
  EXPECT_EQ(render_repr(slice(L("(1, 2, 3, 4)"), BigInt(-2), BigInt(100))), "(3, 4)");
  EXPECT_EQ(render_repr(slice(L("[1, 2, 3, 4, 5]"), BigInt(4), BigInt(0), BigInt(-2))), "[5, 3]");
  EXPECT_EQ(err_kind([] { slice(L("[1]"), std::nullopt, std::nullopt, BigInt(0)); }), "ValueError");
  EXPECT_EQ(len(L("'h\\xe9llo'")), 5);
  EXPECT_TRUE(contains(L("'hello'"), L("'ell'")));
  EXPECT_TRUE(contains(L("[1, 2]"), L("2.0")));
  EXPECT_EQ(err_kind([] { contains(L("{1}"), L("[1]")); }), "TypeError");
  EXPECT_EQ(err_kind([] { contains(L("'abc'"), L("1")); }), "TypeError");
}

TEST(HostSets, HashabilityAndDedup) {
  EXPECT_EQ(err_kind([] { make_set(L("[1, [2]]").items()); }), "TypeError");
  EXPECT_EQ(err_kind([] { make_set(L("[(1, [2])]").items()); }), "TypeError");
  EXPECT_EQ(make_set(L("[1, 1.0, True, 2]").items()).items().size(), 2u);
  EXPECT_TRUE(hashable(L("(1, 'a', None)")));
  EXPECT_FALSE(hashable(L("{}")));
}

TEST(HostSort, StableAndTyped) {
  EXPECT_EQ(render_repr(Value::list(sorted(L("[3, 1.5, True, -2]").items()))), "[-2, True, 1.5, 3]");
  EXPECT_EQ(render_repr(Value::list(sorted(L("[-3, 2, -1, 1]").items(), [](const Value& v) { return abs(v); }))),
            "[-1, 1, 2, -3]");
  EXPECT_EQ(render_repr(Value::list(sorted(L("[1, 3, 2]").items(), {}, true))), "[3, 2, 1]");
  EXPECT_EQ(err_kind([] { sorted(L("[1, 'a']").items()); }), "TypeError");
  // Stability with equal keys under reverse.
  EXPECT_EQ(render_repr(Value::list(sorted(L("[(1, 'a'), (0, 'b'), (1, 'c')]").items(),
                                           [](const Value& v) { return v.items()[0]; }, true))),
            "[(1, 'a'), (1, 'c'), (0, 'b')]");
}

TEST(HostSort, LongListsMatchStableReference) {
  // 200 elements exercises the run-merging path.
  ValueList items;
  std::uint64_t x = 12345;
  for (int i = 0; i < 200; ++i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    items.push_back(Value::integer(BigInt(static_cast<std::int64_t>((x >> 33) % 50))));
  }
  ValueList expect = items;
  std::stable_sort(expect.begin(), expect.end(),
                   [](const Value& a, const Value& b) { return a.as_int() < b.as_int(); });
  const ValueList got = sorted(items);
  for (std::size_t i = 0; i < got.size(); ++i) ASSERT_TRUE(structural_eq(got[i], expect[i]));
}

TEST(HostMisc, StrAndInt) {
  EXPECT_EQ(str(L("'x'")), "x");
  EXPECT_EQ(repr(L("'x'")), "'x'");
  EXPECT_EQ(render_repr(int_from_str(" -12 ")), "-12");
  EXPECT_EQ(render_repr(int_from_str("1_0")), "10");
  EXPECT_EQ(err_kind([] { int_from_str("1.5"); }), "ValueError");
  EXPECT_TRUE(truthy(L("[0]")));
  EXPECT_FALSE(truthy(L("0.0")));
  EXPECT_EQ(type_name(L("{1}")), "set");
  EXPECT_EQ(render_repr(max_of(L("[1, 5, 3]").items())), "5");
  EXPECT_EQ(err_kind([] { max_of({}); }), "ValueError");
}

TEST(HostDeadline, TickThrows) {
  CallContext ctx(std::chrono::milliseconds(1));
  EXPECT_THROW(
      {
        for (;;) ctx.tick();
      },
      DeadlineExceeded);
}

}  // namespace
}  // namespace iosynth::host
