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

#include "iosynth/pysource.hpp"

namespace iosynth::py {
namespace {

std::vector<Tok> kinds(std::string_view src) {
  std::vector<Tok> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

TEST(Tokenize, IndentationAndNewlines) {
  const auto k = kinds("def f(x):\n    return x\n");
  const std::vector<Tok> want = {Tok::Name, Tok::Name, Tok::Op,   Tok::Name,    Tok::Op,     Tok::Op,
                                 Tok::Newline, Tok::Indent, Tok::Name, Tok::Name, Tok::Newline, Tok::Dedent};
  EXPECT_EQ(k, want);
}

TEST(Tokenize, BracketsJoinLines) {
  const auto toks = tokenize("x = [1,\n     2]\n");
  int newlines = 0;
  for (const auto& t : toks) newlines += t.kind == Tok::Newline;
  EXPECT_EQ(newlines, 1);
}

TEST(Tokenize, StringsAndComments) {
  const auto toks = tokenize("s = 'a # b'  # real\nt = \"\"\"x\ny\"\"\"\n");
  ASSERT_GE(toks.size(), 4u);
  EXPECT_EQ(toks[2].kind, Tok::String);
  EXPECT_EQ(toks[2].text, "'a # b'");
  EXPECT_EQ(toks[3].kind, Tok::Comment);
  bool triple = false;
  for (const auto& t : toks) triple |= t.kind == Tok::String && t.text == "\"\"\"x\ny\"\"\"";
  EXPECT_TRUE(triple);
}

TEST(Tokenize, Errors) {
  EXPECT_THROW(tokenize("x = (1, 2\n"), SourceError);
  EXPECT_THROW(tokenize("x = 'abc\n"), SourceError);
  EXPECT_THROW(tokenize("x = 1)\n"), SourceError);
  EXPECT_THROW(tokenize("if x:\n        a\n    b\n"), SourceError);
  EXPECT_THROW(tokenize("x = 1 $ 2\n"), SourceError);
}

TEST(DefinesFunction, TopLevelOnly) {
  EXPECT_TRUE(defines_function(tokenize("def solution(lst):\n    return 1\n"), "solution"));
  EXPECT_FALSE(defines_function(tokenize("def solution(lst):\n    return 1\n"), "sol"));
  EXPECT_FALSE(defines_function(tokenize("class A:\n    def solution(self):\n        pass\n"), "solution"));
  EXPECT_FALSE(defines_function(tokenize("solution = 3\n"), "solution"));
}

TEST(Fingerprint, IgnoresLayoutCommentsAndEntryName) {
  const std::string a = "def is_palindrome(s):\n    cleaned = s.lower()\n    return cleaned == cleaned[::-1]\n";
  const std::string b =
      "# anonymized\n\ndef solution(s):\n    cleaned = s.lower()  # fold case\n\n"
      "    return cleaned==cleaned[ :: -1]\n";
  EXPECT_EQ(fingerprint(a, "is_palindrome"), fingerprint(b, "solution"));
  EXPECT_NE(fingerprint(a, "is_palindrome"), fingerprint(a, "solution"));
  const std::string c = "def solution(s):\n    cleaned = s\n    return cleaned == cleaned[::-1]\n";
  EXPECT_NE(fingerprint(a, "is_palindrome"), fingerprint(c, "solution"));
}

TEST(Fingerprint, IndentationIsSignificant) {
  const std::string a = "def f(x):\n    if x:\n        x = 1\n    return x\n";
  const std::string b = "def f(x):\n    if x:\n        x = 1\n        return x\n";
  EXPECT_NE(fingerprint(a, "f"), fingerprint(b, "f"));
}

TEST(Rename, RecursiveSelfReferences) {
  const std::string src =
      "def flatten(lst):\n"
      "    result = []\n"
      "    for item in lst:\n"
      "        if isinstance(item, list):\n"
      "            result.extend(flatten(item))\n"
      "        else:\n"
      "            result.append(item)\n"
      "    return result\n";
  const std::string out = rename_identifier(src, "flatten", "solution");
  EXPECT_EQ(out.find("flatten"), std::string::npos);
  EXPECT_NE(out.find("def solution(lst):"), std::string::npos);
  EXPECT_NE(out.find("result.extend(solution(item))"), std::string::npos);
}

TEST(Rename, LeavesAttributesStringsAndCommentsAlone) {
  const std::string src = "def f(x):\n    # f is here\n    return x.f + len('f') + f(x)\n";
  EXPECT_EQ(rename_identifier(src, "f", "g"), "def g(x):\n    # f is here\n    return x.f + len('f') + g(x)\n");
}

TEST(Rename, IdentityWhenAlreadyNamed) {
  const std::string src = "def solution(a, b):\n    return a + b\n";
  EXPECT_EQ(rename_identifier(src, "solution", "solution"), src);
}

TEST(Rename, WholeIdentifiersOnly) {
  EXPECT_EQ(rename_identifier("def f(f_x):\n    return f_x\n", "f", "g"), "def g(f_x):\n    return f_x\n");
}

TEST(CountLines, SkipsBlank) {
  EXPECT_EQ(count_lines("a\n\n   \nb\n"), 2u);
  EXPECT_EQ(count_lines(""), 0u);
}

}  // namespace
}  // namespace iosynth::py
