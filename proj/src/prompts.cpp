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

#include "iosynth/prompts.hpp"

#include <cctype>
#include <regex>

#include "iosynth/literal.hpp"
#include "iosynth/text.hpp"

namespace iosynth {

namespace {

std::string plural(std::int64_t n, const char* one, const char* many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::string result_lines(const std::vector<IOExample>& examples, std::size_t first) {
  std::string out;
  for (std::size_t i = 0; i < examples.size(); ++i) out += render_result(examples[i].output, first + i + 1) + "\n";
  return out;
}

}  // namespace

std::string render_invocation(std::string_view entry, const ArgTuple& args, std::size_t index) {
  return "print('Result " + std::to_string(index) + ": ' + str(" + std::string(entry) + "(" + render_args(args) +
         ")))";
}

std::string render_result(const Outcome& o, std::size_t index) {
  return "Result " + std::to_string(index) + ": " + (o.is_ok() ? render_display(o.value()) : kErrorMarker);
}

std::pair<std::string, std::string> counterexample_summaries(const Counterexample& cex) {
  const Outcome& t = cex.truth;
  const Outcome& c = cex.candidate;
  if (t.is_ok() && c.is_ok()) return {render_display(t.value()), render_display(c.value())};
  if (t.is_err() && c.is_err()) return {t.error_kind(), c.error_kind()};
  return {t.is_err() ? kErrorMarker : kNoErrorMarker, c.is_err() ? kErrorMarker : kNoErrorMarker};
}

std::string budget_sentence(std::int64_t remaining_io, std::int64_t debugging_checks) {
  std::string out = "You have " + plural(remaining_io, "additional function invocation", "additional function invocations");
  if (debugging_checks > 0) {
    return out + " and " + plural(debugging_checks, "debugging check", "debugging checks") + " left.";
  }
  return out + " and no debugging checks left, so your next implementation is final.";
}

std::string render_initial_prompt(const Task& task, const Budgets& budgets) {
  const std::string& f = task.entry;
  std::string p;
  p += "You are reverse-engineering a hidden Python function named `" + f +
       "`. You can only observe it through calls. Your task is to write an implementation that behaves "
       "identically on every input, including which inputs raise errors.\n\n";
  p += "GIVEN EXAMPLES:\n```python\n";
  for (std::size_t i = 0; i < task.e0.size(); ++i) p += render_invocation(f, task.e0[i].input, i + 1) + "\n";
  p += "```\n\nOUTPUTS:\n";
  p += result_lines(task.e0, 0);
  p += "\nEvery turn, think first, then choose exactly one option.\n";
  p += "1. INVOCATIONS: a ```python block of new calls written exactly like the examples above, one per line. "
       "You will see their outputs.\n";
  p += "2. IMPLEMENTATION: a ```python block defining `" + f +
       "`. A differential tester compares it against the hidden function. If they disagree and a debugging check "
       "remains, you get the failing input and may continue; otherwise the submission is final.\n";
  p += "A call that raises is shown as '" + std::string(kErrorMarker) + "'.\n\n";
  const std::int64_t extra = budgets.b_io - static_cast<std::int64_t>(task.e0.size());
  const std::int64_t checks = budgets.b_oracle - 1;
  if (extra > 0) {
    p += "You can generate up to " + plural(extra, "additional function invocation", "additional function invocations") +
         " (across all turns). ";
  } else {
    p += "You cannot generate additional function invocations; only IMPLEMENTATION is available. ";
  }
  if (checks > 0) {
    p += "You have only " + plural(checks, "debugging check", "debugging checks") + " total.\n";
  } else {
    p += "You have no debugging checks: your first implementation is final.\n";
  }
  return p;
}

std::string render_feedback_prompt(const Observation& obs, const SessionState& state) {
  const std::int64_t io = state.remaining_io();
  const std::int64_t checks = state.debugging_checks_left();
  std::string p;
  if (const auto* ex = std::get_if<Examples>(&obs)) {
    p += "OUTPUTS:\n" + result_lines(ex->examples, ex->first_index);
    if (ex->dropped > 0) {
      p += plural(static_cast<std::int64_t>(ex->dropped), "invocation was", "invocations were") +
           " not run because the invocation budget is used up.\n";
    }
  } else if (const auto* fail = std::get_if<OracleFail>(&obs)) {
    const auto [truth, cand] = counterexample_summaries(fail->counterexample);
    p += "Your implementation disagrees with the hidden function.\n";
    p += "Failed input: " + render_args(fail->counterexample.input) + "\n";
    p += "Ground Truth Function != Output From Generated Code:\n";
    p += "'" + truth + "' != '" + cand + "'\n";
  } else if (const auto* notice = std::get_if<BudgetNotice>(&obs)) {
    if (notice->kind == BudgetNotice::Kind::IoExhausted) {
      p += "No invocations were run: you have 0 additional function invocations left. "
           "The only remaining option is IMPLEMENTATION.\n";
    } else {
      p += "No oracle calls remain.\n";
    }
  } else if (const auto* bad = std::get_if<InvalidAction>(&obs)) {
    p += "Your response could not be used (" + bad->diagnostic + "). Reply with one INVOCATIONS block or one "
         "IMPLEMENTATION block. Attempt " + std::to_string(bad->consecutive) + " of " +
         std::to_string(kMaxConsecutiveInvalid) + ".\n";
  } else if (std::holds_alternative<OraclePass>(obs)) {
    return "Your implementation passed the differential tester.\n";
  } else if (const auto* last = std::get_if<FinalFail>(&obs)) {
    const auto [truth, cand] = counterexample_summaries(last->counterexample);
    return "Your final implementation disagrees with the hidden function.\nFailed input: " +
           render_args(last->counterexample.input) + "\nGround Truth Function != Output From Generated Code:\n'" +
           truth + "' != '" + cand + "'\n";
  } else if (const auto* ab = std::get_if<SessionAborted>(&obs)) {
    return "Session aborted: " + ab->reason + "\n";
  }
  if (io <= 0 && !std::holds_alternative<BudgetNotice>(obs)) p += "Only IMPLEMENTATION is available now. ";
  p += budget_sentence(std::max<std::int64_t>(io, 0), checks) + "\n";
  return p;
}

std::string teacher_prefix(const Task& task) {
  std::string p;
  p += "[TEACHER CONTEXT - not shown to the student]\n";
  p += "You know the hidden function. Its source is:\n```python\n" + task.source;
  if (task.source.empty() || task.source.back() != '\n') p += "\n";
  p += "```\n";
  p += "Play the student's role without revealing this source:\n";
  p += "- Choose invocations that expose behavior the given examples leave open.\n";
  p += "- Before each action, state in a sentence or two what you expect to learn or confirm.\n";
  p += "- Submit an implementation only once the observations leave no doubt about its behavior.\n";
  p += "[END TEACHER CONTEXT]\n\n";
  return p;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Section { None, Invocations, Implementation };

Section header_of(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::string_view(" \t#*_>-").find(line[i]) != std::string_view::npos) ++i;
  line.remove_prefix(i);
  Section s = Section::None;
  std::size_t n = 0;
  auto starts = [&](std::string_view word) {
    return line.size() >= word.size() && iequals(line.substr(0, word.size()), word);
  };
  if (starts("implementation")) {
    s = Section::Implementation;
    n = 14;
  } else if (starts("invocations")) {
    s = Section::Invocations;
    n = 11;
  } else {
    return Section::None;
  }
  for (char c : line.substr(n)) {
    if (std::string_view(" \t*_:").find(c) == std::string_view::npos) return Section::None;
  }
  return s;
}

bool is_fence(std::string_view line) {
  const std::string t = trim(line);
  return t.rfind("```", 0) == 0;
}

// First fenced block in lines [from, to); nullopt if none opens.
std::optional<std::string> first_block(const std::vector<std::string>& lines, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (!is_fence(lines[i])) continue;
    std::string body;
    for (std::size_t j = i + 1; j < to && !is_fence(lines[j]); ++j) body += lines[j] + "\n";
    return body;
  }
  return std::nullopt;
}

bool defines_entry(const std::string& code, std::string_view entry) {
  const std::regex def("^def[ \\t]+" + std::string(entry) + "[ \\t]*\\(");
  for (const auto& line : split_lines(code)) {
    if (std::regex_search(line, def)) return true;
  }
  return false;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<ArgTuple> calls_in(std::string_view text, std::string_view entry, std::vector<std::string>& diags) {
  std::vector<ArgTuple> out;
  std::size_t at = 0;
  while ((at = text.find(entry, at)) != std::string_view::npos) {
    const bool boundary = (at == 0 || !ident_char(text[at - 1])) &&
                          (at + entry.size() >= text.size() || !ident_char(text[at + entry.size()]));
    const bool is_def = at >= 4 && text.substr(at - 4, 4) == "def ";
    if (!boundary || is_def) {
      at += entry.size();
      continue;
    }
    std::size_t end = 0;
    try {
      out.push_back(parse_call(text.substr(at), entry, end));
      at += end;
    } catch (const LiteralError& e) {
      const std::size_t eol = text.find('\n', at);
      diags.push_back("unparsed call: " + std::string(text.substr(at, eol == std::string_view::npos ? eol : eol - at)) +
                      " (" + e.what() + ")");
      at += entry.size();
    }
  }
  return out;
}

}  // namespace

ParsedResponse parse_response(std::string_view text, std::string_view entry) {
  ParsedResponse r;
  const std::vector<std::string> lines = split_lines(text);
  std::optional<std::pair<std::size_t, std::size_t>> impl, inv;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Section s = header_of(lines[i]);
    if (s == Section::None) continue;
    std::size_t end = i + 1;
    while (end < lines.size() && header_of(lines[end]) == Section::None) ++end;
    auto& slot = s == Section::Implementation ? impl : inv;
    if (!slot) slot = std::make_pair(i + 1, end);
  }
  if (impl) {
    const auto code = first_block(lines, impl->first, impl->second);
    if (code && defines_entry(*code, entry)) {
      r.action = SubmitCandidate{*code, std::string(entry)};
      return r;
    }
    r.diagnostics.push_back(code ? "IMPLEMENTATION block does not define '" + std::string(entry) + "'"
                                 : "IMPLEMENTATION section has no code block");
  }
  if (inv) {
    std::string body;
    if (auto code = first_block(lines, inv->first, inv->second)) {
      body = *code;
    } else {
      for (std::size_t i = inv->first; i < inv->second; ++i) body += lines[i] + "\n";
    }
    std::vector<ArgTuple> calls = calls_in(body, entry, r.diagnostics);
    if (!calls.empty()) {
      r.action = QueryBatch{std::move(calls)};
      return r;
    }
    r.diagnostics.push_back("INVOCATIONS section has no calls to '" + std::string(entry) + "'");
  }
  if (!impl && !inv) r.diagnostics.push_back("no INVOCATIONS or IMPLEMENTATION section");
  return r;
}

}  // namespace iosynth
