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

#include "iosynth/reference_executor.hpp"

#include <chrono>
#include <sstream>

#include "iosynth/literal.hpp"
#include "iosynth/pysource.hpp"

namespace iosynth {

struct ReferenceExecutor::Resolved {
  const BuiltinFunction* fn = nullptr;  // native target
  bool is_table = false;
  std::vector<std::pair<Value, Outcome>> table;  // key is the args tuple
  Outcome fallback;
  std::string load_error;  // non-empty: the source does not load
};

namespace {

using Resolved = ReferenceExecutor::Resolved;

const std::unordered_map<std::string, const BuiltinFunction*>& twin_index() {
  static const auto index = [] {
    std::unordered_map<std::string, const BuiltinFunction*> m;
    for (const auto& f : builtin_registry()) m.emplace(py::fingerprint(f.twin, f.entry), &f);
    return m;
  }();
  return index;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Outcome stored_outcome(const Value& ok, const Value& out, const char* what) {
  if (!ok.is(Value::Kind::Bool)) throw LiteralError(std::string(what) + ": flag must be a bool", 0);
  if (ok.as_bool()) return Outcome::ok(out);
  if (!out.is(Value::Kind::Str) || out.as_str().empty()) {
    throw LiteralError(std::string(what) + ": error kind must be a non-empty str", 0);
  }
  return Outcome::err(out.as_str(), "memorized");
}

void load_table(const std::string& source, Resolved& r) {
  bool have_table = false;
  bool have_fallback = false;
  std::istringstream in(source);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.rfind("table = ", 0) == 0) {
      const Value rows = parse_literal(std::string_view(t).substr(8));
      if (!rows.is(Value::Kind::List)) throw LiteralError("table must be a list", 0);
      for (const auto& row : rows.items()) {
        if (!row.is(Value::Kind::Tuple) || row.items().size() != 3 ||
            !row.items()[0].is(Value::Kind::Tuple)) {
          throw LiteralError("table rows must be (args, ok, out)", 0);
        }
        r.table.emplace_back(row.items()[0], stored_outcome(row.items()[1], row.items()[2], "table"));
      }
      have_table = true;
    } else if (t.rfind("fallback = ", 0) == 0) {
      const Value fb = parse_literal(std::string_view(t).substr(11));
      if (!fb.is(Value::Kind::Tuple) || fb.items().size() != 2) {
        throw LiteralError("fallback must be (ok, out)", 0);
      }
      r.fallback = stored_outcome(fb.items()[0], fb.items()[1], "fallback");
      have_fallback = true;
    }
  }
  if (!have_table || !have_fallback) throw LiteralError("lookup table or fallback missing", 0);
}

std::string arity_message(const std::string& entry, std::size_t want, std::size_t got) {
  return entry + "() takes " + std::to_string(want) + " positional argument" + (want == 1 ? "" : "s") +
         " but " + std::to_string(got) + (got == 1 ? " was" : " were") + " given";
}

}  // namespace

std::string lookup_table_source(const std::string& entry,
                                const std::vector<std::pair<ArgTuple, Outcome>>& table,
                                const Outcome& fallback) {
  auto row = [](const Outcome& o) {
    return o.is_ok() ? "True, " + render_literal(o.value()) : "False, " + render_literal(Value::str(o.error_kind()));
  };
  std::string rows;
  for (const auto& [args, out] : table) {
    if (!rows.empty()) rows += ", ";
    rows += "(" + render_literal(args.as_tuple()) + ", " + row(out) + ")";
  }
  std::string s;
  s += kLookupTableMarker;
  s += "\ndef " + entry + "(*args):\n";
  s += "    table = [" + rows + "]\n";
  s += "    fallback = (" + row(fallback) + ")\n";
  s += "    for key, ok, out in table:\n";
  s += "        if args == key:\n";
  s += "            break\n";
  s += "    else:\n";
  s += "        ok, out = fallback\n";
  s += "    if not ok:\n";
  s += "        raise type(out, (Exception,), {})('memorized')\n";
  s += "    return out\n";
  return s;
}

ReferenceExecutor::ReferenceExecutor(ReferenceOptions options) : options_(options) {}

std::shared_ptr<const Resolved> ReferenceExecutor::resolve(const std::string& source,
                                                           const std::string& entry) {
  const bool is_uri = source.rfind(kBuiltinScheme, 0) == 0;
  const std::string key = is_uri ? source : source + '\0' + entry;
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  auto r = std::make_shared<Resolved>();
  if (is_uri) {
    const std::string name = source.substr(kBuiltinScheme.size());
    r->fn = find_builtin(name);
    if (r->fn == nullptr || (r->fn->diagnostic && !options_.diagnostics)) {
      r->fn = nullptr;
      r->load_error = "unknown builtin '" + name + "'";
    }
  } else {
    try {
      const auto tokens = py::tokenize(source);
      if (!py::defines_function(tokens, entry)) {
        r->load_error = "NameError: source does not define '" + entry + "'";
      } else if (source.rfind(kLookupTableMarker, 0) == 0) {
        r->is_table = true;
        load_table(source, *r);
      } else {
        const auto& index = twin_index();
        const auto it = index.find(py::fingerprint(source, entry));
        if (it != index.end() && (!it->second->diagnostic || options_.diagnostics)) {
          r->fn = it->second;
        } else {
          r->load_error = "source is not served by the reference executor";
        }
      }
    } catch (const py::SourceError& e) {
      r->load_error = std::string("SyntaxError: ") + e.what();
    } catch (const LiteralError& e) {
      r->load_error = std::string("lookup table: ") + e.what();
    }
  }
  cache_.emplace(key, r);
  return r;
}

CallResult ReferenceExecutor::call(const std::string& source, const std::string& entry,
                                   const ArgTuple& args, const ExecLimits& limits) {
  ++calls_;
  const auto r = resolve(source, entry);
  if (!r->load_error.empty()) return CallResult::load_failure(r->load_error);

  Outcome out;
  if (r->is_table) {
    const Value key = args.as_tuple();
    out = r->fallback;
    for (const auto& [k, o] : r->table) {
      if (host::eq(k, key)) {
        out = o;
        break;
      }
    }
  } else if (args.arity() != r->fn->params.size()) {
    out = Outcome::err("TypeError", arity_message(entry, r->fn->params.size(), args.arity()));
  } else {
    host::CallContext ctx{std::chrono::milliseconds(limits.timeout_ms)};
    ctx.set_max_depth(static_cast<int>(limits.max_recursion_hint));
    try {
      out = Outcome::ok(r->fn->fn(ctx, args.args));
    } catch (const host::HostError& e) {
      out = Outcome::err(e.kind(), e.what());
    } catch (const host::DeadlineExceeded&) {
      return CallResult::timeout();
    }
    if (ctx.expired()) return CallResult::timeout();
  }
  if (out.is_ok() && static_cast<std::int64_t>(encode(out.value()).size()) > limits.max_output_bytes) {
    return {ExecStatus::Error, Outcome(), "output exceeds maxOutputBytes"};
  }
  return CallResult::of(std::move(out));
}

bool ReferenceExecutor::compare(const Outcome& a, const Outcome& b) { return compare_outcomes(a, b); }

TransformResult ReferenceExecutor::transform(const std::string& source, const std::string& kind,
                                             const std::string& entry) {
  if (!options_.lexical_transform) return {ExecStatus::Error, {}, "transform unsupported"};
  if (kind != "anonymize") return {ExecStatus::Error, {}, "unknown transform kind '" + kind + "'"};
  if (source.rfind(kBuiltinScheme, 0) == 0) {
    return {ExecStatus::Error, {}, "builtin URIs have no source to transform"};
  }
  try {
    if (!py::defines_function(py::tokenize(source), entry)) {
      return {ExecStatus::ProtocolError, {}, "source does not define '" + entry + "'"};
    }
    return {ExecStatus::Ok, py::rename_identifier(source, entry, "solution"), {}};
  } catch (const py::SourceError& e) {
    return {ExecStatus::ProtocolError, {}, std::string("SyntaxError: ") + e.what()};
  }
}

HealthInfo ReferenceExecutor::health() {
  HealthInfo h{kProtocolVersion, {"call", "compare", "health"}};
  if (options_.lexical_transform) h.ops.insert(h.ops.begin() + 2, "transform");
  return h;
}

}  // namespace iosynth
