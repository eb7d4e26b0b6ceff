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

#include "iosynth/oracle.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "iosynth/host.hpp"
#include "iosynth/text.hpp"

namespace iosynth {

namespace {

constexpr const char* kStrategyNames[] = {"seedReplay", "typeAwareRandom", "boundaryProbes",
                                          "seedMutation", "counterexampleReplay"};

constexpr std::size_t kMaxAlphabet = 64;
constexpr std::int64_t kMaxRandomLen = 64;
constexpr std::int64_t kMaxGrownLen = 4096;
constexpr int kMaxDepth = 4;
constexpr double kNumericCap = 1e15;

using Kind = Value::Kind;

Value int_value(std::int64_t i) { return Value::integer(BigInt(i)); }

std::optional<double> numeric(const Value& v) {
  try {
    if (v.is(Kind::Int)) return v.as_int().to_double();
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  if (v.is(Kind::Float) && std::isfinite(v.as_float())) return v.as_float();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Profile inference

struct ShapeBuilder {
  std::map<Kind, int> kinds;
  std::optional<std::int64_t> min_len, max_len;
  std::optional<double> lo, hi;
  std::u32string alphabet;
  std::vector<Value> elems, keys, values;

  void add(const Value& v) {
    ++kinds[v.kind()];
    if (auto d = numeric(v)) {
      lo = lo ? std::min(*lo, *d) : *d;
      hi = hi ? std::max(*hi, *d) : *d;
    }
    auto note_len = [&](std::int64_t n) {
      min_len = min_len ? std::min(*min_len, n) : n;
      max_len = max_len ? std::max(*max_len, n) : n;
    };
    switch (v.kind()) {
      case Kind::Str: {
        const std::u32string cps = utf8_decode(v.as_str());
        note_len(static_cast<std::int64_t>(cps.size()));
        for (char32_t c : cps) {
          if (alphabet.size() >= kMaxAlphabet) break;
          if (alphabet.find(c) == std::u32string::npos) alphabet.push_back(c);
        }
        break;
      }
      case Kind::List:
      case Kind::Tuple:
      case Kind::Set:
        note_len(static_cast<std::int64_t>(v.items().size()));
        elems.insert(elems.end(), v.items().begin(), v.items().end());
        break;
      case Kind::Map:
        note_len(static_cast<std::int64_t>(v.pairs().size()));
        for (const auto& [k, x] : v.pairs()) {
          keys.push_back(k);
          values.push_back(x);
        }
        break;
      default:
        break;
    }
  }

  static std::shared_ptr<ArgShape> nested(const std::vector<Value>& vs, int depth) {
    if (vs.empty() || depth >= kMaxDepth) return nullptr;
    ShapeBuilder b;
    for (const auto& v : vs) b.add(v);
    return std::make_shared<ArgShape>(b.build(vs.front(), depth + 1));
  }

  ArgShape build(const Value& example, int depth) const {
    ArgShape s;
    s.kinds = kinds;
    if (min_len) {
      s.has_lengths = true;
      s.min_len = *min_len;
      s.max_len = *max_len;
    }
    if (lo) {
      s.has_numbers = true;
      const double mid = (*lo + *hi) / 2;
      const double span = std::max(*hi - *lo, 1.0);
      s.num_lo = std::max(-kNumericCap, mid - span * kNumericWidening / 2);
      s.num_hi = std::min(kNumericCap, mid + span * kNumericWidening / 2);
    }
    s.alphabet = alphabet;
    s.example = example;
    s.elem = nested(elems, depth);
    s.key = nested(keys, depth);
    s.value = nested(values, depth);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Sampling

class Sampler {
 public:
  explicit Sampler(std::mt19937_64& rng) : rng_(rng) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
  bool coin() { return uniform(0, 1) == 1; }

  Kind pick_kind(const ArgShape& s) {
    int total = 0;
    for (const auto& [k, n] : s.kinds) total += n;
    if (total == 0) return Kind::Int;
    auto r = uniform(0, total - 1);
    for (const auto& [k, n] : s.kinds) {
      if (r < n) return k;
      r -= n;
    }
    return s.kinds.begin()->first;
  }

  std::int64_t length(const ArgShape& s) {
    const std::int64_t lo = s.has_lengths ? s.min_len : 0;
    const std::int64_t hi = s.has_lengths ? std::min(std::max(s.max_len, lo), kMaxRandomLen) : 5;
    return uniform(std::min(lo, hi), hi);
  }

  Value sample(const ArgShape* s, int depth) {
    static const ArgShape kDefault = [] {
      ArgShape d;
      d.kinds[Kind::Int] = 1;
      return d;
    }();
    if (s == nullptr) s = &kDefault;
    Kind k = pick_kind(*s);
    if (depth >= kMaxDepth && (k == Kind::List || k == Kind::Tuple || k == Kind::Set || k == Kind::Map)) {
      k = Kind::Int;
    }
    const double lo = s->has_numbers ? s->num_lo : -10;
    const double hi = s->has_numbers ? s->num_hi : 10;
    switch (k) {
      case Kind::Null:
        return Value::null();
      case Kind::Bool:
        return Value::boolean(coin());
      case Kind::Int:
        return int_value(uniform(static_cast<std::int64_t>(std::ceil(lo)), static_cast<std::int64_t>(std::floor(hi))));
      case Kind::Float: {
        const double x = std::uniform_real_distribution<double>(lo, hi)(rng_);
        return Value::floating(std::round(x * 4) / 4);
      }
      case Kind::Str: {
        const std::u32string alpha = s->alphabet.empty() ? U"ab" : s->alphabet;
        std::u32string out;
        const auto n = length(*s);
        for (std::int64_t i = 0; i < n; ++i) out.push_back(alpha[index(alpha.size())]);
        return Value::str(utf8_encode(out));
      }
      case Kind::List:
      case Kind::Tuple:
      case Kind::Set: {
        ValueList items;
        const auto n = length(*s);
        for (std::int64_t i = 0; i < n; ++i) {
          Value e = sample(s->elem.get(), depth + 1);
          if (k == Kind::Set && !host::hashable(e)) continue;
          items.push_back(std::move(e));
        }
        if (k == Kind::List) return Value::list(std::move(items));
        if (k == Kind::Tuple) return Value::tuple(std::move(items));
        return Value::set(std::move(items));
      }
      case Kind::Map: {
        host::MapBuilder m;
        const auto n = length(*s);
        for (std::int64_t i = 0; i < n; ++i) {
          Value key = sample(s->key.get(), depth + 1);
          if (!host::hashable(key)) continue;
          m.set(key, sample(s->value.get(), depth + 1));
        }
        return m.build();
      }
      case Kind::Opaque:
        return Value::null();
    }
    return Value::null();
  }

  ArgTuple sample(const InputProfile& p) {
    ArgTuple a;
    for (const auto& s : p.args) a.args.push_back(sample(&s, 0));
    return a;
  }

 private:
  std::mt19937_64& rng_;
};

// ---------------------------------------------------------------------------
// Boundary probes

Value rebuild(Kind k, ValueList items) {
  switch (k) {
    case Kind::Tuple:
      return Value::tuple(std::move(items));
    case Kind::Set: {
      ValueList keep;
      for (auto& v : items) {
        if (host::hashable(v)) keep.push_back(std::move(v));
      }
      return Value::set(std::move(keep));
    }
    default:
      return Value::list(std::move(items));
  }
}

std::int64_t large_of(const ArgShape& s) {
  const double bound = s.has_numbers ? std::max(std::fabs(s.num_lo), std::fabs(s.num_hi)) : 10;
  return static_cast<std::int64_t>(std::min(bound, kNumericCap)) * 10 + 7;
}

std::vector<Value> probes_for(const ArgShape& s) {
  std::vector<Value> out;
  std::vector<std::pair<Kind, int>> kinds(s.kinds.begin(), s.kinds.end());
  std::stable_sort(kinds.begin(), kinds.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  const std::int64_t large = large_of(s);
  for (const auto& [k, count] : kinds) {
    switch (k) {
      case Kind::Int:
        for (std::int64_t i : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1},
                               static_cast<std::int64_t>(std::ceil(s.num_lo)),
                               static_cast<std::int64_t>(std::floor(s.num_hi)), large, -large}) {
          out.push_back(int_value(i));
        }
        break;
      case Kind::Float:
        for (double d : {0.0, 0.5, -1.5, std::round(s.num_lo * 4) / 4, std::round(s.num_hi * 4) / 4,
                         static_cast<double>(large) + 0.5, -static_cast<double>(large) - 0.5}) {
          out.push_back(Value::floating(d));
        }
        break;
      case Kind::Bool:
        out.push_back(Value::boolean(true));
        out.push_back(Value::boolean(false));
        break;
      case Kind::Null:
        out.push_back(Value::null());
        break;
      case Kind::Str: {
        const std::u32string alpha = s.alphabet.empty() ? U"a" : s.alphabet;
        const std::string c = utf8_encode(alpha.substr(0, 1));
        out.push_back(Value::str(""));
        out.push_back(Value::str(c));
        out.push_back(Value::str(c + c + c));
        out.push_back(Value::str("é世\U0001F600"));
        out.push_back(Value::str("  "));
        out.push_back(Value::str("AbC"));
        if (s.example && s.example->is(Kind::Str)) {
          std::string grown;
          for (int i = 0; i < 10; ++i) grown += s.example->as_str();
          out.push_back(Value::str(grown));
        }
        break;
      }
      case Kind::List:
      case Kind::Tuple:
      case Kind::Set: {
        const ArgShape* e = s.elem.get();
        const Value x = e && e->example ? *e->example : int_value(1);
        out.push_back(rebuild(k, {}));
        out.push_back(rebuild(k, {x}));
        out.push_back(rebuild(k, {x, x, x}));
        if (k != Kind::Set) {
          const Value pair = Value::list({int_value(5), int_value(6)});
          out.push_back(rebuild(k, {int_value(1), int_value(2), int_value(3), int_value(4), pair, pair}));
        }
        out.push_back(rebuild(k, {int_value(1), Value::str("a"), Value::null(), Value::floating(1.5),
                                  Value::boolean(true)}));
        out.push_back(rebuild(k, {Value::list({Value::list({Value::list({x})})})}));
        if (e && (e->kinds.count(Kind::Int) || e->kinds.count(Kind::Float))) {
          const std::int64_t el = large_of(*e);
          out.push_back(rebuild(k, {int_value(0), int_value(0)}));
          out.push_back(rebuild(k, {int_value(-1), int_value(-2)}));
          out.push_back(rebuild(k, {int_value(el), int_value(-el)}));
        }
        if (e && e->kinds.count(Kind::Str)) {
          out.push_back(rebuild(k, {Value::str("")}));
          out.push_back(rebuild(k, {Value::str(""), Value::str("")}));
        }
        break;
      }
      case Kind::Map: {
        out.push_back(Value::map({}));
        const Value key = s.key && s.key->example ? *s.key->example : Value::str("a");
        const Value val = s.value && s.value->example ? *s.value->example : int_value(0);
        out.push_back(Value::map({{key, val}}));
        break;
      }
      case Kind::Opaque:
        break;
    }
  }
  return out;
}

std::vector<ArgTuple> boundary_probes(const InputProfile& p, const std::vector<ArgTuple>& corpus) {
  ArgTuple base;
  if (!corpus.empty() && corpus.front().arity() == p.arity) {
    base = corpus.front();
  } else {
    for (const auto& s : p.args) base.args.push_back(s.example ? *s.example : Value::null());
  }
  std::vector<ArgTuple> out;
  for (std::size_t i = 0; i < p.arity; ++i) {
    for (auto& v : probes_for(p.args[i])) {
      ArgTuple a = base;
      a.args[i] = std::move(v);
      out.push_back(std::move(a));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seed mutation

std::optional<Value> flip_number(const Value& v, bool swap) {
  if (v.is(Kind::Int)) {
    if (!swap) return Value::integer(-v.as_int());
    if (auto d = numeric(v)) return Value::floating(*d);
    return std::nullopt;
  }
  if (v.is(Kind::Float)) {
    const double d = v.as_float();
    if (!swap) return Value::floating(-d);
    if (std::isfinite(d) && std::fabs(d) < 9e15) return Value::integer(BigInt::from_double(std::trunc(d)));
  }
  return std::nullopt;
}

std::optional<Value> mutate_value(const Value& v, int op, Sampler& s) {
  const bool seq = v.is(Kind::List) || v.is(Kind::Tuple) || v.is(Kind::Set);
  switch (op) {
    case 0:  // duplicate element
    case 1:  // delete element
    case 2: {  // permute
      if (v.is(Kind::Str)) {
        std::u32string cps = utf8_decode(v.as_str());
        if (cps.empty()) return std::nullopt;
        const std::size_t i = s.index(cps.size());
        if (op == 0) cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(i), cps[i]);
        if (op == 1) cps.erase(cps.begin() + static_cast<std::ptrdiff_t>(i));
        if (op == 2) {
          if (cps.size() < 2) return std::nullopt;
          for (std::size_t j = cps.size() - 1; j > 0; --j) std::swap(cps[j], cps[s.index(j + 1)]);
        }
        return Value::str(utf8_encode(cps));
      }
      if (!seq || v.items().empty()) return std::nullopt;
      ValueList items = v.items();
      const std::size_t i = s.index(items.size());
      if (op == 0) items.insert(items.begin() + static_cast<std::ptrdiff_t>(i) + 1, items[i]);
      if (op == 1) items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
      if (op == 2) {
        if (items.size() < 2) return std::nullopt;
        for (std::size_t j = items.size() - 1; j > 0; --j) std::swap(items[j], items[s.index(j + 1)]);
      }
      return rebuild(v.kind(), std::move(items));
    }
    case 3:  // int <-> float
    case 4: {  // sign flip
      const bool swap = op == 3;
      if (auto r = flip_number(v, swap)) return r;
      if (!seq || v.items().empty()) return std::nullopt;
      ValueList items = v.items();
      std::vector<std::size_t> nums;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].is(Kind::Int) || items[i].is(Kind::Float)) nums.push_back(i);
      }
      if (nums.empty()) return std::nullopt;
      const std::size_t i = nums[s.index(nums.size())];
      auto r = flip_number(items[i], swap);
      if (!r) return std::nullopt;
      items[i] = *r;
      return rebuild(v.kind(), std::move(items));
    }
    case 5:  // wrap in list
      if (seq && !v.items().empty() && s.coin()) {
        ValueList items = v.items();
        const std::size_t i = s.index(items.size());
        items[i] = Value::list({items[i]});
        return rebuild(v.kind(), std::move(items));
      }
      return Value::list({v});
    case 6: {  // grow length x10
      if (v.is(Kind::Str)) {
        if (v.as_str().empty() || v.as_str().size() * 10 > static_cast<std::size_t>(kMaxGrownLen)) return std::nullopt;
        std::string out;
        for (int i = 0; i < 10; ++i) out += v.as_str();
        return Value::str(out);
      }
      if (!seq || v.items().empty() || v.items().size() * 10 > static_cast<std::size_t>(kMaxGrownLen)) {
        return std::nullopt;
      }
      ValueList items;
      for (int i = 0; i < 10; ++i) items.insert(items.end(), v.items().begin(), v.items().end());
      return rebuild(v.kind(), std::move(items));
    }
    default:
      return std::nullopt;
  }
}

std::optional<ArgTuple> mutate(const ArgTuple& seed, Sampler& s) {
  if (seed.arity() == 0) return std::nullopt;
  const std::size_t pos = s.index(seed.arity());
  const int first = static_cast<int>(s.uniform(0, 6));
  for (int k = 0; k < 7; ++k) {
    if (auto v = mutate_value(seed.args[pos], (first + k) % 7, s)) {
      ArgTuple out = seed;
      out.args[pos] = std::move(*v);
      return out;
    }
  }
  return std::nullopt;
}

std::mt19937_64 strategy_rng(std::uint64_t seed, Strategy strategy) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(strategy) + 1U};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Tolerant comparison

bool close(double a, double b, const FloatMode& m) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (a == b) return true;
  return std::fabs(a - b) <= std::max(m.abs_tol, m.rel_tol * std::max(std::fabs(a), std::fabs(b)));
}

bool tolerant_eq(const Value& a, const Value& b, const FloatMode& m) {
  if ((a.is(Kind::Float) || b.is(Kind::Float)) && host::is_number(a) && host::is_number(b)) {
    const auto x = numeric(a.is(Kind::Bool) ? int_value(a.as_bool()) : a);
    const auto y = numeric(b.is(Kind::Bool) ? int_value(b.as_bool()) : b);
    if (x && y) return close(*x, *y, m);
    return host::eq_reflexive(a, b);
  }
  if (a.kind() == b.kind() && (a.is(Kind::List) || a.is(Kind::Tuple))) {
    if (a.items().size() != b.items().size()) return false;
    for (std::size_t i = 0; i < a.items().size(); ++i) {
      if (!tolerant_eq(a.items()[i], b.items()[i], m)) return false;
    }
    return true;
  }
  if (a.is(Kind::Map) && b.is(Kind::Map)) {
    if (a.pairs().size() != b.pairs().size()) return false;
    for (const auto& [k, v] : a.pairs()) {
      const auto it = std::find_if(b.pairs().begin(), b.pairs().end(),
                                   [&](const auto& p) { return host::eq_reflexive(p.first, k); });
      if (it == b.pairs().end() || !tolerant_eq(v, it->second, m)) return false;
    }
    return true;
  }
  return host::eq_reflexive(a, b);
}

// ---------------------------------------------------------------------------
// Check driver

struct Runner {
  const FunctionRef& truth;
  const FunctionRef& candidate;
  const OracleConfig& config;
  Executor& exec;
  std::unordered_set<std::string> seen;
  int attempts = 0;
  OracleVerdict verdict;

  bool exhausted() const { return attempts >= config.max_tests; }

  // Returns true once the verdict is decided (Fail or load failure).
  bool run(const ArgTuple& input, Strategy strategy) {
    if (exhausted() || !seen.insert(encode(input.as_tuple())).second) return false;
    ++attempts;
    const CallResult t = exec.call(truth.source, truth.entry, input, config.limits);
    if (t.status == ExecStatus::ProtocolError) throw TruthLoadFailure(t.diagnostic);
    if (t.status != ExecStatus::Ok) {
      ++verdict.truth_timeouts;
      spdlog::debug("oracle: truth gave {} on {}, input skipped", status_name(t.status), encode(input.as_tuple()));
      return false;
    }
    const CallResult c = exec.call(candidate.source, candidate.entry, input, config.limits);
    if (c.status == ExecStatus::ProtocolError) {
      verdict.kind = OracleVerdict::Kind::CandidateLoadFailure;
      verdict.diagnostic = c.diagnostic;
      return true;
    }
    ++verdict.tests_run;
    Outcome got = c.outcome;
    if (c.status == ExecStatus::Timeout) got = Outcome::err("TimeoutError", "candidate exceeded the time limit");
    if (c.status == ExecStatus::Error) got = Outcome::err("OutputLimitExceeded", c.diagnostic);
    if (oracle_equal(exec, config.float_mode, t.outcome, got)) return false;
    verdict.kind = OracleVerdict::Kind::Fail;
    verdict.counterexample = Counterexample{input, std::move(got), t.outcome};
    verdict.attribution = strategy;
    return true;
  }
};

OracleVerdict run_strategies(const FunctionRef& truth, const FunctionRef& candidate, const CheckInputs& inputs,
                             const OracleConfig& config, Executor& exec, const std::vector<Strategy>& order) {
  Runner r{truth, candidate, config, exec, {}, 0, {}};
  std::vector<ArgTuple> corpus = inputs.corpus;
  corpus.insert(corpus.end(), inputs.prior_counterexamples.begin(), inputs.prior_counterexamples.end());
  std::optional<InputProfile> profile;
  for (std::size_t si = 0; si < order.size(); ++si) {
    const Strategy st = order[si];
    if (r.exhausted()) break;
    if (st == Strategy::SeedReplay) {
      for (const auto& x : corpus) {
        if (r.run(x, st)) return r.verdict;
      }
      continue;
    }
    if (!profile) {
      if (corpus.empty()) break;
      profile = infer_profile(corpus);
    }
    const std::size_t left = order.size() - si;
    const auto remaining = static_cast<std::size_t>(config.max_tests - r.attempts);
    std::size_t quota = (remaining + left - 1) / left;
    std::vector<ArgTuple> batch;
    if (st == Strategy::CounterexampleReplay) {
      batch = inputs.prior_counterexamples;
      if (batch.size() > quota) batch.resize(quota);
    } else if (st == Strategy::BoundaryProbes) {
      batch = boundary_probes(*profile, corpus);
      if (batch.size() > quota) batch.resize(quota);
    } else {
      std::mt19937_64 rng = strategy_rng(config.seed, st);
      batch = generate(*profile, st, corpus, inputs.prior_counterexamples, rng, quota);
    }
    for (const auto& x : batch) {
      if (r.run(x, st)) return r.verdict;
    }
  }
  return r.verdict;
}

}  // namespace

const char* strategy_name(Strategy s) { return kStrategyNames[static_cast<int>(s)]; }

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (iequals(name, kStrategyNames[i])) return static_cast<Strategy>(i);
  }
  return std::nullopt;
}

void OracleConfig::validate(std::size_t e0_size) const {
  if (max_tests < 1 || static_cast<std::size_t>(max_tests) < e0_size) {
    throw std::invalid_argument("maxTests must be at least the number of initial examples");
  }
  if (strategies.empty() || strategies.front() != Strategy::SeedReplay) {
    throw std::invalid_argument("strategies must start with seedReplay");
  }
  limits.validate();
}

InputProfile infer_profile(const std::vector<ArgTuple>& seeds) {
  if (seeds.empty()) throw OracleError("cannot infer a profile from zero seeds");
  InputProfile p;
  p.arity = seeds.front().arity();
  for (const auto& s : seeds) {
    if (s.arity() != p.arity) {
      throw OracleError("inconsistent arity: " + std::to_string(p.arity) + " vs " + std::to_string(s.arity()));
    }
  }
  for (std::size_t i = 0; i < p.arity; ++i) {
    ShapeBuilder b;
    for (const auto& s : seeds) b.add(s.args[i]);
    p.args.push_back(b.build(seeds.front().args[i], 0));
  }
  return p;
}

std::vector<ArgTuple> generate(const InputProfile& profile, Strategy strategy, const std::vector<ArgTuple>& corpus,
                               const std::vector<ArgTuple>& prior, std::mt19937_64& rng, std::size_t n) {
  if (strategy == Strategy::SeedReplay) return corpus;
  Sampler s(rng);
  std::vector<ArgTuple> out;
  if (strategy == Strategy::CounterexampleReplay) {
    for (const auto& x : prior) {
      if (out.size() < n) out.push_back(x);
    }
  } else if (strategy == Strategy::BoundaryProbes) {
    for (auto& x : boundary_probes(profile, corpus)) {
      if (out.size() < n) out.push_back(std::move(x));
    }
  } else if (strategy == Strategy::SeedMutation && !corpus.empty()) {
    while (out.size() < n) {
      auto m = mutate(corpus[s.index(corpus.size())], s);
      out.push_back(m ? std::move(*m) : s.sample(profile));
    }
  }
  while (out.size() < n) out.push_back(s.sample(profile));
  return out;
}

bool oracle_equal(Executor& exec, const FloatMode& mode, const Outcome& a, const Outcome& b) {
  if (!mode.tolerance || a.is_err() || b.is_err()) return exec.compare(a, b);
  return tolerant_eq(a.value(), b.value(), mode);
}

OracleVerdict check(const FunctionRef& truth, const FunctionRef& candidate, const CheckInputs& inputs,
                    const OracleConfig& config, Executor& exec) {
  return run_strategies(truth, candidate, inputs, config, exec, config.strategies);
}

bool reverify(const FunctionRef& truth, const FunctionRef& candidate, const Counterexample& cex,
              const OracleConfig& config, Executor& exec) {
  const CallResult t = exec.call(truth.source, truth.entry, cex.input, config.limits);
  const CallResult c = exec.call(candidate.source, candidate.entry, cex.input, config.limits);
  if (!t.ok() || c.status == ExecStatus::ProtocolError) return false;
  Outcome got = c.outcome;
  if (c.status == ExecStatus::Timeout) got = Outcome::err("TimeoutError");
  if (c.status == ExecStatus::Error) got = Outcome::err("OutputLimitExceeded");
  return compare_outcomes(t.outcome, cex.truth) && compare_outcomes(got, cex.candidate) &&
         !oracle_equal(exec, config.float_mode, cex.truth, cex.candidate);
}

AttributionReport attribution_report(const std::vector<OracleVerdict>& verdicts) {
  AttributionReport r;
  for (const auto& v : verdicts) {
    ++r.checks;
    if (!v.failed()) continue;
    ++r.fails;
    ++r.first_detections[v.attribution];
  }
  return r;
}

std::set<Strategy> detecting_strategies(const FunctionRef& truth, const FunctionRef& candidate,
                                        const CheckInputs& inputs, const OracleConfig& config, Executor& exec) {
  std::set<Strategy> found;
  for (Strategy st : config.strategies) {
    const OracleVerdict v = run_strategies(truth, candidate, inputs, config, exec, {st});
    if (v.failed()) found.insert(st);
  }
  return found;
}

void add_exhaustive(AttributionReport& report, const std::set<Strategy>& detected) {
  if (detected.size() == 1) ++report.unique_detections[*detected.begin()];
}

}  // namespace iosynth
