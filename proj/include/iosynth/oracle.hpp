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

// Differential-testing oracle. A check runs an ordered list of input
// strategies against a truth function and a candidate, stopping at the first
// input on which their outcomes differ.

#ifndef IOSYNTH_ORACLE_HPP
#define IOSYNTH_ORACLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iosynth/executor.hpp"
#include "iosynth/value.hpp"

namespace iosynth {

enum class Strategy { SeedReplay, TypeAwareRandom, BoundaryProbes, SeedMutation, CounterexampleReplay };

inline constexpr std::array<Strategy, 5> kAllStrategies = {
    Strategy::SeedReplay, Strategy::CounterexampleReplay, Strategy::BoundaryProbes,
    Strategy::SeedMutation, Strategy::TypeAwareRandom};

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct FloatMode {
  bool tolerance = false;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
};

struct OracleConfig {
  int max_tests = 200;
  ExecLimits limits;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  std::uint64_t seed = 0;
  FloatMode float_mode;

  /// Throws std::invalid_argument on max_tests < e0_size, an empty strategy
  /// list, or a list not starting with SeedReplay.
  void validate(std::size_t e0_size) const;
};

/// Shape of one argument position (or of container elements), inferred
/// from seed values.
struct ArgShape {
  std::map<Value::Kind, int> kinds;  // histogram over observed values
  std::int64_t min_len = 0;          // strings and containers
  std::int64_t max_len = 0;
  double num_lo = 0;                 // after widening
  double num_hi = 0;
  bool has_numbers = false;
  bool has_lengths = false;
  std::u32string alphabet;           // sample of observed characters
  std::optional<Value> example;      // first observed value
  std::shared_ptr<ArgShape> elem;    // List/Tuple/Set elements
  std::shared_ptr<ArgShape> key;     // Map keys
  std::shared_ptr<ArgShape> value;   // Map values

  bool only(Value::Kind k) const { return kinds.size() == 1 && kinds.count(k); }
};

struct InputProfile {
  std::size_t arity = 0;
  std::vector<ArgShape> args;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws OracleError on empty seeds or inconsistent arity.
InputProfile infer_profile(const std::vector<ArgTuple>& seeds);

/// Numeric ranges are widened by this factor around their midpoint.
inline constexpr double kNumericWidening = 4.0;

/// Inputs for one strategy. SeedReplay returns the corpus verbatim;
/// CounterexampleReplay returns `prior` first. Families that do not apply to
/// the profile fall back to TypeAwareRandom, so exactly n inputs are
/// returned for every other strategy.
std::vector<ArgTuple> generate(const InputProfile& profile, Strategy strategy,
                               const std::vector<ArgTuple>& corpus,
                               const std::vector<ArgTuple>& prior, std::mt19937_64& rng,
                               std::size_t n);

/// A function as the executor sees it.
struct FunctionRef {
  std::string source;
  std::string entry;
};

struct Counterexample {
  ArgTuple input;
  Outcome candidate;
  Outcome truth;
};

struct OracleVerdict {
  enum class Kind { Pass, Fail, CandidateLoadFailure };

  Kind kind = Kind::Pass;
  std::optional<Counterexample> counterexample;
  Strategy attribution = Strategy::SeedReplay;
  int tests_run = 0;
  int truth_timeouts = 0;  // inputs skipped because the truth timed out
  std::string diagnostic;  // candidate load failure detail

  bool passed() const { return kind == Kind::Pass; }
  bool failed() const { return kind == Kind::Fail; }
};

/// The truth function itself does not load; a task defect.
class TruthLoadFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs for a check: the seed corpus (initial examples, observed inputs)
/// and counterexamples returned earlier in the session.
struct CheckInputs {
  std::vector<ArgTuple> corpus;
  std::vector<ArgTuple> prior_counterexamples;
};

/// Outcome equality as the oracle applies it: exact host comparison via the
/// executor, or per-float tolerance when configured.
bool oracle_equal(Executor& exec, const FloatMode& mode, const Outcome& a, const Outcome& b);

OracleVerdict check(const FunctionRef& truth, const FunctionRef& candidate,
                    const CheckInputs& inputs, const OracleConfig& config, Executor& exec);

/// Re-executes both functions on the counterexample input and confirms the
/// stored outcomes reproduce and still differ.
bool reverify(const FunctionRef& truth, const FunctionRef& candidate, const Counterexample& cex,
              const OracleConfig& config, Executor& exec);

struct AttributionReport {
  std::map<Strategy, int> first_detections;
  std::map<Strategy, int> unique_detections;  // exhaustive mode only
  int checks = 0;
  int fails = 0;
};

AttributionReport attribution_report(const std::vector<OracleVerdict>& verdicts);

/// Exhaustive mode: runs every configured strategy alone with the full test
/// budget and records which ones detect a difference.
std::set<Strategy> detecting_strategies(const FunctionRef& truth, const FunctionRef& candidate,
                                        const CheckInputs& inputs, const OracleConfig& config,
                                        Executor& exec);

/// Folds exhaustive detections into a report's unique_detections.
void add_exhaustive(AttributionReport& report, const std::set<Strategy>& detected);

}  // namespace iosynth

#endif  // IOSYNTH_ORACLE_HPP
