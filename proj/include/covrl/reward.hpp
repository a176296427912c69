// Copyright 2026 The covrl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Execution outcomes and the rewards derived from them.
//
// Fixed penalties handle broken test cases (-1.0 syntax, -0.5 semantic).
// Passing cases are scored from their coverage, either by the
// coverage-weighted scheme (CWR: sigmoid of the log of the idf-weighted
// coverage sum, floored at +0.5) or by the coverage-rate baseline (CRR:
// covered edges over all edges seen so far).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covrl/coverage.hpp"

namespace covrl {

enum class OutcomeClass { SyntaxError, SemanticError, Pass, Crash, Timeout };
enum class SemanticKind { Type, Reference, Range, URI, Internal };

class Outcome {
 public:
  static Outcome syntax_error() { return Outcome(OutcomeClass::SyntaxError); }
  static Outcome semantic_error(SemanticKind kind);
  static Outcome pass() { return Outcome(OutcomeClass::Pass); }
  static Outcome crash(int signal);
  static Outcome timeout() { return Outcome(OutcomeClass::Timeout); }

  OutcomeClass cls() const { return cls_; }
  std::optional<SemanticKind> semantic_kind() const { return kind_; }
  std::optional<int> signal() const { return signal_; }

  bool is_error() const {
    return cls_ == OutcomeClass::SyntaxError || cls_ == OutcomeClass::SemanticError;
  }

  // "Pass", "SyntaxError", "SemanticError:Reference", "Crash:11", "Timeout"
  std::string to_string() const;
  static Outcome parse(std::string_view text);

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  explicit Outcome(OutcomeClass c) : cls_(c) {}
  OutcomeClass cls_;
  std::optional<SemanticKind> kind_;
  std::optional<int> signal_;
};

std::string_view to_string(SemanticKind kind);

enum class RewardSource { SyntaxPenalty, SemanticPenalty, Floor, Weighted, CrrRatio, CrBinary };
std::string_view to_string(RewardSource source);

inline constexpr double kSyntaxPenalty = -1.0;
inline constexpr double kSemanticPenalty = -0.5;
inline constexpr double kFloorReward = 0.5;

struct Reward {
  double value = 0.0;
  RewardSource source = RewardSource::Floor;
  // Set when the value is a fallback for an undefined quantity.
  std::string diagnostic;
};

// Intermediate quantities of the weighted scheme, exposed for inspection.
struct CwrBreakdown {
  double weighted_sum = 0.0;  // S = sum of idf over covered edges
  double log_sum = 0.0;       // ln S, or -infinity when S <= 0
  Reward reward;
};

enum class RewardScheme { CWR, CRR, CRBinary };

double logistic(double x);

// Weighted score of a passing case against the previous-cycle weights.
CwrBreakdown cwr_breakdown(const CoverageMap& cov, const WeightMap& weights);
Reward cwr_reward(const CoverageMap& cov, const WeightMap& weights);

// |unique(cov)| / N. `virgin` must already contain cov. N == 0 yields 0.0
// with a diagnostic.
Reward crr_reward(const CoverageMap& cov, const VirginMap& virgin);

// Penalties for error outcomes, CWR for everything else. Crashes and
// timeouts score like passes.
Reward dispatch_reward(const Outcome& outcome, const CoverageMap& cov,
                       const WeightMap& weights, const VirginMap& virgin);

// Scheme-aware scoring used by the fuzz loop. `virgin` is the map after the
// case was accumulated; `found_new` says whether accumulation set new bits.
Reward score_case(RewardScheme scheme, const Outcome& outcome, const CoverageMap& cov,
                  const WeightMap& weights, const VirginMap& virgin, bool found_new);

struct ProcessExit {
  enum class Kind { Exited, Signaled };
  Kind kind = Kind::Exited;
  int code = 0;    // exit status when Exited
  int signal = 0;  // terminating signal when Signaled

  static ProcessExit exited(int code) { return {Kind::Exited, code, 0}; }
  static ProcessExit signaled(int sig) { return {Kind::Signaled, 0, sig}; }
};

struct ErrorPattern {
  std::string needle;
  OutcomeClass cls;
  std::optional<SemanticKind> kind;
};

// SyntaxError, TypeError, ReferenceError, RangeError, URIError, InternalError.
std::span<const ErrorPattern> default_error_patterns();

// Signals win; then the first configured pattern found in the text; then the
// exit code (0 -> Pass, otherwise SemanticError(Internal)).
Outcome classify_stderr(std::string_view stderr_text, const ProcessExit& exit,
                        std::span<const ErrorPattern> patterns = default_error_patterns());

// One line of the finetune dataset log.
struct RewardRecord {
  uint64_t case_id = 0;
  uint64_t seed_id = 0;
  std::vector<std::string> masked_input;
  std::vector<std::vector<std::string>> fill;
  Outcome outcome = Outcome::pass();
  double reward = 0.0;
  uint64_t cycle = 0;

  friend bool operator==(const RewardRecord&, const RewardRecord&) = default;
};

// Single-line JSON text without the trailing newline.
std::string to_json_line(const RewardRecord& rec);
RewardRecord parse_json_line(std::string_view line);

}  // namespace covrl
