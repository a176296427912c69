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

#include "covrl/reward.hpp"

#include <cmath>
#include <limits>
#include "json.hpp"

#include "covrl/error.hpp"
#include "covrl/kernels.hpp"

namespace covrl {

Outcome Outcome::semantic_error(SemanticKind kind) {
  Outcome o(OutcomeClass::SemanticError);
  o.kind_ = kind;
  return o;
}

Outcome Outcome::crash(int signal) {
  Outcome o(OutcomeClass::Crash);
  o.signal_ = signal;
  return o;
}

std::string_view to_string(SemanticKind kind) {
  switch (kind) {
    case SemanticKind::Type: return "Type";
    case SemanticKind::Reference: return "Reference";
    case SemanticKind::Range: return "Range";
    case SemanticKind::URI: return "URI";
    case SemanticKind::Internal: return "Internal";
  }
  return "Internal";
}

std::string_view to_string(RewardSource source) {
  switch (source) {
    case RewardSource::SyntaxPenalty: return "SyntaxPenalty";
    case RewardSource::SemanticPenalty: return "SemanticPenalty";
    case RewardSource::Floor: return "Floor";
    case RewardSource::Weighted: return "Weighted";
    case RewardSource::CrrRatio: return "CrrRatio";
    case RewardSource::CrBinary: return "CrBinary";
  }
  return "Floor";
}

std::string Outcome::to_string() const {
  switch (cls_) {
    case OutcomeClass::SyntaxError: return "SyntaxError";
    case OutcomeClass::SemanticError:
      return "SemanticError:" + std::string(covrl::to_string(*kind_));
    case OutcomeClass::Pass: return "Pass";
    case OutcomeClass::Crash: return "Crash:" + std::to_string(*signal_);
    case OutcomeClass::Timeout: return "Timeout";
  }
  return "Pass";
}

Outcome Outcome::parse(std::string_view text) {
  if (text == "Pass") return pass();
  if (text == "SyntaxError") return syntax_error();
  if (text == "Timeout") return timeout();
  if (text.starts_with("Crash:")) {
    return crash(std::stoi(std::string(text.substr(6))));
  }
  if (text.starts_with("SemanticError:")) {
    const auto k = text.substr(14);
    for (auto kind : {SemanticKind::Type, SemanticKind::Reference, SemanticKind::Range,
                      SemanticKind::URI, SemanticKind::Internal}) {
      if (covrl::to_string(kind) == k) return semantic_error(kind);
    }
  }
  throw ProtocolError("unknown outcome '" + std::string(text) + "'");
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

CwrBreakdown cwr_breakdown(const CoverageMap& cov, const WeightMap& weights) {
  if (cov.size() != weights.size()) {
    throw ConfigError("coverage map and weight map sizes differ");
  }
  const EdgeSet tf = unique_coverage(cov);
  CwrBreakdown out;
  out.weighted_sum = kernels::serial::weighted_sum(tf, weights.idf);
  // ln is undefined for S <= 0; -inf routes those cases to the floor.
  out.log_sum = out.weighted_sum > 0.0 ? std::log(out.weighted_sum)
                                       : -std::numeric_limits<double>::infinity();
  if (out.log_sum > 0.0) {
    out.reward = {logistic(out.log_sum), RewardSource::Weighted, {}};
  } else {
    out.reward = {kFloorReward, RewardSource::Floor, {}};
  }
  return out;
}

Reward cwr_reward(const CoverageMap& cov, const WeightMap& weights) {
  return cwr_breakdown(cov, weights).reward;
}

Reward crr_reward(const CoverageMap& cov, const VirginMap& virgin) {
  if (cov.size() != virgin.size()) {
    throw ConfigError("coverage map and virgin map sizes differ");
  }
  if (virgin.unique_count() == 0) {
    return {0.0, RewardSource::CrrRatio, "coverage rate undefined: N = 0"};
  }
  const double covered = static_cast<double>(unique_coverage(cov).size());
  return {covered / static_cast<double>(virgin.unique_count()), RewardSource::CrrRatio, {}};
}

namespace {

std::optional<Reward> penalty(const Outcome& outcome) {
  switch (outcome.cls()) {
    case OutcomeClass::SyntaxError: return Reward{kSyntaxPenalty, RewardSource::SyntaxPenalty, {}};
    case OutcomeClass::SemanticError:
      return Reward{kSemanticPenalty, RewardSource::SemanticPenalty, {}};
    default: return std::nullopt;
  }
}

}  // namespace

Reward dispatch_reward(const Outcome& outcome, const CoverageMap& cov,
                       const WeightMap& weights, const VirginMap& virgin) {
  if (cov.size() != virgin.size()) {
    throw ConfigError("coverage map and virgin map sizes differ");
  }
  if (auto p = penalty(outcome)) return *p;
  return cwr_reward(cov, weights);
}

Reward score_case(RewardScheme scheme, const Outcome& outcome, const CoverageMap& cov,
                  const WeightMap& weights, const VirginMap& virgin, bool found_new) {
  if (auto p = penalty(outcome)) return *p;
  switch (scheme) {
    case RewardScheme::CWR: return cwr_reward(cov, weights);
    case RewardScheme::CRR: return crr_reward(cov, virgin);
    case RewardScheme::CRBinary:
      return {found_new ? 1.0 : 0.0, RewardSource::CrBinary, {}};
  }
  return cwr_reward(cov, weights);
}

std::span<const ErrorPattern> default_error_patterns() {
  static const std::vector<ErrorPattern> patterns = {
      {"SyntaxError", OutcomeClass::SyntaxError, std::nullopt},
      {"TypeError", OutcomeClass::SemanticError, SemanticKind::Type},
      {"ReferenceError", OutcomeClass::SemanticError, SemanticKind::Reference},
      {"RangeError", OutcomeClass::SemanticError, SemanticKind::Range},
      {"URIError", OutcomeClass::SemanticError, SemanticKind::URI},
      {"InternalError", OutcomeClass::SemanticError, SemanticKind::Internal},
  };
  return patterns;
}

Outcome classify_stderr(std::string_view stderr_text, const ProcessExit& exit,
                        std::span<const ErrorPattern> patterns) {
  if (exit.kind == ProcessExit::Kind::Signaled) return Outcome::crash(exit.signal);
  for (const auto& p : patterns) {
    if (stderr_text.find(p.needle) == std::string_view::npos) continue;
    if (p.cls == OutcomeClass::SemanticError) {
      return Outcome::semantic_error(p.kind.value_or(SemanticKind::Internal));
    }
    if (p.cls == OutcomeClass::SyntaxError) return Outcome::syntax_error();
  }
  if (exit.code == 0) return Outcome::pass();
  return Outcome::semantic_error(SemanticKind::Internal);
}

std::string to_json_line(const RewardRecord& rec) {
  nlohmann::json j = {
      {"case_id", rec.case_id},         {"seed_id", rec.seed_id},
      {"masked_input", rec.masked_input}, {"fill", rec.fill},
      {"outcome", rec.outcome.to_string()}, {"reward", rec.reward},
      {"cycle", rec.cycle},
  };
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

RewardRecord parse_json_line(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    RewardRecord rec;
    rec.case_id = j.at("case_id").get<uint64_t>();
    rec.seed_id = j.at("seed_id").get<uint64_t>();
    rec.masked_input = j.at("masked_input").get<std::vector<std::string>>();
    rec.fill = j.at("fill").get<std::vector<std::vector<std::string>>>();
    rec.outcome = Outcome::parse(j.at("outcome").get<std::string>());
    rec.reward = j.at("reward").get<double>();
    rec.cycle = j.at("cycle").get<uint64_t>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("bad reward record: ") + e.what());
  }
}

}  // namespace covrl
