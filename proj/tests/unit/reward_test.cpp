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

#include <cmath>
#include <limits>

#include "covrl/error.hpp"
#include "covrl/reward.hpp"
#include "covrl/rng.hpp"
#include "doctest.h"

namespace covrl {
namespace {

constexpr uint32_t kExp = 8;

CoverageMap cover(std::initializer_list<uint32_t> edges) {
  CoverageMap c(kExp);
  for (uint32_t e : edges) c.hit(e);
  return c;
}

WeightMap weights_with(std::initializer_list<std::pair<uint32_t, double>> w) {
  WeightMap wm(kExp);
  for (auto [e, v] : w) wm.idf[e] = v;
  return wm;
}

VirginMap virgin_with(uint32_t n) {
  VirginMap v(kExp);
  for (uint32_t e = 0; e < n; ++e) v.mark(e);
  return v;
}

TEST_CASE("dispatch: penalties precede coverage") {
  const auto cov = cover({1, 2});
  const auto w = weights_with({{1, 5.0}, {2, 5.0}});
  const auto v = virgin_with(10);
  auto r = dispatch_reward(Outcome::syntax_error(), cov, w, v);
  CHECK(r.value == -1.0);
  CHECK(r.source == RewardSource::SyntaxPenalty);
  for (auto k : {SemanticKind::Type, SemanticKind::Reference, SemanticKind::Range,
                 SemanticKind::URI, SemanticKind::Internal}) {
    r = dispatch_reward(Outcome::semantic_error(k), cov, w, v);
    CHECK(r.value == -0.5);
    CHECK(r.source == RewardSource::SemanticPenalty);
  }
  r = dispatch_reward(Outcome::pass(), cov, w, v);
  CHECK(r.source == RewardSource::Weighted);
  CHECK(r.value == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
  CHECK(dispatch_reward(Outcome::crash(11), cov, w, v).value == r.value);
  CHECK(dispatch_reward(Outcome::timeout(), cov, w, v).value == r.value);
  CHECK_THROWS_AS(dispatch_reward(Outcome::pass(), CoverageMap(9), w, v), ConfigError);
}

TEST_CASE("CWR examples") {
  // sigma(ln S) = S / (1 + S) when S > 1.
  const auto w = weights_with({{3, 0.5}, {4, 1.5}, {5, 2.0}, {6, -0.25}});
  auto b = cwr_breakdown(cover({3, 4, 4, 4, 5}), w);
  CHECK(b.weighted_sum == 4.0);
  CHECK(b.log_sum == doctest::Approx(std::log(4.0)));
  CHECK(b.reward.value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(b.reward.source == RewardSource::Weighted);

  b = cwr_breakdown(cover({3, 4}), w);  // S = 2
  CHECK(b.reward.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  b = cwr_breakdown(cover({3}), w);  // S = 0.5, ln S < 0
  CHECK(b.reward.value == 0.5);
  CHECK(b.reward.source == RewardSource::Floor);

  b = cwr_breakdown(cover({3, 6, 6}), w);  // S = 0.25
  CHECK(b.reward.source == RewardSource::Floor);

  b = cwr_breakdown(cover({}), w);  // S = 0
  CHECK(b.log_sum == -std::numeric_limits<double>::infinity());
  CHECK(b.reward.value == 0.5);

  b = cwr_breakdown(cover({6}), w);  // S < 0
  CHECK(b.reward.value == 0.5);

  const auto one = weights_with({{7, 1.0}});  // S = 1, ln S = 0: floor
  CHECK(cwr_reward(cover({7}), one).source == RewardSource::Floor);
  CHECK_THROWS_AS(cwr_reward(CoverageMap(9), w), ConfigError);
}

TEST_CASE("CWR is a function of unique coverage only") {
  const auto w = weights_with({{10, 3.0}, {11, 0.7}});
  const auto a = cwr_reward(cover({10, 11}), w).value;
  CoverageMap heavy(kExp);
  for (int i = 0; i < 1000; ++i) {
    heavy.hit(10);
    heavy.hit(11);
  }
  CHECK(cwr_reward(heavy, w).value == a);
  CHECK(a == doctest::Approx(3.7 / 4.7).epsilon(1e-15));
}

TEST_CASE("CRR examples") {
  const auto v = virgin_with(8);
  auto r = crr_reward(cover({0, 1, 2, 2}), v);
  CHECK(r.value == 3.0 / 8.0);
  CHECK(r.source == RewardSource::CrrRatio);
  CHECK(crr_reward(cover({0, 1, 2, 3, 4, 5, 6, 7}), v).value == 1.0);
  r = crr_reward(cover({}), VirginMap(kExp));
  CHECK(r.value == 0.0);
  CHECK(!r.diagnostic.empty());
  CHECK_THROWS_AS(crr_reward(CoverageMap(9), v), ConfigError);
}

TEST_CASE("score_case by scheme") {
  const auto cov = cover({0, 1});
  const auto w = weights_with({{0, 2.0}, {1, 2.0}});
  const auto v = virgin_with(4);
  CHECK(score_case(RewardScheme::CWR, Outcome::pass(), cov, w, v, false).value ==
        doctest::Approx(0.8));
  CHECK(score_case(RewardScheme::CRR, Outcome::pass(), cov, w, v, false).value == 0.5);
  CHECK(score_case(RewardScheme::CRBinary, Outcome::pass(), cov, w, v, true).value == 1.0);
  CHECK(score_case(RewardScheme::CRBinary, Outcome::pass(), cov, w, v, false).value == 0.0);
  for (auto s : {RewardScheme::CWR, RewardScheme::CRR, RewardScheme::CRBinary}) {
    CHECK(score_case(s, Outcome::syntax_error(), cov, w, v, true).value == -1.0);
    CHECK(score_case(s, Outcome::semantic_error(SemanticKind::URI), cov, w, v, true).value ==
          -0.5);
  }
}

TEST_CASE("rewards stay in range and are deterministic") {
  Rng rng(17);
  for (int t = 0; t < 2000; ++t) {
    CoverageMap c(kExp);
    WeightMap w(kExp);
    VirginMap v(kExp);
    for (uint32_t e = 0; e < 256; ++e) {
      w.idf[e] = uniform_unit(rng) * 0.2 - 0.02;
      if (bernoulli(rng, 0.2)) c.hit(e);
    }
    accumulate(v, c);
    v.mark(static_cast<uint32_t>(uniform_below(rng, 256)));
    const Outcome outs[] = {Outcome::pass(), Outcome::syntax_error(),
                            Outcome::semantic_error(SemanticKind::Type), Outcome::crash(6)};
    for (const auto& o : outs) {
      for (auto s : {RewardScheme::CWR, RewardScheme::CRR, RewardScheme::CRBinary}) {
        const auto r = score_case(s, o, c, w, v, bernoulli(rng, 0.5));
        CHECK(r.value >= -1.0);
        CHECK(r.value <= 1.0);
        if (s == RewardScheme::CWR && !o.is_error()) CHECK(r.value >= 0.5);
      }
      CHECK(dispatch_reward(o, c, w, v).value == dispatch_reward(o, c, w, v).value);
    }
  }
}

TEST_CASE("classify_stderr") {
  const auto ok = ProcessExit::exited(0);
  const auto fail = ProcessExit::exited(1);
  CHECK(classify_stderr("", ok) == Outcome::pass());
  CHECK(classify_stderr("SyntaxError: unexpected token", fail) == Outcome::syntax_error());
  CHECK(classify_stderr("TypeError: x is not a function", fail) ==
        Outcome::semantic_error(SemanticKind::Type));
  CHECK(classify_stderr("ReferenceError: q", fail) ==
        Outcome::semantic_error(SemanticKind::Reference));
  CHECK(classify_stderr("RangeError: index", fail) ==
        Outcome::semantic_error(SemanticKind::Range));
  CHECK(classify_stderr("URIError: malformed", fail) ==
        Outcome::semantic_error(SemanticKind::URI));
  CHECK(classify_stderr("InternalError: too much recursion", fail) ==
        Outcome::semantic_error(SemanticKind::Internal));
  CHECK(classify_stderr("something odd", fail) ==
        Outcome::semantic_error(SemanticKind::Internal));
  CHECK(classify_stderr("TypeError: but then", ProcessExit::signaled(11)) == Outcome::crash(11));
  // Pattern order decides between several matches.
  CHECK(classify_stderr("TypeError in SyntaxError", fail) == Outcome::syntax_error());
  const std::vector<ErrorPattern> custom{{"boom", OutcomeClass::SyntaxError, std::nullopt}};
  CHECK(classify_stderr("TypeError boom", fail, custom) == Outcome::syntax_error());
  CHECK(classify_stderr("TypeError", ok, custom) == Outcome::pass());
}

TEST_CASE("outcome and record text round trip") {
  for (const auto& o : {Outcome::pass(), Outcome::syntax_error(), Outcome::timeout(),
                        Outcome::crash(11), Outcome::semantic_error(SemanticKind::URI)}) {
    CHECK(Outcome::parse(o.to_string()) == o);
  }
  CHECK(Outcome::semantic_error(SemanticKind::Reference).to_string() ==
        "SemanticError:Reference");
  CHECK_THROWS_AS(Outcome::parse("Fine"), ProtocolError);
  RewardRecord rec{7, 3, {"let", "<extra_id_0>"}, {{"x", "="}}, Outcome::crash(6), 0.75, 2};
  const auto line = to_json_line(rec);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(parse_json_line(line) == rec);
  CHECK_THROWS_AS(parse_json_line("{\"case_id\":1}"), ProtocolError);
  CHECK_THROWS_AS(parse_json_line("not json"), ProtocolError);
}

}  // namespace
}  // namespace covrl
