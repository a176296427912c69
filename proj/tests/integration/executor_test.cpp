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

#include <chrono>
#include <set>
#include <sstream>

#include "covrl/error.hpp"
#include "covrl/executor.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace covrl {
namespace {

const std::string kLoop =
    "let a = [];\nfor (let i = 0; i < 5; i++) { a.push(i * 2); }\nprint(len(a));\n";

// Edge ids named by the toy's own first-hit trace.
std::set<uint32_t> traced_edges(const std::string& stderr_text) {
  std::set<uint32_t> out;
  std::istringstream in(stderr_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("[edge ", 0) == 0) out.insert(std::stoul(line.substr(6)));
  }
  return out;
}

TEST_CASE("toy outcomes") {
  Executor ex(testing::toy_config());
  auto r = ex.execute("print(1 + 2);");
  CHECK(r.outcome == Outcome::pass());
  CHECK(!unique_coverage(r.coverage).empty());
  CHECK(ex.execute("let = ;").outcome == Outcome::syntax_error());
  CHECK(ex.execute("print(nope);").outcome == Outcome::semantic_error(SemanticKind::Reference));
  CHECK(ex.execute("let x = 1; x();").outcome == Outcome::semantic_error(SemanticKind::Type));
  CHECK(ex.execute("print(decodeURI(\"%zz\"));").outcome ==
        Outcome::semantic_error(SemanticKind::URI));
  r = ex.execute(testing::read_file(testing::fixture("bugs/array_push_grow.js")));
  CHECK(r.outcome.cls() == OutcomeClass::Crash);
  CHECK(r.stderr_head.find("planted bug in array_push_grow") != std::string::npos);
  CHECK(ex.execute("").outcome == Outcome::pass());
}

TEST_CASE("coverage equals the traced edge set") {
  TargetConfig cfg = testing::toy_config();
  cfg.extra_env = {{"COVRL_TRACE", "1"}};
  Executor ex(cfg);
  for (const auto& code : {std::string("print(1);"), kLoop, std::string("let = ;"),
                           testing::read_file(testing::seed_corpus() / "seed_000.js")}) {
    const auto r = ex.execute(code);
    const auto cov = unique_coverage(r.coverage);
    CHECK(std::set<uint32_t>(cov.begin(), cov.end()) == traced_edges(r.stderr_head));
  }
}

TEST_CASE("maps are zeroed between executions and deterministic") {
  for (auto ch : {CoverageChannel::EnvFile, CoverageChannel::SharedRegion}) {
    for (bool fs : {false, true}) {
      Executor ex(testing::toy_config(ch, fs));
      const auto small_alone = ex.execute("print(1);").coverage;
      ex.execute(kLoop);
      CHECK(ex.execute("print(1);").coverage == small_alone);
      CHECK(ex.execute(kLoop).coverage == ex.execute(kLoop).coverage);
    }
  }
}

TEST_CASE("channels and fork server agree with plain spawning") {
  Executor base(testing::toy_config());
  Executor shm(testing::toy_config(CoverageChannel::SharedRegion));
  Executor fsrv(testing::toy_config(CoverageChannel::SharedRegion, true));
  Executor fsrv_file(testing::toy_config(CoverageChannel::EnvFile, true));
  for (const auto& e : std::filesystem::directory_iterator(testing::fixture("reward50"))) {
    const auto code = testing::read_file(e.path());
    const auto want = base.execute(code);
    for (auto* ex : {&shm, &fsrv, &fsrv_file}) {
      const auto got = ex->execute(code);
      CHECK(got.outcome == want.outcome);
      CHECK(got.coverage == want.coverage);
    }
  }
  for (const auto& e : std::filesystem::directory_iterator(testing::fixture("bugs"))) {
    const auto code = testing::read_file(e.path());
    CHECK(fsrv.execute(code).outcome == base.execute(code).outcome);
  }
}

TEST_CASE("small map sizes fold edges") {
  TargetConfig cfg = testing::toy_config(CoverageChannel::SharedRegion, true);
  cfg.map_exponent = 8;
  Executor small(cfg);
  Executor big(testing::toy_config());
  const auto s = small.execute(kLoop).coverage;
  CHECK(s.size() == 256);
  std::set<uint32_t> folded;
  for (uint32_t e : unique_coverage(big.execute(kLoop).coverage)) folded.insert(e & 255);
  const auto got = unique_coverage(s);
  CHECK(std::set<uint32_t>(got.begin(), got.end()) == folded);
}

TEST_CASE("timeouts kill the target") {
  TargetConfig cfg;
  cfg.argv = {"/bin/sh", "-c", "sleep 5", "@@"};
  cfg.timeout_ms = 200;
  Executor ex(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = ex.execute("x");
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  CHECK(r.outcome == Outcome::timeout());
  CHECK(ms.count() < 2000);

  Executor toy(testing::toy_config(CoverageChannel::SharedRegion, true));
  const auto loop = toy.execute("let k = 0;\nwhile (true) { k++; }");
  CHECK(loop.outcome == Outcome::semantic_error(SemanticKind::Internal));
  CHECK(toy.execute("print(1);").outcome == Outcome::pass());
}

TEST_CASE("invalid target configurations") {
  TargetConfig c = testing::toy_config();
  c.argv = {};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = testing::toy_config();
  c.argv = {COVRL_TOY_PATH};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.argv = {COVRL_TOY_PATH, "@@", "@@"};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = testing::toy_config();
  c.timeout_ms = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = testing::toy_config();
  c.map_exponent = 25;
  CHECK_THROWS_AS(Executor{c}, ConfigError);
  c = testing::toy_config();
  c.argv[0] = "/nonexistent/toy";
  CHECK_THROWS_AS(Executor{c}, ConfigError);
  CHECK_NOTHROW(validate(testing::toy_config()));
}

}  // namespace
}  // namespace covrl
