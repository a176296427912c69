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

#include <sstream>

#include "covrl/campaign_state.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

namespace covrl {
namespace {

using testing::run_cli;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

TEST_CASE("help and usage errors") {
  auto r = run_cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("fuzz") != std::string::npos);
  r = run_cli({"fuzz", "--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("--iter-cycle") != std::string::npos);
  CHECK(r.out.find("--corpus") != std::string::npos);
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"fuzz", "--no-such-flag", "1"}).exit_code == 2);
  CHECK(run_cli({"fuzz", "--alpha", "1.5"}).exit_code == 2);
}

TEST_CASE("configuration errors exit with status 2") {
  testing::TempDir dir;
  auto r = run_cli({"fuzz", "--target", "/nonexistent/js @@", "--output", (dir / "o").string()});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("configuration error") != std::string::npos);
  r = run_cli({"fuzz", "--target", "toy", "--corpus", (dir / "missing").string(), "--output",
               (dir / "o2").string()});
  CHECK(r.exit_code == 2);

  testing::write_file(dir / "state.bin", "garbage");
  r = run_cli({"reward-eval", "--target", "toy", "--corpus-dir",
               testing::fixture("rarity/eval").string(), "--state", (dir / "state.bin").string()});
  CHECK(r.exit_code == 2);

  std::filesystem::create_directories(dir / "bad");
  testing::write_file(dir / "bad" / "state.bin", "garbage");
  r = run_cli({"fuzz", "--resume", "--output", (dir / "bad").string()});
  CHECK(r.exit_code == 2);
}

TEST_CASE("a short campaign with the coverage-rate reward") {
  testing::TempDir dir;
  const auto out = dir / "out";
  auto r = run_cli({"fuzz", "--target", "toy", "--reward", "crr", "--execs", "200",
                    "--iter-cycle", "100", "--seed", "3", "--output", out.string(), "--corpus",
                    testing::seed_corpus().string(), "--fork-server", "true"});
  REQUIRE(r.exit_code == 0);
  const auto stats = lines_of(testing::read_file(out / "stats.jsonl"));
  REQUIRE(stats.size() == 3);
  const auto last = nlohmann::json::parse(stats.back());
  CHECK(last.at("cycle") == 3);
  CHECK(last.at("execs") == 300);
  CHECK(last.at("wall_ms") == 0);
  CHECK(nlohmann::json::parse(lines_of(r.out).back()) == last);
  CHECK(testing::read_file(out / "config.txt").find("reward = crr") != std::string::npos);
  CHECK(std::filesystem::exists(out / "state.bin"));

  // A second run into the same directory needs --resume.
  r = run_cli({"fuzz", "--target", "toy", "--output", out.string(), "--corpus",
               testing::seed_corpus().string()});
  CHECK(r.exit_code == 2);
  r = run_cli({"fuzz", "--resume", "--execs", "50", "--output", out.string()});
  CHECK(r.exit_code == 0);
  CHECK(lines_of(testing::read_file(out / "stats.jsonl")).size() == 4);
}

TEST_CASE("config file values yield to flags") {
  testing::TempDir dir;
  testing::write_file(dir / "c.conf", "# quick\niter_cycle = 40\nexecs = 80\nalpha = 0.3\n");
  const auto out = dir / "out";
  const auto r = run_cli({"--config", (dir / "c.conf").string(), "fuzz", "--execs", "40",
                          "--output", out.string(), "--corpus", testing::seed_corpus().string()});
  REQUIRE(r.exit_code == 0);
  const auto cfg = testing::read_file(out / "config.txt");
  CHECK(cfg.find("iter_cycle = 40") != std::string::npos);
  CHECK(cfg.find("execs = 40") != std::string::npos);
  CHECK(cfg.find("alpha = 0.3") != std::string::npos);
  CHECK(lines_of(testing::read_file(out / "stats.jsonl")).size() == 2);
}

TEST_CASE("replay and reward-eval reports") {
  auto r = run_cli({"replay", "--target", "toy", "--json", "--corpus-dir",
                    testing::fixture("error_rate").string()});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("files") == 10);
  CHECK(j.at("syntax_error") == 3);
  CHECK(j.at("semantic_error") == 2);
  CHECK(j.at("pass") == 5);
  CHECK(j.at("valid_edges") <= j.at("total_edges"));

  r = run_cli({"replay", "--target", "toy", "--corpus-dir", testing::fixture("error_rate").string()});
  CHECK(r.out.find("syntax_error    30.00%") != std::string::npos);

  testing::TempDir dir;
  const auto out = dir / "train";
  REQUIRE(run_cli({"fuzz", "--target", "toy", "--execs", "1", "--iter-cycle", "1", "--output",
                   out.string(), "--corpus", testing::fixture("rarity/train").string()})
              .exit_code == 0);
  r = run_cli({"reward-eval", "--target", "toy", "--corpus-dir",
               testing::fixture("error_rate").string(), "--state", (out / "state.bin").string()});
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "case_id\toutcome\tS\tR_TFIDF\treward\tsource");
  CHECK(rows[1].find("a_syntax.js\tSyntaxError\t") == 0);
  CHECK(rows[1].find("\t-1\tSyntaxPenalty") != std::string::npos);
  CHECK(rows[4].find("\t-0.5\tSemanticPenalty") != std::string::npos);
}

TEST_CASE("bad target command templates") {
  testing::TempDir dir;
  for (const char* t : {"/bin/cat", "/bin/cat @@ @@"}) {
    const auto r = run_cli({"replay", "--target", t, "--corpus-dir",
                            testing::fixture("error_rate").string()});
    CHECK(r.exit_code == 2);
  }
}

}  // namespace
}  // namespace covrl
