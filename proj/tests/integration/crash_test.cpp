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

#include <set>
#include <stdexcept>

#include "covrl/crash.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace covrl {
namespace {

TEST_CASE("normalization masks addresses and numbers") {
  CHECK(normalize_crash_text("==123==ERROR at 0x7ffd12ab in f\n") == "==N==ERROR at 0x? in f\n");
  CHECK(normalize_crash_text("a 0XdeadBEEF b 42c") == "a 0x? b Nc");
  CHECK(normalize_crash_text("1\n2\n3\n4\n5\n6\n7\n") == "N\nN\nN\nN\nN\n");
  CHECK(normalize_crash_text("") == "");
}

TEST_CASE("fingerprints separate signals and texts") {
  ExecutionResult a;
  a.outcome = Outcome::crash(11);
  a.stderr_head = "boom at 0x1234\n";
  ExecutionResult b = a;
  b.stderr_head = "boom at 0xabcdef00\n";
  CHECK(fingerprint_crash(a) == fingerprint_crash(b));
  CHECK(fingerprint_crash(a).size() == 16);
  b.outcome = Outcome::crash(6);
  CHECK(fingerprint_crash(a) != fingerprint_crash(b));
  b = a;
  b.stderr_head = "bang at 0x1234\n";
  CHECK(fingerprint_crash(a) != fingerprint_crash(b));
  a.outcome = Outcome::pass();
  CHECK_THROWS_AS(fingerprint_crash(a), std::invalid_argument);
}

TEST_CASE("planted bugs land in one bucket each across runs") {
  Executor spawn(testing::toy_config());
  Executor fsrv(testing::toy_config(CoverageChannel::SharedRegion, true));
  std::set<std::string> all;
  for (const auto& e : std::filesystem::directory_iterator(testing::fixture("bugs"))) {
    const auto code = testing::read_file(e.path());
    std::set<std::string> mine;
    std::set<std::string> raw;
    for (int i = 0; i < 10; ++i) {
      for (auto* ex : {&spawn, &fsrv}) {
        const auto r = ex->execute(code);
        REQUIRE(r.outcome.cls() == OutcomeClass::Crash);
        mine.insert(fingerprint_crash(r));
        raw.insert(r.stderr_head);
      }
    }
    CAPTURE(e.path());
    CHECK(mine.size() == 1);
    CHECK(raw.size() > 1);  // the reports carry live addresses and pids
    all.insert(mine.begin(), mine.end());
  }
  CHECK(all.size() == 3);
}

TEST_CASE("crash store keeps one input per bucket and reloads") {
  testing::TempDir dir;
  {
    CrashStore s(dir / "crashes");
    CHECK(s.add("00000000000000aa", "first", "err1"));
    CHECK_FALSE(s.add("00000000000000aa", "second", "err2"));
    CHECK(s.add("00000000000000bb", "third", "err3"));
    CHECK(s.bucket_count() == 2);
  }
  CHECK(testing::read_file(dir / "crashes/00000000000000aa.js") == "first");
  CHECK(testing::read_file(dir / "crashes/00000000000000aa.stderr") == "err1");
  CrashStore again(dir / "crashes");
  CHECK(again.buckets() == std::set<std::string>{"00000000000000aa", "00000000000000bb"});
  CHECK_FALSE(again.add("00000000000000bb", "x", "y"));
}

}  // namespace
}  // namespace covrl
