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

// Runs one test case against a target process and collects its coverage.
//
// Coverage channel contract (AFL bitmap layout, M one-byte counters):
//   EnvFile       the child writes M bytes to the path in COVRL_COV_PATH
//                 before it exits.
//   SharedRegion  a System V segment of M bytes whose id is exported as
//                 __AFL_SHM_ID; the child updates it in place.
// COVRL_MAP_SIZE always carries M.
//
// With `fork_server` the target is started once with control fd 198 and
// status fd 199 (the AFL fork-server handshake) and forks a fresh child per
// test case.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covrl/coverage.hpp"
#include "covrl/reward.hpp"

namespace covrl {

enum class CoverageChannel { EnvFile, SharedRegion };

inline constexpr std::string_view kCasePlaceholder = "@@";
inline constexpr size_t kStderrHeadBytes = 4096;

struct TargetConfig {
  std::vector<std::string> argv;  // exactly one element equal to "@@"
  CoverageChannel coverage_channel = CoverageChannel::EnvFile;
  uint32_t timeout_ms = 1000;
  uint32_t map_exponent = kDefaultMapExponent;
  std::optional<uint32_t> memory_limit_mb;
  bool fork_server = false;
  std::vector<std::pair<std::string, std::string>> extra_env;
};

// Throws ConfigError: empty argv, no/duplicate placeholder, timeout == 0,
// bad map exponent, or a target binary that is not executable.
void validate(const TargetConfig& cfg);

struct ExecutionResult {
  Outcome outcome = Outcome::pass();
  CoverageMap coverage;
  uint64_t wall_ms = 0;
  std::string stderr_head;  // first 4 KiB
  ProcessExit exit;
};

class Executor {
 public:
  // Throws ConfigError on an invalid configuration, TargetError if resources
  // (work directory, shared memory) cannot be set up.
  explicit Executor(TargetConfig cfg);
  ~Executor();
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  // Throws TargetError when the target cannot be spawned.
  ExecutionResult execute(std::string_view case_bytes);

  const TargetConfig& config() const { return cfg_; }

 private:
  struct Impl;
  TargetConfig cfg_;
  std::unique_ptr<Impl> impl_;
};

// Path of the bundled toy interpreter: $COVRL_TOY_TARGET, or covrl-toy next
// to the running executable.
std::filesystem::path default_toy_target();

}  // namespace covrl
