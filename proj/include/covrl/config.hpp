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

// Campaign configuration: defaults, a flat key=value file format, and
// command-line overrides applied on top in that order.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covrl/executor.hpp"
#include "covrl/masking.hpp"
#include "covrl/reward.hpp"

namespace covrl {

enum class EnergyMode { Rarity, Uniform };

struct Config {
  std::string target = "toy";  // "toy" or a command template containing @@
  CoverageChannel coverage_channel = CoverageChannel::EnvFile;
  uint32_t timeout_ms = 1000;
  std::optional<uint32_t> memory_limit_mb;
  bool fork_server = false;

  RewardScheme reward = RewardScheme::CWR;
  double alpha = 0.6;
  uint32_t map_exponent = kDefaultMapExponent;
  double log_base = 0.0;  // 0 selects the natural log
  uint64_t iter_cycle = 10000;
  int finetune_epochs = 1;
  double error_sample_rate = 0.25;

  MaskBudget mask;
  StrategyMix strategy_mix;
  EnergyMode energy = EnergyMode::Rarity;

  std::string mutator = "mock";  // "mock" or host:port
  int top_k = 32;
  double contrastive_alpha = 0.6;
  bool adaptive = true;
  double mock_lr = 0.5;
  double mock_context_lr = 0.5;

  uint64_t seed = 0;
  std::string output = "covrl-out";
  std::string corpus = "corpus/seeds";
  uint64_t execs = 0;       // fuzz iterations; 0 means unbounded
  uint64_t duration_s = 0;  // 0 means unbounded
  bool wall_clock = false;  // false writes wall_ms = 0 for reproducible logs
};

using Settings = std::map<std::string, std::string>;

struct ConfigField {
  std::string_view key;
  std::string_view help;
};

// Every recognized key, in display order.
std::span<const ConfigField> config_fields();

// Parses "key = value" lines; '#' starts a comment. Throws ConfigError.
Settings parse_settings(std::string_view text);
Settings load_settings_file(const std::string& path);

// Throws ConfigError on an unknown key or an invalid value.
void apply_setting(Config& cfg, std::string_view key, std::string_view value);

// Defaults, then `file`, then `flags`.
Config resolve_config(const Settings& file, const Settings& flags);

// Canonical value of every key, suitable for parse_settings.
Settings to_settings(const Config& cfg);
std::string to_text(const Config& cfg);

// Throws ConfigError when the target cannot be used.
TargetConfig make_target_config(const Config& cfg);

std::vector<std::string> split_command(std::string_view cmd);

}  // namespace covrl
