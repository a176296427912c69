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

#include "covrl/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "covrl/error.hpp"

namespace covrl {
namespace {

constexpr ConfigField kFields[] = {
    {"target", "'toy' or a target command containing @@ for the test case path"},
    {"coverage_channel", "how the target reports coverage: file or shm"},
    {"timeout_ms", "per-execution timeout in milliseconds"},
    {"memory_limit_mb", "address-space limit for the target; 0 disables"},
    {"fork_server", "reuse a forked target process per execution"},
    {"reward", "reward scheme: cwr, crr or cr"},
    {"alpha", "momentum rate for the weight map update"},
    {"map_exponent", "coverage map size is 2^map_exponent (8..24)"},
    {"log_base", "logarithm base for the weights; 0 means e"},
    {"iter_cycle", "mutations per cycle between weight updates and finetuning"},
    {"finetune_epochs", "epochs per finetune request"},
    {"error_sample_rate", "share of uninteresting error cases added to the dataset"},
    {"mask_fraction", "expected share of masked token positions"},
    {"mask_max_slots", "maximum mask slots per case"},
    {"strategy_mix", "relative weights insert:overwrite:splice"},
    {"energy", "seed scheduling: rarity or uniform"},
    {"mutator", "'mock' or host:port of a mutator service"},
    {"top_k", "decoding top-k sent to the mutator service"},
    {"contrastive_alpha", "contrastive-search penalty sent to the mutator service"},
    {"adaptive", "mock mutator learns from rewards (false freezes its corpus-derived weights)"},
    {"mock_lr", "mock mutator token learning rate"},
    {"mock_context_lr", "mock mutator context learning rate"},
    {"seed", "random seed"},
    {"output", "output directory"},
    {"corpus", "initial corpus directory"},
    {"execs", "stop after this many mutations; 0 means no limit"},
    {"duration_s", "stop after this many seconds; 0 means no limit"},
    {"wall_clock", "record wall-clock times (false writes 0 for reproducible logs)"},
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    ": expected " + std::string(want));
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view v) {
  Int out{};
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) bad_value(key, v, "a number");
  return d;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "true or false");
}

std::string fmt_double(double d) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, r.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::span<const ConfigField> config_fields() { return kFields; }

Settings parse_settings(std::string_view text) {
  Settings out;
  size_t line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_settings(ss.str());
}

void apply_setting(Config& c, std::string_view key, std::string_view v) {
  if (key == "target") {
    if (v.empty()) bad_value(key, v, "'toy' or a command");
    c.target = v;
  } else if (key == "coverage_channel") {
    if (v == "file") c.coverage_channel = CoverageChannel::EnvFile;
    else if (v == "shm") c.coverage_channel = CoverageChannel::SharedRegion;
    else bad_value(key, v, "file or shm");
  } else if (key == "timeout_ms") {
    c.timeout_ms = parse_int<uint32_t>(key, v);
    if (c.timeout_ms == 0) bad_value(key, v, "a positive integer");
  } else if (key == "memory_limit_mb") {
    const auto mb = parse_int<uint32_t>(key, v);
    c.memory_limit_mb = mb ? std::optional<uint32_t>(mb) : std::nullopt;
  } else if (key == "fork_server") {
    c.fork_server = parse_bool(key, v);
  } else if (key == "reward") {
    if (v == "cwr") c.reward = RewardScheme::CWR;
    else if (v == "crr") c.reward = RewardScheme::CRR;
    else if (v == "cr") c.reward = RewardScheme::CRBinary;
    else bad_value(key, v, "cwr, crr or cr");
  } else if (key == "alpha") {
    c.alpha = parse_double(key, v);
    if (c.alpha < 0 || c.alpha > 1) bad_value(key, v, "a number in [0, 1]");
  } else if (key == "map_exponent") {
    c.map_exponent = parse_int<uint32_t>(key, v);
    check_map_exponent(c.map_exponent);
  } else if (key == "log_base") {
    c.log_base = parse_double(key, v);
    if (c.log_base != 0 && (c.log_base <= 0 || c.log_base == 1)) bad_value(key, v, "0 or a base > 0, != 1");
  } else if (key == "iter_cycle") {
    c.iter_cycle = parse_int<uint64_t>(key, v);
    if (c.iter_cycle == 0) bad_value(key, v, "a positive integer");
  } else if (key == "finetune_epochs") {
    c.finetune_epochs = parse_int<int>(key, v);
    if (c.finetune_epochs < 1) bad_value(key, v, "a positive integer");
  } else if (key == "error_sample_rate") {
    c.error_sample_rate = parse_double(key, v);
    if (c.error_sample_rate < 0 || c.error_sample_rate > 1) bad_value(key, v, "a number in [0, 1]");
  } else if (key == "mask_fraction") {
    c.mask.fraction = parse_double(key, v);
    if (c.mask.fraction <= 0 || c.mask.fraction > 1) bad_value(key, v, "a number in (0, 1]");
  } else if (key == "mask_max_slots") {
    c.mask.max_slots = parse_int<size_t>(key, v);
    if (c.mask.max_slots == 0) bad_value(key, v, "a positive integer");
  } else if (key == "strategy_mix") {
    double w[3];
    std::string_view rest = v;
    for (int i = 0; i < 3; ++i) {
      const size_t colon = rest.find(':');
      if ((i < 2) == (colon == std::string_view::npos)) bad_value(key, v, "three weights a:b:c");
      w[i] = parse_double(key, rest.substr(0, colon));
      if (w[i] < 0) bad_value(key, v, "non-negative weights");
      rest = i < 2 ? rest.substr(colon + 1) : std::string_view{};
    }
    if (w[0] + w[1] + w[2] <= 0) bad_value(key, v, "at least one positive weight");
    c.strategy_mix = {w[0], w[1], w[2]};
  } else if (key == "energy") {
    if (v == "rarity") c.energy = EnergyMode::Rarity;
    else if (v == "uniform") c.energy = EnergyMode::Uniform;
    else bad_value(key, v, "rarity or uniform");
  } else if (key == "mutator") {
    if (v != "mock" && v.find(':') == std::string_view::npos) bad_value(key, v, "mock or host:port");
    c.mutator = v;
  } else if (key == "top_k") {
    c.top_k = parse_int<int>(key, v);
    if (c.top_k < 1) bad_value(key, v, "a positive integer");
  } else if (key == "contrastive_alpha") {
    c.contrastive_alpha = parse_double(key, v);
    if (c.contrastive_alpha < 0 || c.contrastive_alpha > 1) bad_value(key, v, "a number in [0, 1]");
  } else if (key == "adaptive") {
    c.adaptive = parse_bool(key, v);
  } else if (key == "mock_lr") {
    c.mock_lr = parse_double(key, v);
  } else if (key == "mock_context_lr") {
    c.mock_context_lr = parse_double(key, v);
  } else if (key == "seed") {
    c.seed = parse_int<uint64_t>(key, v);
  } else if (key == "output") {
    if (v.empty()) bad_value(key, v, "a directory");
    c.output = v;
  } else if (key == "corpus") {
    if (v.empty()) bad_value(key, v, "a directory");
    c.corpus = v;
  } else if (key == "execs") {
    c.execs = parse_int<uint64_t>(key, v);
  } else if (key == "duration_s") {
    c.duration_s = parse_int<uint64_t>(key, v);
  } else if (key == "wall_clock") {
    c.wall_clock = parse_bool(key, v);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

Config resolve_config(const Settings& file, const Settings& flags) {
  Config c;
  for (const auto& [k, v] : file) apply_setting(c, k, v);
  for (const auto& [k, v] : flags) apply_setting(c, k, v);
  return c;
}

Settings to_settings(const Config& c) {
  Settings s;
  s["target"] = c.target;
  s["coverage_channel"] = c.coverage_channel == CoverageChannel::EnvFile ? "file" : "shm";
  s["timeout_ms"] = std::to_string(c.timeout_ms);
  s["memory_limit_mb"] = std::to_string(c.memory_limit_mb.value_or(0));
  s["fork_server"] = c.fork_server ? "true" : "false";
  s["reward"] = c.reward == RewardScheme::CWR ? "cwr" : c.reward == RewardScheme::CRR ? "crr" : "cr";
  s["alpha"] = fmt_double(c.alpha);
  s["map_exponent"] = std::to_string(c.map_exponent);
  s["log_base"] = fmt_double(c.log_base);
  s["iter_cycle"] = std::to_string(c.iter_cycle);
  s["finetune_epochs"] = std::to_string(c.finetune_epochs);
  s["error_sample_rate"] = fmt_double(c.error_sample_rate);
  s["mask_fraction"] = fmt_double(c.mask.fraction);
  s["mask_max_slots"] = std::to_string(c.mask.max_slots);
  s["strategy_mix"] = fmt_double(c.strategy_mix.insert) + ":" + fmt_double(c.strategy_mix.overwrite) +
                      ":" + fmt_double(c.strategy_mix.splice);
  s["energy"] = c.energy == EnergyMode::Rarity ? "rarity" : "uniform";
  s["mutator"] = c.mutator;
  s["top_k"] = std::to_string(c.top_k);
  s["contrastive_alpha"] = fmt_double(c.contrastive_alpha);
  s["adaptive"] = c.adaptive ? "true" : "false";
  s["mock_lr"] = fmt_double(c.mock_lr);
  s["mock_context_lr"] = fmt_double(c.mock_context_lr);
  s["seed"] = std::to_string(c.seed);
  s["output"] = c.output;
  s["corpus"] = c.corpus;
  s["execs"] = std::to_string(c.execs);
  s["duration_s"] = std::to_string(c.duration_s);
  s["wall_clock"] = c.wall_clock ? "true" : "false";
  return s;
}

std::string to_text(const Config& c) {
  const Settings s = to_settings(c);
  std::string out;
  for (const auto& f : kFields) {
    out += std::string(f.key) + " = " + s.at(std::string(f.key)) + "\n";
  }
  return out;
}

std::vector<std::string> split_command(std::string_view cmd) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (const char ch : cmd) {
    if (quote) {
      if (ch == quote) quote = 0;
      else cur.push_back(ch);
    } else if (ch == '\'' || ch == '"') {
      quote = ch;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (in_word) out.push_back(std::move(cur));
      cur.clear();
      in_word = false;
    } else {
      cur.push_back(ch);
      in_word = true;
    }
  }
  if (quote) throw ConfigError("unterminated quote in target command");
  if (in_word) out.push_back(std::move(cur));
  return out;
}

TargetConfig make_target_config(const Config& c) {
  TargetConfig t;
  if (c.target == "toy") {
    t.argv = {default_toy_target().string(), std::string(kCasePlaceholder)};
  } else {
    t.argv = split_command(c.target);
  }
  t.coverage_channel = c.coverage_channel;
  t.timeout_ms = c.timeout_ms;
  t.map_exponent = c.map_exponent;
  t.memory_limit_mb = c.memory_limit_mb;
  t.fork_server = c.fork_server;
  validate(t);
  return t;
}

}  // namespace covrl
