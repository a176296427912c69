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

// covrl: command-line front end.
//
//   covrl fuzz         run a campaign
//   covrl reward-eval  print the reward of every file in a corpus
//   covrl replay       coverage and error-rate report for a corpus
//   covrl serve-mock   serve the mock mutator over the wire protocol
//
// Exit status: 0 on a clean stop, 2 on a configuration error, 3 when the
// target cannot be run.

#include <csignal>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "covrl/config.hpp"
#include "covrl/error.hpp"
#include "covrl/executor.hpp"
#include "covrl/fuzzer.hpp"
#include "covrl/mutator.hpp"
#include "covrl/net.hpp"

namespace {

using namespace covrl;

constexpr int kExitConfig = 2;
constexpr int kExitTarget = 3;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

void install_signal_handlers() {
  struct sigaction sa {};
  sa.sa_handler = on_signal;
  sigemptyset(&sa.sa_mask);
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
}

std::string flag_name(std::string_view key) {
  std::string s(key);
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

// Registers one flag per config key; values given on the command line end
// up in `flags`.
class FlagSet {
 public:
  void add(CLI::App* app, std::initializer_list<std::string_view> only = {}) {
    const Settings defaults = to_settings(Config{});
    for (const auto& f : config_fields()) {
      if (f.key == "seed") continue;  // global
      if (only.size() && std::find(only.begin(), only.end(), f.key) == only.end()) continue;
      auto& slot = values_[std::string(f.key)];
      auto* opt = app->add_option(flag_name(f.key), slot, std::string(f.help));
      opt->default_str(defaults.at(std::string(f.key)));
      opts_.emplace_back(std::string(f.key), opt);
    }
  }

  Settings collect() const {
    Settings out;
    for (const auto& [key, opt] : opts_) {
      if (opt->count() > 0) out[key] = values_.at(key);
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> opts_;
};

struct Globals {
  std::string config_path;
  std::string seed;
  CLI::Option* seed_opt = nullptr;
};

Config build_config(const Globals& g, const FlagSet& flags) {
  Settings file;
  if (!g.config_path.empty()) file = load_settings_file(g.config_path);
  Settings fl = flags.collect();
  if (g.seed_opt && g.seed_opt->count() > 0) fl["seed"] = g.seed;
  return resolve_config(file, fl);
}

std::unique_ptr<Mutator> make_mutator(const Config& cfg) {
  auto mock = std::make_unique<MockMutator>(mock_options(cfg));
  if (cfg.mutator == "mock") return mock;
  wire::DecodeOptions dec{cfg.top_k, cfg.contrastive_alpha};
  auto remote = std::make_unique<RemoteMutator>(net::Endpoint::parse(cfg.mutator), dec, std::move(mock));
  try {
    std::fprintf(stderr, "covrl: mutator service %s reports model %s\n", cfg.mutator.c_str(),
                 remote->ping().c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "covrl: mutator service unavailable (%s); using the mock until it returns\n",
                 e.what());
  }
  return remote;
}

int cmd_fuzz(const Config& cfg, bool resume) {
  Executor exec(make_target_config(cfg));
  auto mutator = make_mutator(cfg);
  Campaign camp(cfg, exec, *mutator, resume);
  if (!resume) {
    const size_t n = camp.load_corpus(cfg.corpus);
    std::fprintf(stderr, "covrl: %zu initial seeds from %s\n", n, cfg.corpus.c_str());
    camp.warm_up();
  }
  install_signal_handlers();
  camp.run(&g_stop);
  const auto& s = camp.stats();
  const auto& line = camp.last_stats_line();
  std::printf("%s\n", (line.is_null() ? camp.stats_line() : line).dump().c_str());
  std::fprintf(stderr,
               "covrl: %llu execs, %llu edges (%llu valid), %zu seeds, %zu crash buckets, %llu "
               "dataset records\n",
               static_cast<unsigned long long>(s.execs),
               static_cast<unsigned long long>(camp.virgin().unique_count()),
               static_cast<unsigned long long>(camp.valid().unique_count()), camp.queue().size(),
               camp.crashes().bucket_count(), static_cast<unsigned long long>(camp.dataset_size()));
  return 0;
}

std::string fmt_g(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_reward_eval(const Config& cfg, const std::string& corpus, const std::string& state) {
  Executor exec(make_target_config(cfg));
  const auto rows = reward_eval(corpus, state, exec);
  std::printf("case_id\toutcome\tS\tR_TFIDF\treward\tsource\n");
  for (const auto& r : rows) {
    std::printf("%s\t%s\t%s\t%s\t%s\t%s\n", r.case_id.c_str(), r.outcome.to_string().c_str(),
                fmt_g(r.breakdown.weighted_sum).c_str(), fmt_g(r.breakdown.log_sum).c_str(),
                fmt_g(r.reward.value).c_str(), std::string(to_string(r.reward.source)).c_str());
  }
  return 0;
}

int cmd_replay(const Config& cfg, const std::string& corpus, bool json) {
  Executor exec(make_target_config(cfg));
  const auto rep = replay(corpus, exec);
  if (json) {
    nlohmann::json j = {{"files", rep.files},
                        {"skipped", rep.skipped},
                        {"total_edges", rep.total_edges},
                        {"valid_edges", rep.valid_edges},
                        {"syntax_error", rep.syntax_errors},
                        {"semantic_error", rep.semantic_errors},
                        {"pass", rep.passes},
                        {"crash", rep.crashes},
                        {"timeout", rep.timeouts}};
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  std::printf("files           %zu\n", rep.files);
  if (rep.skipped) std::printf("skipped         %zu\n", rep.skipped);
  std::printf("total_edges     %llu\n", static_cast<unsigned long long>(rep.total_edges));
  std::printf("valid_edges     %llu\n", static_cast<unsigned long long>(rep.valid_edges));
  std::printf("syntax_error    %.2f%%\n", rep.percent(rep.syntax_errors));
  std::printf("semantic_error  %.2f%%\n", rep.percent(rep.semantic_errors));
  std::printf("pass            %.2f%%\n", rep.percent(rep.passes));
  std::printf("crash           %.2f%%\n", rep.percent(rep.crashes));
  std::printf("timeout         %.2f%%\n", rep.percent(rep.timeouts));
  return 0;
}

int cmd_serve_mock(const Config& cfg, const std::string& listen, size_t max_connections) {
  MockOptions mo;
  mo.adaptive = cfg.adaptive;
  mo.lr = cfg.mock_lr;
  mo.context_lr = cfg.mock_context_lr;
  MockMutator mock(mo);
  Rng rng(cfg.seed);
  auto listener = net::listen_tcp(net::Endpoint::parse(listen));
  net::Endpoint bound = net::Endpoint::parse(listen);
  bound.port = net::local_port(listener);
  std::printf("listening on %s\n", bound.to_string().c_str());
  std::fflush(stdout);
  install_signal_handlers();
  serve_mutator(listener, mock, rng, g_stop, max_connections);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covrl: coverage-guided fuzzing with coverage-weighted rewards"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "flat key = value config file (flags override it)");
  g.seed_opt = app.add_option("--seed", g.seed, "random seed")->default_str("0");

  auto* fuzz = app.add_subcommand("fuzz", "run a fuzzing campaign");
  FlagSet fuzz_flags;
  fuzz_flags.add(fuzz);
  bool resume = false;
  fuzz->add_flag("--resume", resume, "continue the campaign checkpointed in --output");

  const std::initializer_list<std::string_view> target_keys = {
      "target", "coverage_channel", "timeout_ms", "memory_limit_mb", "fork_server", "map_exponent"};

  auto* eval = app.add_subcommand("reward-eval", "print per-case rewards for a corpus");
  FlagSet eval_flags;
  eval_flags.add(eval, target_keys);
  std::string eval_corpus, eval_state;
  eval->add_option("--corpus-dir", eval_corpus, "directory of test cases")->required();
  eval->add_option("--state", eval_state, "campaign state file (state.bin)")->required();

  auto* rep = app.add_subcommand("replay", "coverage and error-rate report for a corpus");
  FlagSet rep_flags;
  rep_flags.add(rep, target_keys);
  std::string rep_corpus;
  bool rep_json = false;
  rep->add_option("--corpus-dir", rep_corpus, "directory of test cases")->required();
  rep->add_flag("--json", rep_json, "print the report as one JSON object");

  auto* serve = app.add_subcommand("serve-mock", "serve the mock mutator over TCP");
  FlagSet serve_flags;
  serve_flags.add(serve, {"adaptive", "mock_lr", "mock_context_lr"});
  std::string listen = "127.0.0.1:0";
  size_t max_conn = 0;
  serve->add_option("--listen", listen, "host:port to listen on (port 0 picks one)")->capture_default_str();
  serve->add_option("--max-connections", max_conn, "exit after this many connections; 0 serves forever");

  for (auto* sub : {fuzz, eval, rep, serve}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (fuzz->parsed()) return cmd_fuzz(build_config(g, fuzz_flags), resume);
    if (eval->parsed()) return cmd_reward_eval(build_config(g, eval_flags), eval_corpus, eval_state);
    if (rep->parsed()) return cmd_replay(build_config(g, rep_flags), rep_corpus, rep_json);
    if (serve->parsed()) return cmd_serve_mock(build_config(g, serve_flags), listen, max_conn);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "covrl: configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const TargetError& e) {
    std::fprintf(stderr, "covrl: target error: %s\n", e.what());
    return kExitTarget;
  } catch (const TransportError& e) {
    std::fprintf(stderr, "covrl: transport error: %s\n", e.what());
    return kExitTarget;
  }
  return 0;
}
