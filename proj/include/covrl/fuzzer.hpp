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

// The campaign driver: seed queue, interestingness, reward bookkeeping, the
// per-cycle weight update and finetune request, and on-disk persistence.
//
// Output directory layout:
//   queue/<id>_<parent|none>_<cycle>   retained seeds, including the initial corpus
//   crashes/<bucket>.js, .stderr       one input per crash bucket
//   dataset.jsonl                      reward records, one per line
//   stats.jsonl                        one snapshot per cycle
//   state.bin, resume.json             checkpoint written at every cycle end

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covrl/config.hpp"
#include "covrl/coverage.hpp"
#include "covrl/crash.hpp"
#include "covrl/executor.hpp"
#include "covrl/masking.hpp"
#include "covrl/mutator.hpp"
#include "covrl/reward.hpp"
#include "covrl/rng.hpp"
#include "covrl/tokens.hpp"
#include "json.hpp"

namespace covrl {

struct Seed {
  uint64_t id = 0;
  std::string bytes;
  TokenStream tokens;
  EdgeSet unique_edges;
  uint64_t discovered_cycle = 0;
  std::optional<uint64_t> parent;
  double energy = 1.0;
  bool initial = false;
};

struct Stats {
  uint64_t execs = 0;
  uint64_t passes = 0;
  uint64_t syntax_errors = 0;
  uint64_t semantic_errors = 0;
  uint64_t crashes = 0;
  uint64_t timeouts = 0;
  uint64_t cycles = 0;

  uint64_t iterations = 0;       // fuzz_one calls
  uint64_t protocol_errors = 0;  // mutations discarded for a bad fill
  uint64_t finetune_failures = 0;
  uint64_t retained = 0;         // seeds added after warm-up
  uint64_t sampled_errors = 0;   // uninteresting error cases added to the dataset
  uint64_t crash_records = 0;

  void count(const Outcome& o);
  uint64_t outcome_total() const {
    return passes + syntax_errors + semantic_errors + crashes + timeouts;
  }
  nlohmann::json to_json() const;
  static Stats from_json(const nlohmann::json& j);
  friend bool operator==(const Stats&, const Stats&) = default;
};

// Selection weight: favors seeds covering rare edges (sum of positive
// weights, rescaled by sqrt(M)) and seeds found recently.
double seed_energy(const Seed& seed, const WeightMap& weights, uint64_t cycle, EnergyMode mode);

// Index of a seed drawn with probability proportional to its energy.
// Throws ConfigError on an empty queue.
size_t select_seed(std::span<const Seed> queue, Rng& rng);

// Mock mutator settings taken from a campaign configuration.
MockOptions mock_options(const Config& cfg);

// Queue file name for a seed.
std::string seed_file_name(const Seed& s);

// Regular files of `dir` sorted by name, as (name, contents).
std::vector<std::pair<std::string, std::string>> read_corpus_dir(const std::filesystem::path& dir);

class Campaign {
 public:
  // Throws ConfigError when `cfg.output` already holds a campaign and
  // `resume` is false.
  Campaign(Config cfg, Executor& executor, Mutator& mutator, bool resume = false);
  ~Campaign();

  void add_initial_seed(std::string bytes);
  size_t load_corpus(const std::filesystem::path& dir);

  // Executes the initial seeds, registers their coverage and seeds the
  // weight map (momentum with alpha = 0). Throws ConfigError if nothing
  // usable remains.
  void warm_up();

  void fuzz_one();
  // Weight update, finetune request, stats line and checkpoint.
  void end_cycle();
  // iter_cycle calls to fuzz_one followed by end_cycle.
  void run_cycle();
  // Cycles until the exec or time budget is spent or `stop` is set. A
  // partial last cycle is closed with end_cycle.
  void run(const std::atomic<bool>* stop = nullptr);

  void checkpoint();

  const Config& config() const { return cfg_; }
  const Stats& stats() const { return stats_; }
  const std::vector<Seed>& queue() const { return queue_; }
  const WeightMap& weights() const { return weights_; }
  const VirginMap& virgin() const { return virgin_; }
  const VirginMap& valid() const { return valid_; }
  const CrashStore& crashes() const { return crashes_; }
  const std::vector<RewardRecord>& cycle_records() const { return cycle_records_; }
  uint64_t dataset_size() const { return dataset_size_; }
  uint64_t iterations_in_cycle() const { return in_cycle_; }
  const std::filesystem::path& output() const { return out_; }
  Rng& rng() { return rng_; }

  nlohmann::json stats_line() const;
  // The line most recently appended to stats.jsonl.
  const nlohmann::json& last_stats_line() const { return last_stats_; }

 private:
  void restore();
  void add_seed(Seed s);
  void record(uint64_t case_id, uint64_t seed_id, const MaskedCase& mc, const FillResult& fill,
              const Outcome& outcome, double reward);
  void refresh_energies();
  uint64_t elapsed_ms() const;

  Config cfg_;
  Executor& executor_;
  Mutator& mutator_;
  std::filesystem::path out_;
  Rng rng_;
  WeightMap weights_;
  VirginMap virgin_;
  VirginMap valid_;
  std::vector<Seed> queue_;
  std::vector<std::string> pending_initial_;
  Stats stats_;
  CrashStore crashes_;
  std::ofstream dataset_;
  std::vector<RewardRecord> cycle_records_;
  nlohmann::json last_stats_;
  uint64_t dataset_size_ = 0;
  uint64_t next_seed_id_ = 0;
  uint64_t in_cycle_ = 0;
  uint64_t wall_base_ms_ = 0;
  std::chrono::steady_clock::time_point started_;
};

struct ReplayReport {
  size_t files = 0;
  size_t skipped = 0;  // unreadable files
  size_t syntax_errors = 0;
  size_t semantic_errors = 0;
  size_t passes = 0;
  size_t crashes = 0;
  size_t timeouts = 0;
  uint64_t total_edges = 0;
  uint64_t valid_edges = 0;  // edges covered by Pass cases only
  EdgeSet total_set;
  EdgeSet valid_set;
  double percent(size_t n) const { return files ? 100.0 * static_cast<double>(n) / static_cast<double>(files) : 0.0; }
};

ReplayReport replay(const std::filesystem::path& dir, Executor& executor);

struct RewardRow {
  std::string case_id;
  Outcome outcome = Outcome::pass();
  CwrBreakdown breakdown;
  Reward reward;
};

// Scores every file of `dir` against the weight map in `state_file` under
// the CWR scheme. Throws ConfigError on a corrupt state file.
std::vector<RewardRow> reward_eval(const std::filesystem::path& dir,
                                   const std::filesystem::path& state_file, Executor& executor);

}  // namespace covrl
