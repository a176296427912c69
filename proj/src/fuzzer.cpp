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

#include "covrl/fuzzer.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "covrl/campaign_state.hpp"
#include "covrl/error.hpp"

namespace covrl {
namespace fs = std::filesystem;
namespace {

constexpr int kResumeVersion = 1;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, std::string_view bytes) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw TargetError("cannot write " + tmp.string());
  }
  fs::rename(tmp, p);
}

}  // namespace

void Stats::count(const Outcome& o) {
  ++execs;
  switch (o.cls()) {
    case OutcomeClass::Pass: ++passes; break;
    case OutcomeClass::SyntaxError: ++syntax_errors; break;
    case OutcomeClass::SemanticError: ++semantic_errors; break;
    case OutcomeClass::Crash: ++crashes; break;
    case OutcomeClass::Timeout: ++timeouts; break;
  }
}

nlohmann::json Stats::to_json() const {
  return {{"execs", execs},
          {"passes", passes},
          {"syntax_errors", syntax_errors},
          {"semantic_errors", semantic_errors},
          {"crashes", crashes},
          {"timeouts", timeouts},
          {"cycles", cycles},
          {"iterations", iterations},
          {"protocol_errors", protocol_errors},
          {"finetune_failures", finetune_failures},
          {"retained", retained},
          {"sampled_errors", sampled_errors},
          {"crash_records", crash_records}};
}

Stats Stats::from_json(const nlohmann::json& j) {
  Stats s;
  s.execs = j.at("execs");
  s.passes = j.at("passes");
  s.syntax_errors = j.at("syntax_errors");
  s.semantic_errors = j.at("semantic_errors");
  s.crashes = j.at("crashes");
  s.timeouts = j.at("timeouts");
  s.cycles = j.at("cycles");
  s.iterations = j.at("iterations");
  s.protocol_errors = j.at("protocol_errors");
  s.finetune_failures = j.at("finetune_failures");
  s.retained = j.at("retained");
  s.sampled_errors = j.at("sampled_errors");
  s.crash_records = j.at("crash_records");
  return s;
}

double seed_energy(const Seed& seed, const WeightMap& weights, uint64_t cycle, EnergyMode mode) {
  if (mode == EnergyMode::Uniform) return 1.0;
  double rarity = 0.0;
  for (const uint32_t e : seed.unique_edges) rarity += std::max(0.0, weights.idf[e]);
  rarity *= std::sqrt(static_cast<double>(weights.size()));
  const double age = cycle > seed.discovered_cycle ? static_cast<double>(cycle - seed.discovered_cycle) : 0.0;
  return (1.0 + rarity) * (1.0 + 1.0 / (1.0 + age));
}

size_t select_seed(std::span<const Seed> queue, Rng& rng) {
  if (queue.empty()) throw ConfigError("seed queue is empty");
  double total = 0.0;
  for (const auto& s : queue) total += s.energy;
  const double target = uniform_unit(rng) * total;
  double acc = 0.0;
  for (size_t i = 0; i < queue.size(); ++i) {
    acc += queue[i].energy;
    if (target < acc) return i;
  }
  return queue.size() - 1;
}

MockOptions mock_options(const Config& cfg) {
  MockOptions mo;
  mo.adaptive = cfg.adaptive;
  mo.lr = cfg.mock_lr;
  mo.context_lr = cfg.mock_context_lr;
  return mo;
}

std::string seed_file_name(const Seed& s) {
  char buf[96];
  if (s.parent) {
    std::snprintf(buf, sizeof buf, "%06" PRIu64 "_%06" PRIu64 "_%" PRIu64, s.id, *s.parent,
                  s.discovered_cycle);
  } else {
    std::snprintf(buf, sizeof buf, "%06" PRIu64 "_none_%" PRIu64, s.id, s.discovered_cycle);
  }
  return buf;
}

std::vector<std::pair<std::string, std::string>> read_corpus_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "covrl: warning: skipping unreadable %s\n", f.c_str());
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out.emplace_back(f.filename().string(), ss.str());
  }
  return out;
}

Campaign::Campaign(Config cfg, Executor& executor, Mutator& mutator, bool resume)
    : cfg_(std::move(cfg)),
      executor_(executor),
      mutator_(mutator),
      out_(cfg_.output),
      rng_(cfg_.seed),
      weights_(cfg_.map_exponent),
      virgin_(cfg_.map_exponent),
      valid_(cfg_.map_exponent),
      crashes_((fs::create_directories(out_), out_ / "crashes")),
      started_(std::chrono::steady_clock::now()) {
  if (executor_.config().map_exponent != cfg_.map_exponent) {
    throw ConfigError("executor map size differs from the campaign map size");
  }
  fs::create_directories(out_ / "queue");
  const bool has_state = fs::exists(out_ / "state.bin");
  if (resume) {
    if (!has_state) throw ConfigError("nothing to resume in " + out_.string());
    restore();
  } else if (has_state) {
    throw ConfigError(out_.string() + " already holds a campaign; pass --resume or pick another output");
  }
  const auto mode = resume ? std::ios::app : std::ios::trunc;
  dataset_.open(out_ / "dataset.jsonl", std::ios::out | mode);
  if (!resume) std::ofstream(out_ / "stats.jsonl", std::ios::trunc);
  write_file(out_ / "config.txt", to_text(cfg_));
}

Campaign::~Campaign() = default;

void Campaign::add_initial_seed(std::string bytes) { pending_initial_.push_back(std::move(bytes)); }

size_t Campaign::load_corpus(const fs::path& dir) {
  auto files = read_corpus_dir(dir);
  for (auto& [name, bytes] : files) {
    mutator_.observe_tokens(tokenize(bytes).tokens);
    add_initial_seed(std::move(bytes));
  }
  return files.size();
}

uint64_t Campaign::elapsed_ms() const {
  if (!cfg_.wall_clock) return 0;
  const auto d = std::chrono::steady_clock::now() - started_;
  return wall_base_ms_ + static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
}

void Campaign::add_seed(Seed s) {
  s.id = next_seed_id_++;
  s.energy = seed_energy(s, weights_, weights_.cycle, cfg_.energy);
  write_file(out_ / "queue" / seed_file_name(s), s.bytes);
  queue_.push_back(std::move(s));
}

void Campaign::warm_up() {
  size_t skipped = 0;
  for (auto& bytes : pending_initial_) {
    ExecutionResult res = executor_.execute(bytes);
    stats_.count(res.outcome);
    const auto cls = res.outcome.cls();
    if (cls == OutcomeClass::Crash || cls == OutcomeClass::Timeout) {
      ++skipped;
      continue;
    }
    if (cls == OutcomeClass::Pass) accumulate(valid_, res.coverage);
    accumulate(virgin_, res.coverage);
    Seed s;
    s.unique_edges = unique_coverage(res.coverage);
    register_seed_coverage(weights_, s.unique_edges);
    s.tokens = tokenize(bytes);
    s.bytes = std::move(bytes);
    s.initial = true;
    add_seed(std::move(s));
  }
  pending_initial_.clear();
  if (skipped) std::fprintf(stderr, "covrl: %zu initial seeds crashed or timed out and were skipped\n", skipped);
  if (queue_.empty() || virgin_.unique_count() == 0) {
    throw ConfigError("no usable initial seeds");
  }
  const auto fresh = compute_idf(weights_, virgin_, {cfg_.log_base});
  update_with_momentum(weights_, fresh, 0.0);
  refresh_energies();
  dataset_.flush();
  last_stats_ = stats_line();
  std::ofstream(out_ / "stats.jsonl", std::ios::app) << last_stats_.dump() << "\n";
  checkpoint();
}

void Campaign::record(uint64_t case_id, uint64_t seed_id, const MaskedCase& mc, const FillResult& fill,
                      const Outcome& outcome, double reward) {
  RewardRecord r;
  r.case_id = case_id;
  r.seed_id = seed_id;
  r.masked_input = mc.masked.tokens;
  r.fill = fill.fills;
  r.outcome = outcome;
  r.reward = reward;
  r.cycle = weights_.cycle;
  dataset_ << to_json_line(r) << "\n";
  ++dataset_size_;
  cycle_records_.push_back(std::move(r));
}

void Campaign::fuzz_one() {
  const uint64_t case_id = stats_.iterations++;
  ++in_cycle_;
  const size_t pick = select_seed(queue_, rng_);
  const Seed& seed = queue_[pick];
  const uint64_t seed_id = seed.id;

  MaskedCase mc;
  const MaskStrategy strategy = draw_strategy(cfg_.strategy_mix, rng_);
  if (strategy == MaskStrategy::Splice) {
    const Seed& donor = queue_[uniform_below(rng_, queue_.size())];
    mc = mask_splice(seed.tokens, donor.tokens, rng_);
    if (mc.strategy == MaskStrategy::Splice) mc.donor_id = donor.id;
  } else if (strategy == MaskStrategy::Overwrite && !seed.tokens.empty()) {
    const auto pos = draw_positions(seed.tokens.size(), cfg_.mask, rng_);
    mc = mask_overwrite(seed.tokens, pos);
  } else {
    const auto pos = draw_positions(seed.tokens.size() + 1, cfg_.mask, rng_);
    mc = mask_insert(seed.tokens, pos);
  }
  mc.seed_id = seed_id;

  FillResult fill;
  std::string bytes;
  try {
    fill = mutator_.fill(mc, rng_);
    bytes = detokenize(splice_fills(mc, fill));
  } catch (const ProtocolError& e) {
    ++stats_.protocol_errors;
    std::fprintf(stderr, "covrl: discarding mutation: %s\n", e.what());
    return;
  }

  ExecutionResult res = executor_.execute(bytes);
  const Outcome& outcome = res.outcome;
  stats_.count(outcome);

  switch (outcome.cls()) {
    case OutcomeClass::Timeout:
      return;
    case OutcomeClass::Crash: {
      if (crashes_.add(fingerprint_crash(res), bytes, res.stderr_head)) {
        std::fprintf(stderr, "covrl: new crash bucket (%s), %zu total\n", outcome.to_string().c_str(),
                     crashes_.bucket_count());
      }
      const bool found_new = !virgin_.peek_new(res.coverage).empty();
      Reward r;
      if (cfg_.reward == RewardScheme::CRR) {
        VirginMap with_case = virgin_;
        accumulate(with_case, res.coverage);
        r = score_case(cfg_.reward, outcome, res.coverage, weights_, with_case, found_new);
      } else {
        r = score_case(cfg_.reward, outcome, res.coverage, weights_, virgin_, found_new);
      }
      record(case_id, seed_id, mc, fill, outcome, r.value);
      ++stats_.crash_records;
      return;
    }
    default:
      break;
  }

  if (outcome.cls() == OutcomeClass::Pass) accumulate(valid_, res.coverage);
  if (!virgin_.peek_new(res.coverage).empty()) {
    accumulate(virgin_, res.coverage);
    Seed s;
    s.unique_edges = unique_coverage(res.coverage);
    register_seed_coverage(weights_, s.unique_edges);
    s.tokens = tokenize(bytes);
    s.bytes = bytes;
    s.discovered_cycle = weights_.cycle;
    s.parent = seed_id;
    add_seed(std::move(s));
    ++stats_.retained;
    const Reward r = score_case(cfg_.reward, outcome, res.coverage, weights_, virgin_, true);
    record(case_id, seed_id, mc, fill, outcome, r.value);
  } else if (outcome.is_error() && bernoulli(rng_, cfg_.error_sample_rate)) {
    const Reward r = score_case(cfg_.reward, outcome, res.coverage, weights_, virgin_, false);
    record(case_id, seed_id, mc, fill, outcome, r.value);
    ++stats_.sampled_errors;
  }
}

void Campaign::refresh_energies() {
  for (auto& s : queue_) s.energy = seed_energy(s, weights_, weights_.cycle, cfg_.energy);
}

nlohmann::json Campaign::stats_line() const {
  const double execs = stats_.execs ? static_cast<double>(stats_.execs) : 1.0;
  double reward_sum = 0.0;
  for (const auto& r : cycle_records_) reward_sum += r.reward;
  const double reward_mean =
      cycle_records_.empty() ? 0.0 : reward_sum / static_cast<double>(cycle_records_.size());
  return {{"cycle", weights_.cycle},
          {"execs", stats_.execs},
          {"n_edges", virgin_.unique_count()},
          {"valid_edges", valid_.unique_count()},
          {"err_syntax", static_cast<double>(stats_.syntax_errors) / execs},
          {"err_semantic", static_cast<double>(stats_.semantic_errors) / execs},
          {"crashes", stats_.crashes},
          {"queue_len", queue_.size()},
          {"reward_mean", reward_mean},
          {"wall_ms", elapsed_ms()}};
}

void Campaign::end_cycle() {
  const auto fresh = compute_idf(weights_, virgin_, {cfg_.log_base});
  update_with_momentum(weights_, fresh, cfg_.alpha);

  if (!cycle_records_.empty()) {
    wire::FinetuneRequest req;
    req.cycle = weights_.cycle;
    req.epochs = cfg_.finetune_epochs;
    for (const auto& r : cycle_records_) req.records.push_back({r.masked_input, r.fill, r.reward});
    try {
      mutator_.finetune(req);
    } catch (const std::exception& e) {
      ++stats_.finetune_failures;
      std::fprintf(stderr, "covrl: finetune skipped: %s\n", e.what());
    }
  }
  mutator_.begin_cycle();
  refresh_energies();
  ++stats_.cycles;
  dataset_.flush();
  last_stats_ = stats_line();
  std::ofstream(out_ / "stats.jsonl", std::ios::app) << last_stats_.dump() << "\n";
  cycle_records_.clear();
  in_cycle_ = 0;
  checkpoint();
}

void Campaign::run_cycle() {
  for (uint64_t i = 0; i < cfg_.iter_cycle; ++i) fuzz_one();
  end_cycle();
}

void Campaign::run(const std::atomic<bool>* stop) {
  const auto start = std::chrono::steady_clock::now();
  const uint64_t budget_end = cfg_.execs ? stats_.iterations + cfg_.execs : UINT64_MAX;
  auto out_of_time = [&] {
    return cfg_.duration_s &&
           std::chrono::steady_clock::now() - start >= std::chrono::seconds(cfg_.duration_s);
  };
  while (true) {
    const bool done = stats_.iterations >= budget_end || (stop && stop->load()) || out_of_time();
    if (done) {
      if (in_cycle_ > 0) end_cycle();
      return;
    }
    fuzz_one();
    if (in_cycle_ >= cfg_.iter_cycle) end_cycle();
  }
}

void Campaign::checkpoint() {
  save_state(out_ / "state.bin", weights_, virgin_);
  nlohmann::json j;
  j["version"] = kResumeVersion;
  std::ostringstream rs;
  rs << rng_;
  j["rng"] = rs.str();
  j["stats"] = stats_.to_json();
  j["next_seed_id"] = next_seed_id_;
  j["dataset_size"] = dataset_size_;
  j["wall_ms"] = elapsed_ms();
  auto valid_edges = nlohmann::json::array();
  for (size_t w = 0; w < valid_.words().size(); ++w) {
    uint64_t bits = valid_.words()[w];
    while (bits) {
      valid_edges.push_back(w * 64 + static_cast<size_t>(__builtin_ctzll(bits)));
      bits &= bits - 1;
    }
  }
  j["valid_edges"] = std::move(valid_edges);
  auto queue = nlohmann::json::array();
  for (const auto& s : queue_) {
    queue.push_back({{"id", s.id},
                     {"file", seed_file_name(s)},
                     {"parent", s.parent ? nlohmann::json(*s.parent) : nlohmann::json(nullptr)},
                     {"cycle", s.discovered_cycle},
                     {"initial", s.initial},
                     {"edges", s.unique_edges}});
  }
  j["queue"] = std::move(queue);
  if (const auto* mock = dynamic_cast<const MockMutator*>(&mutator_)) j["mutator"] = mock->state();
  write_file(out_ / "resume.json", j.dump());
}

void Campaign::restore() {
  auto snap = load_state(out_ / "state.bin");
  if (snap.weights.exponent != cfg_.map_exponent) {
    throw ConfigError("checkpoint map size differs from the configured map size");
  }
  weights_ = std::move(snap.weights);
  virgin_ = std::move(snap.virgin);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(out_ / "resume.json"));
    if (j.at("version") != kResumeVersion) throw ConfigError("unsupported resume.json version");
    std::istringstream rs(j.at("rng").get<std::string>());
    rs >> rng_;
    if (!rs) throw ConfigError("corrupt rng state in resume.json");
    stats_ = Stats::from_json(j.at("stats"));
    next_seed_id_ = j.at("next_seed_id");
    dataset_size_ = j.at("dataset_size");
    wall_base_ms_ = j.at("wall_ms");
    for (const auto& e : j.at("valid_edges")) valid_.mark(e.get<uint32_t>());
    for (const auto& q : j.at("queue")) {
      Seed s;
      s.id = q.at("id");
      s.bytes = read_file(out_ / "queue" / q.at("file").get<std::string>());
      s.tokens = tokenize(s.bytes);
      s.unique_edges = q.at("edges").get<EdgeSet>();
      s.discovered_cycle = q.at("cycle");
      if (!q.at("parent").is_null()) s.parent = q.at("parent").get<uint64_t>();
      s.initial = q.at("initial");
      queue_.push_back(std::move(s));
    }
    if (j.contains("mutator")) {
      if (auto* mock = dynamic_cast<MockMutator*>(&mutator_)) mock->restore(j.at("mutator"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("corrupt resume.json: ") + e.what());
  }
  refresh_energies();
}

ReplayReport replay(const fs::path& dir, Executor& executor) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir.string());
  ReplayReport rep;
  const uint32_t exp = executor.config().map_exponent;
  VirginMap total(exp), valid(exp);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "covrl: warning: skipping unreadable %s\n", f.c_str());
      ++rep.skipped;
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
      std::fprintf(stderr, "covrl: warning: skipping unreadable %s\n", f.c_str());
      ++rep.skipped;
      continue;
    }
    const auto res = executor.execute(ss.str());
    ++rep.files;
    switch (res.outcome.cls()) {
      case OutcomeClass::SyntaxError: ++rep.syntax_errors; break;
      case OutcomeClass::SemanticError: ++rep.semantic_errors; break;
      case OutcomeClass::Pass: ++rep.passes; break;
      case OutcomeClass::Crash: ++rep.crashes; break;
      case OutcomeClass::Timeout: ++rep.timeouts; break;
    }
    accumulate(total, res.coverage);
    if (res.outcome.cls() == OutcomeClass::Pass) accumulate(valid, res.coverage);
  }
  rep.total_edges = total.unique_count();
  rep.valid_edges = valid.unique_count();
  for (uint32_t i = 0; i < total.size(); ++i) {
    if (total.seen(i)) rep.total_set.push_back(i);
    if (valid.seen(i)) rep.valid_set.push_back(i);
  }
  return rep;
}

std::vector<RewardRow> reward_eval(const fs::path& dir, const fs::path& state_file, Executor& executor) {
  const auto snap = load_state(state_file);
  if (snap.weights.exponent != executor.config().map_exponent) {
    throw ConfigError("state file map size differs from the target map size");
  }
  std::vector<RewardRow> rows;
  for (const auto& [name, bytes] : read_corpus_dir(dir)) {
    const auto res = executor.execute(bytes);
    RewardRow row;
    row.case_id = name;
    row.outcome = res.outcome;
    row.breakdown = cwr_breakdown(res.coverage, snap.weights);
    row.reward = dispatch_reward(res.outcome, res.coverage, snap.weights, snap.virgin);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace covrl
