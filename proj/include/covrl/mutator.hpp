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

// Infilling mutators.
//
// The framework talks to a mutator through `Mutator`. `RemoteMutator` speaks
// the framed wire protocol to an external model service; `MockMutator` is a
// hermetic stand-in that samples fills from a token pool and, when adaptive,
// shifts its sampling weights with the rewards delivered by finetune calls.

#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "covrl/masking.hpp"
#include "covrl/net.hpp"
#include "covrl/rng.hpp"
#include "covrl/wire.hpp"

namespace covrl {

class Mutator {
 public:
  virtual ~Mutator() = default;

  // Throws ProtocolError if the reply violates the protocol.
  virtual FillResult fill(const MaskedCase& mc, Rng& rng) = 0;
  virtual wire::FinetuneResponse finetune(const wire::FinetuneRequest& req) = 0;

  // Tokens of one corpus seed, in order, offered as sampling material.
  virtual void observe_tokens(std::span<const std::string> /*tokens*/) {}
  virtual void begin_cycle() {}
  virtual std::string model_id() const = 0;
};

struct MockOptions {
  bool adaptive = true;
  double lr = 0.5;          // token step: weight *= exp(lr * advantage)
  double context_lr = 0.5;  // same for (previous token, token) pairs
  bool baseline = true;     // advantage = reward - batch mean (else the raw reward)
  double smoothing = 0.05;  // pair weight of unseen continuations of an observed token
  double min_weight = 1e-2;
  double max_weight = 1e2;
  size_t min_fill = 1;
  size_t max_fill = 4;
};

// A bigram infilling model. The probability of token t after token p is
// proportional to unigram(t) * pair(p, t). A slot between tokens l and r is
// filled with a chain t1..tL drawn from the model conditioned on both ends:
// P(t1..tL | l, r) is proportional to P(t1|l) P(t2|t1) ... P(tL|tL-1) P(r|tL),
// with L in [min_fill, max_fill] and a uniform prior over L.
//
// observe_tokens() seeds pair weights with corpus bigram counts; finetune()
// multiplies the weights on each record's path by exp(step * advantage)
// when adaptive.
class MockMutator final : public Mutator {
 public:
  explicit MockMutator(MockOptions opts = {}, bool builtin_pool = true);

  FillResult fill(const MaskedCase& mc, Rng& rng) override;
  wire::FinetuneResponse finetune(const wire::FinetuneRequest& req) override;
  void observe_tokens(std::span<const std::string> tokens) override;
  std::string model_id() const override { return "mock-bigram/2"; }

  const std::vector<std::string>& pool() const { return pool_; }
  const MockOptions& options() const { return opts_; }

  // Distribution of the first fill token of a slot after `left` and before
  // `right`; "" stands for the start or the end of the input.
  std::vector<double> distribution(std::string_view left, std::string_view right = {}) const;
  double probability(std::string_view left, std::string_view token, std::string_view right = {}) const;

  // Log-probability of the fills given the masked context, under the model
  // the sampler uses.
  double log_probability(std::span<const std::string> masked_tokens,
                         std::span<const std::vector<std::string>> fills) const;

  // Serializable state for checkpoints.
  nlohmann::json state() const;
  void restore(const nlohmann::json& j);

 private:
  static constexpr size_t kNone = SIZE_MAX;

  struct Row {
    bool observed = false;
    std::map<uint32_t, double> w;
  };

  size_t intern(const std::string& tok);
  size_t lookup(std::string_view tok) const;
  const Row& row(size_t left) const { return left == kNone ? start_ : rows_[left]; }
  double row_default(const Row& r) const { return r.observed ? opts_.smoothing : 1.0; }
  double pair(size_t left, size_t tok) const;
  void set_pair(size_t left, size_t tok, double w);
  void touch() { cache_valid_ = false; }

  void ensure_cache() const;
  // P(t | prev) for every pool token t.
  const std::vector<double>& next_probs(size_t prev) const;
  // beta[k][t]: probability that k more tokens and then `right` follow t.
  const std::vector<std::vector<double>>& betas(size_t right) const;
  // Unnormalized posterior over fill lengths min_fill..max_fill.
  const std::vector<double>& length_weights(size_t left, size_t right) const;

  size_t left_of(std::span<const std::string> masked, size_t sentinel_pos) const;
  size_t right_of(std::span<const std::string> masked, size_t sentinel_pos) const;

  MockOptions opts_;
  std::vector<std::string> pool_;
  std::unordered_map<std::string, size_t> index_;
  std::vector<double> unigram_;
  std::vector<Row> rows_;  // by previous token
  Row start_;              // previous token is the start of the input
  // right token -> (previous token -> weight), mirrors rows_
  std::vector<std::map<uint32_t, double>> cols_;

  // Derived from the tables above; rebuilt after any change.
  mutable bool cache_valid_ = false;
  mutable std::vector<double> z_;  // row normalizers
  mutable std::vector<size_t> csr_begin_;
  mutable std::vector<uint32_t> csr_tok_;
  mutable std::vector<double> csr_w_;
  mutable std::unordered_map<size_t, std::vector<double>> next_cache_;
  mutable std::unordered_map<size_t, std::vector<std::vector<double>>> beta_cache_;
  mutable std::map<std::pair<size_t, size_t>, std::vector<double>> length_cache_;
};

// Built-in JavaScript keywords, punctuators and a few literals.
std::span<const std::string_view> builtin_js_tokens();

struct RemoteStats {
  uint64_t reconnects = 0;
  uint64_t fallback_fills = 0;
};

class RemoteMutator final : public Mutator {
 public:
  RemoteMutator(net::Endpoint ep, wire::DecodeOptions decode, std::unique_ptr<Mutator> fallback,
                int timeout_ms = 30000);

  FillResult fill(const MaskedCase& mc, Rng& rng) override;
  wire::FinetuneResponse finetune(const wire::FinetuneRequest& req) override;
  void observe_tokens(std::span<const std::string> tokens) override;
  void begin_cycle() override { fallback_active_ = false; }
  std::string model_id() const override;

  // Round-trips a ping; returns the model id reported by the service.
  std::string ping();

  bool fallback_active() const { return fallback_active_; }
  const RemoteStats& stats() const { return stats_; }

 private:
  std::string round_trip(const std::string& payload);
  void ensure_connected();

  net::Endpoint ep_;
  wire::DecodeOptions decode_;
  std::unique_ptr<Mutator> fallback_;
  int timeout_ms_;
  net::Fd sock_;
  wire::FrameDecoder decoder_;
  uint64_t next_id_ = 1;
  bool fallback_active_ = false;
  std::string model_;
  RemoteStats stats_;
};

// Answers one request payload with the given mutator. Malformed input yields
// an error payload rather than an exception.
std::string handle_request(Mutator& mutator, Rng& rng, std::string_view payload);

// Serves connections one at a time until `stop` is set or `max_connections`
// have been handled (0 = unlimited).
void serve_mutator(const net::Fd& listener, Mutator& mutator, Rng& rng,
                   const std::atomic<bool>& stop, size_t max_connections = 0);

}  // namespace covrl
