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

#include <algorithm>
#include <cmath>

#include "covrl/error.hpp"
#include "covrl/mutator.hpp"

namespace covrl {
namespace {

constexpr std::string_view kBuiltinTokens[] = {
    // keywords
    "let", "var", "const", "if", "else", "while", "for", "break", "continue", "function",
    "return", "typeof", "new", "class", "this", "true", "false", "null", "undefined", "await",
    "async", "of", "in", "try", "catch", "throw",
    // punctuators
    ";", ",", "(", ")", "[", "]", "{", "}", "=", "+", "-", "*", "/", "%", "<", ">", "<=", ">=",
    "==", "===", "!=", "!==", "&&", "||", "!", ".", "?", ":", "+=", "-=", "++", "--",
    // literals
    "0", "1", "2", "-1", "10", "100", "\"\"", "\"a\"",
};

constexpr double kUnknownTokenLogProb = -27.6;  // ~ln(1e-12)

}  // namespace

std::span<const std::string_view> builtin_js_tokens() { return kBuiltinTokens; }

MockMutator::MockMutator(MockOptions opts, bool builtin_pool) : opts_(opts) {
  if (opts_.min_fill == 0 || opts_.max_fill < opts_.min_fill) {
    throw ConfigError("mock mutator fill length range is empty");
  }
  if (!(opts_.smoothing > 0.0) || !(opts_.min_weight > 0.0) || opts_.max_weight < opts_.min_weight) {
    throw ConfigError("mock mutator weights must be positive");
  }
  if (builtin_pool) {
    for (auto t : kBuiltinTokens) intern(std::string(t));
  }
}

size_t MockMutator::intern(const std::string& tok) {
  auto [it, inserted] = index_.emplace(tok, pool_.size());
  if (inserted) {
    pool_.push_back(tok);
    unigram_.push_back(1.0);
    rows_.emplace_back();
    cols_.emplace_back();
    touch();
  }
  return it->second;
}

size_t MockMutator::lookup(std::string_view tok) const {
  auto it = index_.find(std::string(tok));
  return it == index_.end() ? kNone : it->second;
}

double MockMutator::pair(size_t left, size_t tok) const {
  const Row& r = row(left);
  auto it = r.w.find(static_cast<uint32_t>(tok));
  return it == r.w.end() ? row_default(r) : it->second;
}

void MockMutator::set_pair(size_t left, size_t tok, double w) {
  touch();
  if (left == kNone) {
    start_.w[static_cast<uint32_t>(tok)] = w;
    return;
  }
  rows_[left].w[static_cast<uint32_t>(tok)] = w;
  cols_[tok][static_cast<uint32_t>(left)] = w;
}

void MockMutator::observe_tokens(std::span<const std::string> tokens) {
  size_t prev = kNone;
  for (const auto& t : tokens) {
    if (t.empty() || sentinel_index(t)) {
      prev = kNone;
      continue;
    }
    const size_t idx = intern(t);
    Row& r = prev == kNone ? start_ : rows_[prev];
    if (!r.observed) {
      r.observed = true;
      touch();
    }
    auto it = r.w.find(static_cast<uint32_t>(idx));
    const double w = it == r.w.end() ? 1.0 : std::min(opts_.max_weight, it->second + 1.0);
    set_pair(prev, idx, w);
    prev = idx;
  }
}

void MockMutator::ensure_cache() const {
  if (cache_valid_) return;
  const size_t n = pool_.size();
  double total = 0.0;
  for (double u : unigram_) total += u;
  auto z_of = [&](const Row& r) {
    const double d = row_default(r);
    double z = d * total;
    for (const auto& [m, w] : r.w) z += unigram_[m] * (w - d);
    return z;
  };
  z_.resize(n + 1);
  csr_begin_.assign(1, 0);
  csr_tok_.clear();
  csr_w_.clear();
  for (size_t j = 0; j < n; ++j) {
    z_[j] = z_of(rows_[j]);
    for (const auto& [m, w] : rows_[j].w) {
      csr_tok_.push_back(m);
      csr_w_.push_back(w);
    }
    csr_begin_.push_back(csr_tok_.size());
  }
  z_[n] = z_of(start_);
  next_cache_.clear();
  beta_cache_.clear();
  length_cache_.clear();
  cache_valid_ = true;
}

const std::vector<double>& MockMutator::next_probs(size_t prev) const {
  ensure_cache();
  auto it = next_cache_.find(prev);
  if (it != next_cache_.end()) return it->second;
  const Row& r = row(prev);
  const double d = row_default(r);
  const double z = z_[prev == kNone ? pool_.size() : prev];
  std::vector<double> next(pool_.size());
  for (size_t t = 0; t < pool_.size(); ++t) next[t] = unigram_[t] * d / z;
  for (const auto& [t, w] : r.w) next[t] = unigram_[t] * w / z;
  return next_cache_.emplace(prev, std::move(next)).first->second;
}

const std::vector<std::vector<double>>& MockMutator::betas(size_t right) const {
  ensure_cache();
  auto it = beta_cache_.find(right);
  if (it != beta_cache_.end()) return it->second;
  const size_t n = pool_.size();
  std::vector<std::vector<double>> beta(opts_.max_fill, std::vector<double>(n, 1.0));
  if (right != kNone) {
    auto& b0 = beta[0];
    const double ur = unigram_[right];
    for (size_t j = 0; j < n; ++j) b0[j] = ur * row_default(rows_[j]) / z_[j];
    for (const auto& [j, w] : cols_[right]) b0[j] = ur * w / z_[j];
    std::vector<double> ub(n);
    for (size_t k = 1; k < beta.size(); ++k) {
      const auto& prev = beta[k - 1];
      double s = 0.0;
      for (size_t m = 0; m < n; ++m) {
        ub[m] = unigram_[m] * prev[m];
        s += ub[m];
      }
      for (size_t j = 0; j < n; ++j) {
        const double d = row_default(rows_[j]);
        double acc = d * s;
        for (size_t e = csr_begin_[j]; e < csr_begin_[j + 1]; ++e) {
          acc += (csr_w_[e] - d) * ub[csr_tok_[e]];
        }
        beta[k][j] = acc / z_[j];
      }
    }
  }
  return beta_cache_.emplace(right, std::move(beta)).first->second;
}

const std::vector<double>& MockMutator::length_weights(size_t left, size_t right) const {
  ensure_cache();
  auto it = length_cache_.find({left, right});
  if (it != length_cache_.end()) return it->second;
  const auto& beta = betas(right);
  const auto& next = next_probs(left);
  std::vector<double> out;
  for (size_t len = opts_.min_fill; len <= opts_.max_fill; ++len) {
    double a = 0.0;
    for (size_t t = 0; t < next.size(); ++t) a += next[t] * beta[len - 1][t];
    out.push_back(a);
  }
  return length_cache_.emplace(std::pair{left, right}, std::move(out)).first->second;
}

std::vector<double> MockMutator::distribution(std::string_view left, std::string_view right) const {
  const size_t l = left.empty() ? kNone : lookup(left);
  const size_t r = right.empty() ? kNone : lookup(right);
  const auto& beta = betas(r);
  const auto& lw = length_weights(l, r);
  double lw_total = 0.0;
  for (double a : lw) lw_total += a;
  const auto& next = next_probs(l);
  std::vector<double> out(next.size(), 0.0);
  for (size_t i = 0; i < lw.size(); ++i) {
    if (lw[i] <= 0.0) continue;
    const size_t len = opts_.min_fill + i;
    // P(len) * P(t1 | left) * beta / alpha_len, with P(len) = alpha_len / total
    for (size_t t = 0; t < next.size(); ++t) out[t] += next[t] * beta[len - 1][t] / lw_total;
  }
  return out;
}

double MockMutator::probability(std::string_view left, std::string_view token,
                                std::string_view right) const {
  const size_t idx = lookup(token);
  if (idx == kNone) return 0.0;
  return distribution(left, right)[idx];
}

size_t MockMutator::left_of(std::span<const std::string> masked, size_t pos) const {
  if (pos == 0) return kNone;
  return lookup(masked[pos - 1]);
}

size_t MockMutator::right_of(std::span<const std::string> masked, size_t pos) const {
  if (pos + 1 >= masked.size()) return kNone;
  return lookup(masked[pos + 1]);
}

namespace {

size_t sample_index(std::span<const double> w, Rng& rng) {
  double total = 0.0;
  for (double x : w) total += x;
  double u = uniform_unit(rng) * total;
  for (size_t j = 0; j < w.size(); ++j) {
    if (u < w[j]) return j;
    u -= w[j];
  }
  // Rounding left u just above the last positive weight.
  for (size_t j = w.size(); j-- > 0;) {
    if (w[j] > 0.0) return j;
  }
  return w.size() - 1;
}

}  // namespace

FillResult MockMutator::fill(const MaskedCase& mc, Rng& rng) {
  if (pool_.empty()) throw ConfigError("mock mutator has an empty token pool");
  FillResult out;
  out.fills.resize(mc.slot_count);
  std::vector<double> next;
  for (size_t i = 0; i < mc.masked.size(); ++i) {
    if (mc.masked.kinds[i] != TokenKind::Sentinel) continue;
    const auto slot = sentinel_index(mc.masked.tokens[i]);
    if (!slot || *slot >= mc.slot_count) throw ProtocolError("sentinel out of range");
    size_t prev = left_of(mc.masked.tokens, i);
    const size_t right = right_of(mc.masked.tokens, i);
    const auto& beta = betas(right);
    const size_t len = opts_.min_fill + sample_index(length_weights(prev, right), rng);
    auto& seq = out.fills[*slot];
    for (size_t k = 0; k < len; ++k) {
      next = next_probs(prev);
      const auto& b = beta[len - 1 - k];
      for (size_t t = 0; t < next.size(); ++t) next[t] *= b[t];
      const size_t pick = sample_index(next, rng);
      seq.push_back(pool_[pick]);
      prev = pick;
    }
  }
  return out;
}

double MockMutator::log_probability(std::span<const std::string> masked,
                                    std::span<const std::vector<std::string>> fills) const {
  double lp = 0.0;
  for (size_t i = 0; i < masked.size(); ++i) {
    const auto slot = sentinel_index(masked[i]);
    if (!slot || *slot >= fills.size()) continue;
    size_t prev = left_of(masked, i);
    const size_t right = right_of(masked, i);
    const auto& seq = fills[*slot];
    if (seq.size() < opts_.min_fill || seq.size() > opts_.max_fill) {
      lp += kUnknownTokenLogProb;
      continue;
    }
    const auto& lw = length_weights(prev, right);
    double lw_total = 0.0;
    for (double a : lw) lw_total += a;
    lp -= std::log(lw_total);
    for (const auto& tok : seq) {
      const size_t idx = lookup(tok);
      if (idx == kNone) {
        lp += kUnknownTokenLogProb;
        prev = kNone;
        continue;
      }
      lp += std::log(next_probs(prev)[idx]);
      prev = idx;
    }
    if (right != kNone && prev != kNone) lp += std::log(betas(right)[0][prev]);
  }
  return lp;
}

wire::FinetuneResponse MockMutator::finetune(const wire::FinetuneRequest& req) {
  auto objective = [&] {
    if (req.records.empty()) return 0.0;
    double total = 0.0;
    for (const auto& r : req.records) {
      total -= r.reward * log_probability(r.masked_tokens, r.fill_tokens);
    }
    return total / static_cast<double>(req.records.size());
  };
  wire::FinetuneResponse resp;
  resp.cycle = req.cycle;
  resp.loss_before = objective();
  if (opts_.adaptive && !req.records.empty()) {
    double baseline = 0.0;
    if (opts_.baseline) {
      for (const auto& r : req.records) baseline += r.reward;
      baseline /= static_cast<double>(req.records.size());
    }
    auto step = [&](double w, double s) {
      return std::clamp(w * std::exp(s), opts_.min_weight, opts_.max_weight);
    };
    for (int epoch = 0; epoch < std::max(1, req.epochs); ++epoch) {
      for (const auto& r : req.records) {
        const double adv = r.reward - baseline;
        if (adv == 0.0) continue;
        for (size_t i = 0; i < r.masked_tokens.size(); ++i) {
          const auto slot = sentinel_index(r.masked_tokens[i]);
          if (!slot || *slot >= r.fill_tokens.size()) continue;
          size_t prev = left_of(r.masked_tokens, i);
          for (const auto& tok : r.fill_tokens[*slot]) {
            if (tok.empty() || sentinel_index(tok)) continue;
            const size_t idx = intern(tok);
            unigram_[idx] = step(unigram_[idx], opts_.lr * adv);
            touch();
            if (opts_.context_lr != 0.0) set_pair(prev, idx, step(pair(prev, idx), opts_.context_lr * adv));
            prev = idx;
          }
          const size_t right = right_of(r.masked_tokens, i);
          if (opts_.context_lr != 0.0 && right != kNone && prev != kNone && !r.fill_tokens[*slot].empty()) {
            set_pair(prev, right, step(pair(prev, right), opts_.context_lr * adv));
          }
        }
      }
    }
    // Only relative token weights matter; keep their mean at 1 so a shift
    // shared by every token cannot push them all into the clamp.
    double mean = 0.0;
    for (double w : unigram_) mean += w;
    mean /= static_cast<double>(unigram_.size());
    for (double& w : unigram_) w = std::clamp(w / mean, opts_.min_weight, opts_.max_weight);
    touch();
  }
  resp.loss_after = objective();
  return resp;
}

nlohmann::json MockMutator::state() const {
  auto dump_row = [](const Row& r) {
    std::vector<std::pair<uint32_t, double>> entries(r.w.begin(), r.w.end());
    std::sort(entries.begin(), entries.end());
    nlohmann::json e = nlohmann::json::array();
    for (const auto& [j, w] : entries) e.push_back({j, w});
    return nlohmann::json{{"observed", r.observed}, {"w", std::move(e)}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rows_) rows.push_back(dump_row(r));
  return {{"pool", pool_}, {"unigram", unigram_}, {"start", dump_row(start_)}, {"rows", std::move(rows)}};
}

void MockMutator::restore(const nlohmann::json& j) {
  auto pool = j.at("pool").get<std::vector<std::string>>();
  auto unigram = j.at("unigram").get<std::vector<double>>();
  const auto& rows = j.at("rows");
  if (pool.size() != unigram.size() || rows.size() != pool.size()) {
    throw ConfigError("mock state: table sizes disagree");
  }
  pool_.clear();
  index_.clear();
  unigram_.clear();
  rows_.clear();
  cols_.clear();
  start_ = Row{};
  for (const auto& t : pool) intern(t);
  if (pool_.size() != pool.size()) throw ConfigError("mock state: duplicate pool tokens");
  unigram_ = std::move(unigram);
  touch();
  auto load_row = [&](const nlohmann::json& r, size_t left) {
    Row& dst = left == kNone ? start_ : rows_[left];
    dst.observed = r.at("observed");
    for (const auto& e : r.at("w")) {
      const size_t tok = e.at(0).get<size_t>();
      if (tok >= pool_.size()) throw ConfigError("mock state: token index out of range");
      set_pair(left, tok, e.at(1).get<double>());
    }
  };
  load_row(j.at("start"), kNone);
  for (size_t i = 0; i < rows.size(); ++i) load_row(rows[i], i);
}

}  // namespace covrl
