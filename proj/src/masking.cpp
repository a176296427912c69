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

#include "covrl/masking.hpp"

#include <algorithm>

#include "covrl/error.hpp"

namespace covrl {
namespace {

std::vector<size_t> sorted_unique(std::span<const size_t> positions) {
  std::vector<size_t> p(positions.begin(), positions.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

void push_sentinel(MaskedCase& mc) {
  mc.masked.push(sentinel(mc.slot_count++), TokenKind::Sentinel);
}

void copy_range(const TokenStream& from, size_t lo, size_t hi, TokenStream& to) {
  for (size_t i = lo; i < hi; ++i) to.push(from.tokens[i], from.kinds[i]);
}

}  // namespace

std::string_view to_string(MaskStrategy s) {
  switch (s) {
    case MaskStrategy::Insert: return "insert";
    case MaskStrategy::Overwrite: return "overwrite";
    case MaskStrategy::Splice: return "splice";
  }
  return "insert";
}

MaskedCase mask_insert(const TokenStream& ts, std::span<const size_t> positions) {
  MaskedCase mc;
  mc.strategy = MaskStrategy::Insert;
  const auto pos = sorted_unique(positions);
  size_t next = 0;
  for (size_t i = 0; i <= ts.size(); ++i) {
    if (next < pos.size() && pos[next] == i) {
      push_sentinel(mc);
      ++next;
    }
    if (i < ts.size()) mc.masked.push(ts.tokens[i], ts.kinds[i]);
  }
  return mc;
}

MaskedCase mask_overwrite(const TokenStream& ts, std::span<const size_t> positions) {
  MaskedCase mc;
  mc.strategy = MaskStrategy::Overwrite;
  std::vector<bool> selected(ts.size(), false);
  for (size_t p : positions) {
    if (p < ts.size()) selected[p] = true;
  }
  for (size_t i = 0; i < ts.size(); ++i) {
    if (!selected[i]) {
      mc.masked.push(ts.tokens[i], ts.kinds[i]);
    } else if (i == 0 || !selected[i - 1]) {
      push_sentinel(mc);
    }
  }
  return mc;
}

std::vector<size_t> statement_starts(const TokenStream& ts) {
  std::vector<size_t> starts;
  if (ts.empty()) return starts;
  starts.push_back(0);
  int braces = 0;
  int parens = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts.kinds[i] != TokenKind::Punctuator) continue;
    const std::string& t = ts.tokens[i];
    bool boundary = false;
    if (t == "{") {
      ++braces;
    } else if (t == "}") {
      braces = std::max(0, braces - 1);
      boundary = braces == 0 && parens == 0;
    } else if (t == "(") {
      ++parens;
    } else if (t == ")") {
      parens = std::max(0, parens - 1);
    } else if (t == ";") {
      boundary = braces == 0 && parens == 0;
    }
    if (boundary && i + 1 < ts.size()) starts.push_back(i + 1);
  }
  return starts;
}

MaskedCase mask_splice(const TokenStream& target, const TokenStream& donor, Rng& rng) {
  const auto t_starts = statement_starts(target);
  if (t_starts.size() < 2 || donor.empty()) {
    if (target.empty()) return mask_insert(target, std::vector<size_t>{0});
    const size_t lo = uniform_below(rng, target.size());
    const size_t len = 1 + uniform_below(rng, std::min<size_t>(3, target.size() - lo));
    std::vector<size_t> run(len);
    for (size_t k = 0; k < len; ++k) run[k] = lo + k;
    return mask_overwrite(target, run);
  }
  const size_t seg = uniform_below(rng, t_starts.size());
  const size_t seg_lo = t_starts[seg];
  const size_t seg_hi = seg + 1 < t_starts.size() ? t_starts[seg + 1] : target.size();

  const auto d_starts = statement_starts(donor);
  const size_t first = uniform_below(rng, d_starts.size());
  const size_t run = 1 + uniform_below(rng, std::min<size_t>(2, d_starts.size() - first));
  const size_t d_lo = d_starts[first];
  const size_t d_hi = first + run < d_starts.size() ? d_starts[first + run] : donor.size();

  MaskedCase mc;
  mc.strategy = MaskStrategy::Splice;
  copy_range(target, 0, seg_lo, mc.masked);
  push_sentinel(mc);
  copy_range(donor, d_lo, d_hi, mc.masked);
  push_sentinel(mc);
  copy_range(target, seg_hi, target.size(), mc.masked);
  return mc;
}

std::vector<size_t> draw_positions(size_t universe, const MaskBudget& budget, Rng& rng) {
  std::vector<size_t> picked;
  if (universe == 0 || budget.max_slots == 0) return picked;
  for (size_t i = 0; i < universe; ++i) {
    if (bernoulli(rng, budget.fraction)) picked.push_back(i);
  }
  if (picked.empty()) picked.push_back(uniform_below(rng, universe));
  // Keep a uniformly random subset when over budget (partial Fisher-Yates).
  if (picked.size() > budget.max_slots) {
    for (size_t i = 0; i < budget.max_slots; ++i) {
      std::swap(picked[i], picked[i + uniform_below(rng, picked.size() - i)]);
    }
    picked.resize(budget.max_slots);
    std::sort(picked.begin(), picked.end());
  }
  return picked;
}

MaskStrategy draw_strategy(const StrategyMix& mix, Rng& rng) {
  const double total = mix.insert + mix.overwrite + mix.splice;
  const double u = uniform_unit(rng) * total;
  if (u < mix.insert) return MaskStrategy::Insert;
  if (u < mix.insert + mix.overwrite) return MaskStrategy::Overwrite;
  return MaskStrategy::Splice;
}

std::vector<std::string> splice_fills(const MaskedCase& mc, const FillResult& fill) {
  if (fill.fills.size() != mc.slot_count) {
    throw ProtocolError("expected " + std::to_string(mc.slot_count) + " fills, got " +
                        std::to_string(fill.fills.size()));
  }
  std::vector<std::string> out;
  out.reserve(mc.masked.size() + 4 * mc.slot_count);
  for (size_t i = 0; i < mc.masked.size(); ++i) {
    if (mc.masked.kinds[i] != TokenKind::Sentinel) {
      out.push_back(mc.masked.tokens[i]);
      continue;
    }
    const auto slot = sentinel_index(mc.masked.tokens[i]);
    if (!slot || *slot >= fill.fills.size()) throw ProtocolError("bad sentinel in masked case");
    for (const auto& tok : fill.fills[*slot]) {
      if (!sentinel_index(tok)) out.push_back(tok);
    }
  }
  return out;
}

}  // namespace covrl
