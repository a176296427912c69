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

// Mask mutation: turn a seed's token stream into a sequence with numbered
// sentinel slots for an infilling model to complete.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covrl/rng.hpp"
#include "covrl/tokens.hpp"

namespace covrl {

enum class MaskStrategy { Insert, Overwrite, Splice };
std::string_view to_string(MaskStrategy s);

struct MaskedCase {
  TokenStream masked;
  size_t slot_count = 0;
  MaskStrategy strategy = MaskStrategy::Insert;
  uint64_t seed_id = 0;
  std::optional<uint64_t> donor_id;  // Splice only
};

// One token sub-sequence per sentinel, in slot order.
struct FillResult {
  std::vector<std::vector<std::string>> fills;
};

// Puts a sentinel before each selected position (positions may equal the
// stream length, meaning "append").
MaskedCase mask_insert(const TokenStream& ts, std::span<const size_t> positions);

// Replaces each maximal run of selected positions with one sentinel.
MaskedCase mask_overwrite(const TokenStream& ts, std::span<const size_t> positions);

// Replaces one top-level statement segment of `target` with
// <sentinel> donor-statements <sentinel>. Falls back to an overwrite of a
// random run when the target has fewer than two segments.
MaskedCase mask_splice(const TokenStream& target, const TokenStream& donor, Rng& rng);

// Start offsets of top-level statements: a statement ends after ';' or '}'
// at brace depth 0 (and outside parentheses). Always begins with 0 for a
// non-empty stream.
std::vector<size_t> statement_starts(const TokenStream& ts);

struct MaskBudget {
  double fraction = 0.15;  // expected share of selected positions
  size_t max_slots = 8;
};

// Each position in [0, universe) is selected with probability
// `fraction`; at least one and at most `max_slots` are kept.
std::vector<size_t> draw_positions(size_t universe, const MaskBudget& budget, Rng& rng);

struct StrategyMix {
  double insert = 1.0;
  double overwrite = 1.0;
  double splice = 1.0;
};

MaskStrategy draw_strategy(const StrategyMix& mix, Rng& rng);

// Tokens of the completed case W*: sentinels replaced by their fills.
// Throws ProtocolError when the fill count differs from the slot count.
// Sentinel-looking tokens inside fills are dropped.
std::vector<std::string> splice_fills(const MaskedCase& mc, const FillResult& fill);

}  // namespace covrl
