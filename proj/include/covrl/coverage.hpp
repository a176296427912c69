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

// Edge coverage bookkeeping: per-execution hit-count bitmaps, the global
// "virgin" accumulator, and the inverse-document-frequency weight map that
// turns coverage into a reward signal.
//
// Terminology follows information retrieval: every retained seed is a
// "document" and every edge it covers is a "term". An edge's document
// frequency is the number of retained seeds that reached it; the fewer seeds
// reach an edge, the larger its weight.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace covrl {

using EdgeSet = std::vector<uint32_t>;  // ascending, duplicate-free

inline constexpr uint32_t kMinMapExponent = 8;
inline constexpr uint32_t kMaxMapExponent = 24;
inline constexpr uint32_t kDefaultMapExponent = 16;

// Throws ConfigError if the exponent is outside [8, 24].
void check_map_exponent(uint32_t exponent);

// One execution's AFL-style bitmap: M = 2^exponent saturating u8 counters.
class CoverageMap {
 public:
  explicit CoverageMap(uint32_t exponent = kDefaultMapExponent);

  uint32_t exponent() const { return exponent_; }
  size_t size() const { return counters_.size(); }

  std::span<uint8_t> counters() { return counters_; }
  std::span<const uint8_t> counters() const { return counters_; }

  // Saturating increment, for tests and in-process producers.
  void hit(uint32_t edge);
  void clear();

  friend bool operator==(const CoverageMap&, const CoverageMap&) = default;

 private:
  uint32_t exponent_;
  std::vector<uint8_t> counters_;
};

// Every edge ever covered by a retained execution.
class VirginMap {
 public:
  explicit VirginMap(uint32_t exponent = kDefaultMapExponent);

  uint32_t exponent() const { return exponent_; }
  size_t size() const { return size_t{1} << exponent_; }
  uint64_t unique_count() const { return unique_count_; }

  bool seen(uint32_t edge) const { return words_[edge / 64] >> (edge % 64) & 1u; }
  std::span<const uint64_t> words() const { return words_; }

  // Edges of `cov` not yet seen, without modifying the map.
  EdgeSet peek_new(const CoverageMap& cov) const;

  // Marks a single edge; returns true if it was new.
  bool mark(uint32_t edge);

  friend bool operator==(const VirginMap&, const VirginMap&) = default;

 private:
  uint32_t exponent_;
  std::vector<uint64_t> words_;
  uint64_t unique_count_ = 0;
};

struct WeightMap {
  explicit WeightMap(uint32_t exponent = kDefaultMapExponent);

  uint32_t exponent;
  std::vector<uint32_t> df;   // retained seeds covering each edge
  std::vector<double> idf;    // weights in effect (previous-cycle map)
  uint64_t cycle = 0;

  size_t size() const { return df.size(); }

  friend bool operator==(const WeightMap&, const WeightMap&) = default;
};

// Nonzero projection of the hit counts. Repeats collapse to one entry.
EdgeSet unique_coverage(const CoverageMap& cov);

// Merges `cov` into `virgin` and returns the edges that were newly set.
// Throws ConfigError on a map-size mismatch.
EdgeSet accumulate(VirginMap& virgin, const CoverageMap& cov);

struct IdfOptions {
  // Logarithm base; e by default. Other bases only rescale the weights.
  double log_base = 0.0;  // 0 means natural log
};

// Current-cycle candidate weights (1/sqrt(M)) * log(N / (1 + df[i])).
// Does not touch weights.idf. Throws std::logic_error when N == 0: the reward
// subsystem has nothing to weigh until the first retained execution.
std::vector<double> compute_idf(const WeightMap& weights, const VirginMap& virgin,
                                IdfOptions opts = {});

// idf := alpha * idf + (1 - alpha) * fresh; cycle += 1.
// Throws ConfigError unless 0 <= alpha <= 1.
void update_with_momentum(WeightMap& weights, std::span<const double> fresh,
                          double alpha);

// One call per retained seed: df[i] += 1 for every covered edge.
void register_seed_coverage(WeightMap& weights, std::span<const uint32_t> edges);

}  // namespace covrl
