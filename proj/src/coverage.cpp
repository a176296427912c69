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

#include "covrl/coverage.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "covrl/error.hpp"
#include "covrl/kernels.hpp"

namespace covrl {
namespace {

// Below this size the fork/join overhead dominates. The parallel scans also
// skip zero words, so they win on a single thread too.
constexpr size_t kParallelThreshold = size_t{1} << 12;

bool use_parallel(size_t n) { return n >= kParallelThreshold; }

}  // namespace

void check_map_exponent(uint32_t exponent) {
  if (exponent < kMinMapExponent || exponent > kMaxMapExponent) {
    throw ConfigError("map exponent " + std::to_string(exponent) +
                      " outside [8, 24]");
  }
}

CoverageMap::CoverageMap(uint32_t exponent) : exponent_(exponent) {
  check_map_exponent(exponent);
  counters_.assign(size_t{1} << exponent, 0);
}

void CoverageMap::hit(uint32_t edge) {
  uint8_t& c = counters_.at(edge);
  if (c != 0xff) ++c;
}

void CoverageMap::clear() { std::fill(counters_.begin(), counters_.end(), 0); }

VirginMap::VirginMap(uint32_t exponent) : exponent_(exponent) {
  check_map_exponent(exponent);
  words_.assign((size_t{1} << exponent) / 64, 0);
}

EdgeSet VirginMap::peek_new(const CoverageMap& cov) const {
  if (cov.size() != size()) {
    throw ConfigError("coverage map has " + std::to_string(cov.size()) +
                      " entries, virgin map " + std::to_string(size()));
  }
  return use_parallel(cov.size()) ? kernels::parallel::new_bits(words_, cov.counters())
                                  : kernels::serial::new_bits(words_, cov.counters());
}

bool VirginMap::mark(uint32_t edge) {
  uint64_t& w = words_.at(edge / 64);
  const uint64_t bit = uint64_t{1} << (edge % 64);
  if (w & bit) return false;
  w |= bit;
  ++unique_count_;
  return true;
}

WeightMap::WeightMap(uint32_t exp) : exponent(exp) {
  check_map_exponent(exp);
  df.assign(size_t{1} << exp, 0);
  idf.assign(size_t{1} << exp, 0.0);
}

EdgeSet unique_coverage(const CoverageMap& cov) {
  return use_parallel(cov.size()) ? kernels::parallel::nonzero_indices(cov.counters())
                                  : kernels::serial::nonzero_indices(cov.counters());
}

EdgeSet accumulate(VirginMap& virgin, const CoverageMap& cov) {
  EdgeSet fresh = virgin.peek_new(cov);
  for (uint32_t e : fresh) virgin.mark(e);
  return fresh;
}

std::vector<double> compute_idf(const WeightMap& weights, const VirginMap& virgin,
                                IdfOptions opts) {
  if (weights.size() != virgin.size()) {
    throw ConfigError("weight map and virgin map sizes differ");
  }
  if (virgin.unique_count() == 0) {
    throw std::logic_error("compute_idf: no coverage accumulated yet (N = 0)");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(weights.size()));
  const double divisor = opts.log_base > 0.0 ? std::log(opts.log_base) : 1.0;
  if (!(divisor > 0.0)) throw ConfigError("log base must be > 1");
  std::vector<double> out(weights.size());
  if (use_parallel(out.size())) {
    kernels::parallel::idf_candidates(weights.df, virgin.unique_count(), scale, divisor, out);
  } else {
    kernels::serial::idf_candidates(weights.df, virgin.unique_count(), scale, divisor, out);
  }
  return out;
}

void update_with_momentum(WeightMap& weights, std::span<const double> fresh,
                          double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("momentum alpha must lie in [0, 1]");
  }
  if (fresh.size() != weights.idf.size()) {
    throw ConfigError("fresh weight vector has the wrong length");
  }
  if (use_parallel(fresh.size())) {
    kernels::parallel::momentum_blend(weights.idf, fresh, alpha);
  } else {
    kernels::serial::momentum_blend(weights.idf, fresh, alpha);
  }
  ++weights.cycle;
}

void register_seed_coverage(WeightMap& weights, std::span<const uint32_t> edges) {
  for (uint32_t e : edges) {
    if (e >= weights.df.size()) throw std::out_of_range("edge index beyond map");
  }
  for (uint32_t e : edges) ++weights.df[e];
}

}  // namespace covrl
