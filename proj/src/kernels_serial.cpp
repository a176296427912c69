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
#include <bit>
#include <cmath>

#include "covrl/kernels.hpp"

namespace covrl::kernels::serial {

std::vector<uint32_t> nonzero_indices(std::span<const uint8_t> counters) {
  std::vector<uint32_t> out;
  for (size_t i = 0; i < counters.size(); ++i) {
    if (counters[i] != 0) out.push_back(static_cast<uint32_t>(i));
  }
  return out;
}

std::vector<uint32_t> new_bits(std::span<const uint64_t> seen,
                               std::span<const uint8_t> counters) {
  std::vector<uint32_t> out;
  for (size_t i = 0; i < counters.size(); ++i) {
    if (counters[i] == 0) continue;
    if ((seen[i / 64] >> (i % 64) & 1u) == 0) out.push_back(static_cast<uint32_t>(i));
  }
  return out;
}

uint64_t popcount(std::span<const uint64_t> words) {
  uint64_t total = 0;
  for (uint64_t w : words) total += static_cast<uint64_t>(std::popcount(w));
  return total;
}

void idf_candidates(std::span<const uint32_t> df, uint64_t n, double scale,
                    double log_divisor, std::span<double> out) {
  const double nd = static_cast<double>(n);
  for (size_t i = 0; i < df.size(); ++i) {
    const double ratio = nd / (1.0 + static_cast<double>(df[i]));
    out[i] = scale * (std::log(ratio) / log_divisor);
  }
}

void momentum_blend(std::span<double> current, std::span<const double> fresh,
                    double alpha) {
  const double beta = 1.0 - alpha;
  for (size_t i = 0; i < current.size(); ++i) {
    const double lo = std::min(current[i], fresh[i]);
    const double hi = std::max(current[i], fresh[i]);
    // Rounding can land one ulp outside the hull; the exact value never does.
    current[i] = std::clamp(alpha * current[i] + beta * fresh[i], lo, hi);
  }
}

double weighted_sum(std::span<const uint32_t> indices,
                    std::span<const double> weights) {
  double s = 0.0;
  for (uint32_t i : indices) s += weights[i];
  return s;
}

}  // namespace covrl::kernels::serial
