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
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "covrl/kernels.hpp"

namespace covrl::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {
namespace {

// Fixed chunking keeps the concatenation order independent of thread count.
constexpr size_t kChunk = 4096;

template <typename Scan>
std::vector<uint32_t> chunked_collect(size_t n, Scan scan) {
  const size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<uint32_t>> parts(chunks);
#pragma omp parallel for schedule(static)
  for (size_t c = 0; c < chunks; ++c) {
    const size_t lo = c * kChunk;
    const size_t hi = std::min(n, lo + kChunk);
    scan(lo, hi, parts[c]);
  }
  size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<uint32_t> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline uint64_t load_word(const uint8_t* p) {
  uint64_t w;
  std::memcpy(&w, p, sizeof w);
  return w;
}

}  // namespace

std::vector<uint32_t> nonzero_indices(std::span<const uint8_t> counters) {
  const uint8_t* base = counters.data();
  return chunked_collect(counters.size(), [base](size_t lo, size_t hi,
                                                 std::vector<uint32_t>& out) {
    size_t i = lo;
    for (; i + 8 <= hi; i += 8) {
      if (load_word(base + i) == 0) continue;
      for (size_t j = i; j < i + 8; ++j) {
        if (base[j]) out.push_back(static_cast<uint32_t>(j));
      }
    }
    for (; i < hi; ++i) {
      if (base[i]) out.push_back(static_cast<uint32_t>(i));
    }
  });
}

std::vector<uint32_t> new_bits(std::span<const uint64_t> seen,
                               std::span<const uint8_t> counters) {
  const uint8_t* base = counters.data();
  const uint64_t* bits = seen.data();
  return chunked_collect(counters.size(), [base, bits](size_t lo, size_t hi,
                                                       std::vector<uint32_t>& out) {
    size_t i = lo;
    for (; i + 8 <= hi; i += 8) {
      if (load_word(base + i) == 0) continue;
      for (size_t j = i; j < i + 8; ++j) {
        if (base[j] && !(bits[j / 64] >> (j % 64) & 1u)) {
          out.push_back(static_cast<uint32_t>(j));
        }
      }
    }
    for (; i < hi; ++i) {
      if (base[i] && !(bits[i / 64] >> (i % 64) & 1u)) {
        out.push_back(static_cast<uint32_t>(i));
      }
    }
  });
}

uint64_t popcount(std::span<const uint64_t> words) {
  uint64_t total = 0;
  const uint64_t* w = words.data();
  const long long n = static_cast<long long>(words.size());
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (long long i = 0; i < n; ++i) {
    total += static_cast<uint64_t>(std::popcount(w[i]));
  }
  return total;
}

void idf_candidates(std::span<const uint32_t> df, uint64_t n, double scale,
                    double log_divisor, std::span<double> out) {
  const double nd = static_cast<double>(n);
  const uint32_t* d = df.data();
  double* o = out.data();
  const long long m = static_cast<long long>(df.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) {
    const double ratio = nd / (1.0 + static_cast<double>(d[i]));
    o[i] = scale * (std::log(ratio) / log_divisor);
  }
}

void momentum_blend(std::span<double> current, std::span<const double> fresh,
                    double alpha) {
  const double beta = 1.0 - alpha;
  double* c = current.data();
  const double* f = fresh.data();
  const long long m = static_cast<long long>(current.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) {
    const double lo = std::min(c[i], f[i]);
    const double hi = std::max(c[i], f[i]);
    c[i] = std::clamp(alpha * c[i] + beta * f[i], lo, hi);
  }
}

}  // namespace parallel
}  // namespace covrl::kernels
