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

// Data-parallel loops over coverage-sized arrays.
//
// Every kernel exists twice: `serial` is the straightforward reference used by
// the tests as ground truth, `parallel` is the OpenMP version used on the hot
// path. Both produce bit-identical results for every input; index-producing
// kernels keep ascending order.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace covrl::kernels {

namespace serial {

// Indices i with counters[i] != 0, ascending.
std::vector<uint32_t> nonzero_indices(std::span<const uint8_t> counters);

// Indices with a nonzero counter whose bit in `seen` is clear.
std::vector<uint32_t> new_bits(std::span<const uint64_t> seen,
                               std::span<const uint8_t> counters);

uint64_t popcount(std::span<const uint64_t> words);

// out[i] = scale * ln(n / (1 + df[i])) / log_divisor
void idf_candidates(std::span<const uint32_t> df, uint64_t n, double scale,
                    double log_divisor, std::span<double> out);

// current[i] = alpha * current[i] + (1 - alpha) * fresh[i]
void momentum_blend(std::span<double> current, std::span<const double> fresh,
                    double alpha);

// Left-to-right sum of weights[i] over the given indices.
double weighted_sum(std::span<const uint32_t> indices,
                    std::span<const double> weights);

}  // namespace serial

namespace parallel {

std::vector<uint32_t> nonzero_indices(std::span<const uint8_t> counters);
std::vector<uint32_t> new_bits(std::span<const uint64_t> seen,
                               std::span<const uint8_t> counters);
uint64_t popcount(std::span<const uint64_t> words);
void idf_candidates(std::span<const uint32_t> df, uint64_t n, double scale,
                    double log_divisor, std::span<double> out);
void momentum_blend(std::span<double> current, std::span<const double> fresh,
                    double alpha);

}  // namespace parallel

// Thread count the parallel kernels will use (1 when OpenMP is off).
int max_threads();

}  // namespace covrl::kernels
