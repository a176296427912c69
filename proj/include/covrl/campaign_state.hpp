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

// Binary checkpoint of the weight and virgin maps.
//
//   offset  size  field
//   0       4     magic "CVRL"
//   4       4     format version (u32 LE, currently 1)
//   8       4     map exponent (u32 LE)
//   12      8     cycle (u64 LE)
//   20      8     N, unique edge count (u64 LE)
//   28      4*M   df (u32 LE each)
//   28+4M   8*M   idf (IEEE-754 binary64 LE each)
//
// The virgin bitset is not stored: it is rebuilt as {i : df[i] > 0}, which
// holds for any campaign where every accumulated edge belongs to a retained
// seed. Loading verifies that the rebuilt popcount equals the stored N.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "covrl/coverage.hpp"

namespace covrl {

inline constexpr uint32_t kStateFormatVersion = 1;

struct CampaignSnapshot {
  WeightMap weights;
  VirginMap virgin;
};

std::string encode_state(const WeightMap& weights, const VirginMap& virgin);

// Throws ConfigError on bad magic, version, size, or an N/df mismatch.
CampaignSnapshot decode_state(std::string_view bytes);

// Writes via a temporary file and rename.
void save_state(const std::filesystem::path& path, const WeightMap& weights,
                const VirginMap& virgin);
CampaignSnapshot load_state(const std::filesystem::path& path);

}  // namespace covrl
