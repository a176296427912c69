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

#include "covrl/campaign_state.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "covrl/error.hpp"

namespace covrl {
namespace {

constexpr char kMagic[4] = {'C', 'V', 'R', 'L'};
constexpr size_t kHeaderSize = 28;

template <typename T>
void put_le(std::string& out, T v) {
  using U = std::make_unsigned_t<T>;
  U u = static_cast<U>(v);
  for (size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(u & 0xff));
    u = static_cast<U>(u >> 8);
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T v = 0;
  for (size_t i = sizeof(T); i-- > 0;) v = static_cast<T>((v << 8) | p[i]);
  return v;
}

}  // namespace

std::string encode_state(const WeightMap& weights, const VirginMap& virgin) {
  if (weights.exponent != virgin.exponent()) {
    throw ConfigError("weight map and virgin map sizes differ");
  }
  const size_t m = weights.size();
  std::string out;
  out.reserve(kHeaderSize + 12 * m);
  out.append(kMagic, 4);
  put_le<uint32_t>(out, kStateFormatVersion);
  put_le<uint32_t>(out, weights.exponent);
  put_le<uint64_t>(out, weights.cycle);
  put_le<uint64_t>(out, virgin.unique_count());
  for (uint32_t d : weights.df) put_le<uint32_t>(out, d);
  for (double x : weights.idf) put_le<uint64_t>(out, std::bit_cast<uint64_t>(x));
  return out;
}

CampaignSnapshot decode_state(std::string_view bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ConfigError("campaign state: bad magic");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const auto version = get_le<uint32_t>(p + 4);
  if (version != kStateFormatVersion) {
    throw ConfigError("campaign state: unsupported version " + std::to_string(version));
  }
  const auto exponent = get_le<uint32_t>(p + 8);
  check_map_exponent(exponent);
  const size_t m = size_t{1} << exponent;
  if (bytes.size() != kHeaderSize + 12 * m) {
    throw ConfigError("campaign state: truncated or oversized payload");
  }
  CampaignSnapshot snap{WeightMap(exponent), VirginMap(exponent)};
  snap.weights.cycle = get_le<uint64_t>(p + 12);
  const auto n = get_le<uint64_t>(p + 20);
  const unsigned char* q = p + kHeaderSize;
  for (size_t i = 0; i < m; ++i, q += 4) snap.weights.df[i] = get_le<uint32_t>(q);
  for (size_t i = 0; i < m; ++i, q += 8) {
    snap.weights.idf[i] = std::bit_cast<double>(get_le<uint64_t>(q));
  }
  for (size_t i = 0; i < m; ++i) {
    if (snap.weights.df[i] > 0) snap.virgin.mark(static_cast<uint32_t>(i));
  }
  if (snap.virgin.unique_count() != n) {
    throw ConfigError("campaign state: N does not match document frequencies");
  }
  return snap;
}

void save_state(const std::filesystem::path& path, const WeightMap& weights,
                const VirginMap& virgin) {
  const std::string bytes = encode_state(weights, virgin);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw ConfigError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CampaignSnapshot load_state(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read campaign state " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_state(ss.str());
}

}  // namespace covrl
