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

#include <bit>
#include <cstring>

#include "covrl/campaign_state.hpp"
#include "covrl/error.hpp"
#include "covrl/rng.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace covrl {
namespace {

CampaignSnapshot random_snapshot(Rng& rng, uint32_t exp) {
  CampaignSnapshot s{WeightMap(exp), VirginMap(exp)};
  for (uint32_t i = 0; i < s.weights.size(); ++i) {
    if (bernoulli(rng, 0.2)) {
      s.weights.df[i] = static_cast<uint32_t>(1 + uniform_below(rng, 1000));
      s.virgin.mark(i);
    }
    s.weights.idf[i] = (uniform_unit(rng) - 0.5) * 3.0;
  }
  s.weights.cycle = uniform_below(rng, 1000);
  return s;
}

template <typename T>
T le_at(const std::string& b, size_t off) {
  T v;
  std::memcpy(&v, b.data() + off, sizeof v);
  static_assert(std::endian::native == std::endian::little);
  return v;
}

TEST_CASE("state file layout") {
  Rng rng(1);
  const auto s = random_snapshot(rng, 8);
  const auto bytes = encode_state(s.weights, s.virgin);
  REQUIRE(bytes.size() == 28 + 4 * 256 + 8 * 256);
  CHECK(bytes.substr(0, 4) == "CVRL");
  CHECK(le_at<uint32_t>(bytes, 4) == 1);
  CHECK(le_at<uint32_t>(bytes, 8) == 8);
  CHECK(le_at<uint64_t>(bytes, 12) == s.weights.cycle);
  CHECK(le_at<uint64_t>(bytes, 20) == s.virgin.unique_count());
  for (uint32_t i = 0; i < 256; ++i) {
    CHECK(le_at<uint32_t>(bytes, 28 + 4 * i) == s.weights.df[i]);
    CHECK(std::bit_cast<uint64_t>(le_at<double>(bytes, 28 + 4 * 256 + 8 * i)) ==
          std::bit_cast<uint64_t>(s.weights.idf[i]));
  }
}

TEST_CASE("state round trip is bit exact") {
  Rng rng(2);
  for (uint32_t exp : {8u, 12u, 16u}) {
    const auto s = random_snapshot(rng, exp);
    const auto bytes = encode_state(s.weights, s.virgin);
    const auto back = decode_state(bytes);
    CHECK(back.weights == s.weights);
    CHECK(back.virgin == s.virgin);
    CHECK(encode_state(back.weights, back.virgin) == bytes);
  }
  testing::TempDir dir;
  const auto s = random_snapshot(rng, 10);
  save_state(dir / "state.bin", s.weights, s.virgin);
  CHECK(testing::read_file(dir / "state.bin") == encode_state(s.weights, s.virgin));
  CHECK(load_state(dir / "state.bin").weights == s.weights);
}

TEST_CASE("corrupt state files are rejected") {
  Rng rng(3);
  const auto s = random_snapshot(rng, 8);
  const auto good = encode_state(s.weights, s.virgin);
  auto bad = good;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_state(bad), ConfigError);
  bad = good;
  bad[4] = 2;
  CHECK_THROWS_AS(decode_state(bad), ConfigError);
  CHECK_THROWS_AS(decode_state(good.substr(0, good.size() - 1)), ConfigError);
  CHECK_THROWS_AS(decode_state(good + "x"), ConfigError);
  bad = good;
  bad[20] ^= 1;  // N no longer matches df
  CHECK_THROWS_AS(decode_state(bad), ConfigError);
  CHECK_THROWS_AS(decode_state(""), ConfigError);
  CHECK_THROWS_AS(load_state("/nonexistent/state.bin"), ConfigError);
}

}  // namespace
}  // namespace covrl
