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

#include <cmath>
#include <set>

#include "covrl/coverage.hpp"
#include "covrl/error.hpp"
#include "covrl/kernels.hpp"
#include "covrl/rng.hpp"
#include "doctest.h"

namespace covrl {
namespace {

CoverageMap map_with(std::initializer_list<std::pair<uint32_t, int>> hits, uint32_t exp = 8) {
  CoverageMap m(exp);
  for (auto [e, n] : hits) {
    for (int i = 0; i < n; ++i) m.hit(e);
  }
  return m;
}

CoverageMap random_map(Rng& rng, uint32_t exp, double density) {
  CoverageMap m(exp);
  for (size_t i = 0; i < m.size(); ++i) {
    if (bernoulli(rng, density)) m.counters()[i] = static_cast<uint8_t>(1 + uniform_below(rng, 255));
  }
  return m;
}

uint64_t recount(const VirginMap& v) {
  uint64_t n = 0;
  for (uint32_t i = 0; i < v.size(); ++i) n += v.seen(i);
  return n;
}

TEST_CASE("unique_coverage projects hit counts to edge indices") {
  CHECK(unique_coverage(map_with({{5, 3}, {9, 1}})) == EdgeSet{5, 9});
  CHECK(unique_coverage(CoverageMap(8)).empty());
  CHECK(unique_coverage(map_with({{0, 300}})) == EdgeSet{0});
  CHECK(map_with({{0, 300}}).counters()[0] == 255);
}

TEST_CASE("map exponent bounds") {
  CHECK_THROWS_AS(CoverageMap(7), ConfigError);
  CHECK_THROWS_AS(CoverageMap(25), ConfigError);
  CHECK(CoverageMap(8).size() == 256);
  CHECK(CoverageMap(16).size() == 65536);
}

TEST_CASE("accumulate returns newly seen edges") {
  VirginMap v(8);
  CHECK(accumulate(v, map_with({{1, 1}, {2, 1}})) == EdgeSet{1, 2});
  CHECK(v.unique_count() == 2);
  CHECK(accumulate(v, map_with({{2, 4}, {3, 1}})) == EdgeSet{3});
  CHECK(v.unique_count() == 3);
  CHECK(accumulate(v, map_with({{2, 4}, {3, 1}})).empty());
  CHECK_THROWS_AS(accumulate(v, CoverageMap(9)), ConfigError);
}

TEST_CASE("virgin map properties under random operations") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const uint32_t exp = 8 + static_cast<uint32_t>(uniform_below(rng, 9));
    VirginMap v(exp);
    std::set<uint32_t> oracle;
    for (int step = 0; step < 30; ++step) {
      const auto cov = random_map(rng, exp, 0.01 * static_cast<double>(uniform_below(rng, 5)));
      const auto before = v;
      const auto uc = unique_coverage(cov);
      for (uint32_t e : uc) CHECK(e < cov.size());
      const auto fresh = accumulate(v, cov);
      for (uint32_t e : fresh) CHECK(oracle.insert(e).second);
      for (uint32_t e : uc) CHECK(oracle.count(e) == 1);
      // seen only grows
      for (uint32_t i = 0; i < v.size(); ++i) {
        if (before.seen(i)) CHECK(v.seen(i));
      }
      CHECK(accumulate(v, cov).empty());
      CHECK(v.unique_count() == recount(v));
      CHECK(v.unique_count() == oracle.size());
    }
  }
}

TEST_CASE("idf candidates match hand arithmetic with M = 64") {
  // ln(2) / 8 to 20 digits, computed with arbitrary-precision arithmetic.
  const double ln2_over_8 = 0.086643397569993163677;
  std::vector<uint32_t> df = {1, 3, 3};
  std::vector<double> out(3);
  kernels::serial::idf_candidates(std::span(df).subspan(0, 2), 4, 1.0 / std::sqrt(64.0), 1.0,
                                  std::span(out).subspan(0, 2));
  CHECK(out[0] == doctest::Approx(ln2_over_8).epsilon(1e-15));
  CHECK(out[1] == 0.0);
  kernels::serial::idf_candidates(std::span(df).subspan(2, 1), 2, 1.0 / std::sqrt(64.0), 1.0,
                                  std::span(out).subspan(2, 1));
  CHECK(out[2] == doctest::Approx(-ln2_over_8).epsilon(1e-15));
  CHECK(out[2] < 0.0);
}

TEST_CASE("compute_idf matches a long double oracle") {
  Rng rng(3);
  WeightMap w(10);
  VirginMap v(10);
  for (uint32_t i = 0; i < 300; ++i) v.mark(static_cast<uint32_t>(uniform_below(rng, 1024)));
  for (auto& d : w.df) d = static_cast<uint32_t>(uniform_below(rng, 50));
  const auto got = compute_idf(w, v);
  for (size_t i = 0; i < w.size(); ++i) {
    const long double want = std::log(static_cast<long double>(v.unique_count()) /
                                      (1.0L + w.df[i])) / 32.0L;
    CHECK(std::fabs(static_cast<long double>(got[i]) - want) <= 1e-15L);
  }
  CHECK_THROWS(compute_idf(w, VirginMap(10)));
  CHECK_THROWS_AS(compute_idf(w, VirginMap(11)), ConfigError);
}

TEST_CASE("log base only rescales idf") {
  WeightMap w(8);
  VirginMap v(8);
  for (uint32_t i = 0; i < 40; ++i) v.mark(i);
  for (uint32_t i = 0; i < 256; ++i) w.df[i] = i % 7;
  const auto natural = compute_idf(w, v);
  const auto base2 = compute_idf(w, v, {2.0});
  for (size_t i = 0; i < natural.size(); ++i) {
    CHECK(base2[i] == doctest::Approx(natural[i] / std::log(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("rarer edges weigh more: 1000 random (df, N, M) triples") {
  Rng rng(2026);
  for (int t = 0; t < 1000; ++t) {
    const uint32_t exp = 8 + static_cast<uint32_t>(uniform_below(rng, 17));
    const uint64_t n = 1 + uniform_below(rng, 1u << 20);
    std::vector<uint32_t> df = {static_cast<uint32_t>(uniform_below(rng, 1u << 20)),
                                static_cast<uint32_t>(uniform_below(rng, 1u << 20))};
    if (df[0] == df[1]) df[1] = df[0] + 1;
    std::vector<double> out(2);
    const double scale = 1.0 / std::sqrt(static_cast<double>(uint64_t{1} << exp));
    kernels::serial::idf_candidates(df, n, scale, 1.0, out);
    const size_t rare = df[0] < df[1] ? 0 : 1;
    CHECK(out[rare] > out[1 - rare]);
  }
}

TEST_CASE("momentum examples") {
  WeightMap w(8);
  std::vector<double> fresh(256, 0.5);
  std::fill(w.idf.begin(), w.idf.end(), 1.0);
  update_with_momentum(w, fresh, 0.6);
  CHECK(w.idf[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(w.cycle == 1);
  const auto kept = w.idf;
  update_with_momentum(w, fresh, 1.0);
  CHECK(w.idf == kept);
  update_with_momentum(w, fresh, 0.0);
  CHECK(w.idf == fresh);
  CHECK(w.cycle == 3);
  CHECK_THROWS_AS(update_with_momentum(w, fresh, 1.5), ConfigError);
  CHECK_THROWS_AS(update_with_momentum(w, fresh, -0.1), ConfigError);
  CHECK_THROWS_AS(update_with_momentum(w, std::vector<double>(3), 0.5), ConfigError);
}

TEST_CASE("momentum is a convex combination; alpha 0 and 1 are exact") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    WeightMap w(8);
    std::vector<double> fresh(256);
    for (size_t i = 0; i < 256; ++i) {
      w.idf[i] = (uniform_unit(rng) - 0.5) * std::ldexp(1.0, static_cast<int>(uniform_below(rng, 40)) - 20);
      fresh[i] = (uniform_unit(rng) - 0.5) * std::ldexp(1.0, static_cast<int>(uniform_below(rng, 40)) - 20);
    }
    const auto old = w.idf;
    const double alpha = uniform_unit(rng);
    update_with_momentum(w, fresh, alpha);
    for (size_t i = 0; i < 256; ++i) {
      CHECK(w.idf[i] >= std::min(old[i], fresh[i]));
      CHECK(w.idf[i] <= std::max(old[i], fresh[i]));
    }
    WeightMap a = w, b = w;
    update_with_momentum(a, fresh, 0.0);
    CHECK(a.idf == fresh);
    const auto snapshot = b.idf;
    update_with_momentum(b, fresh, 1.0);
    CHECK(b.idf == snapshot);
  }
}

TEST_CASE("register_seed_coverage counts retained seeds") {
  WeightMap w(8);
  register_seed_coverage(w, EdgeSet{7});
  CHECK(w.df[7] == 1);
  register_seed_coverage(w, EdgeSet{7, 9});
  CHECK(w.df[7] == 2);
  CHECK(w.df[9] == 1);
  CHECK_THROWS(register_seed_coverage(w, EdgeSet{256}));
  CHECK(w.df[7] == 2);
}

TEST_CASE("serial and parallel kernels agree") {
  Rng rng(5);
  for (uint32_t exp : {8u, 12u, 16u, 18u}) {
    for (double density : {0.0, 0.001, 0.05, 0.7}) {
      const auto cov = random_map(rng, exp, density);
      VirginMap v(exp);
      accumulate(v, random_map(rng, exp, density));
      CHECK(kernels::serial::nonzero_indices(cov.counters()) ==
            kernels::parallel::nonzero_indices(cov.counters()));
      CHECK(kernels::serial::new_bits(v.words(), cov.counters()) ==
            kernels::parallel::new_bits(v.words(), cov.counters()));
      CHECK(kernels::serial::popcount(v.words()) == kernels::parallel::popcount(v.words()));

      std::vector<uint32_t> df(cov.size());
      for (auto& d : df) d = static_cast<uint32_t>(uniform_below(rng, 100));
      std::vector<double> a(df.size()), b(df.size());
      kernels::serial::idf_candidates(df, 1000, 0.01, 1.0, a);
      kernels::parallel::idf_candidates(df, 1000, 0.01, 1.0, b);
      CHECK(a == b);
      std::vector<double> c = a, d = a;
      kernels::serial::momentum_blend(c, b, 0.37);
      kernels::parallel::momentum_blend(d, b, 0.37);
      CHECK(c == d);
    }
  }
}

}  // namespace
}  // namespace covrl
