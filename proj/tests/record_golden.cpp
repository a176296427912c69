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

// Writes the golden wire frames replayed by the wire unit tests.
//
// usage: covrl_record_golden <out-dir>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "covrl/mutator.hpp"
#include "golden_session.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <out-dir>\n", argv[0]);
    return 2;
  }
  const std::filesystem::path out = argv[1];
  std::filesystem::create_directories(out);
  auto mutator = covrl::testing::golden_mutator();
  covrl::Rng rng(covrl::testing::kGoldenRngSeed);
  for (const auto& [name, request] : covrl::testing::golden_requests()) {
    const auto response = covrl::handle_request(*mutator, rng, request);
    std::ofstream(out / (name + ".request.frame"), std::ios::binary)
        << covrl::wire::encode_frame(request);
    std::ofstream(out / (name + ".response.frame"), std::ios::binary)
        << covrl::wire::encode_frame(response);
  }
  return 0;
}
