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

// Fixed request sequence behind the golden wire frames in
// tests/fixtures/golden.

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "covrl/mutator.hpp"
#include "covrl/tokens.hpp"
#include "covrl/wire.hpp"

namespace covrl::testing {

inline constexpr uint64_t kGoldenRngSeed = 7;

inline std::unique_ptr<MockMutator> golden_mutator() {
  auto m = std::make_unique<MockMutator>();
  m->observe_tokens(tokenize("let a = [1, 2];\nfor (let i = 0; i < 3; i++) { a.push(i); }\n"
                             "print(a.length);\n")
                        .tokens);
  return m;
}

// (name, request payload) in the order they are sent.
inline std::vector<std::pair<std::string, std::string>> golden_requests() {
  wire::InfillRequest infill;
  infill.id = 1;
  infill.masked_tokens = {"let", "<extra_id_0>", "=", "[", "1", "]", ";", "<extra_id_1>"};
  infill.slots = 2;

  wire::FinetuneRequest ft;
  ft.cycle = 1;
  ft.records.push_back({{"let", "<extra_id_0>", "="}, {{"a"}}, 0.75});
  ft.records.push_back({{"print", "(", "<extra_id_0>", ")"}, {{"a", ".", "length"}}, -0.5});

  wire::InfillRequest again = infill;
  again.id = 2;
  again.decode = {8, 0.25};

  return {{"ping", wire::ping_payload()},
          {"infill", wire::to_payload(infill)},
          {"finetune", wire::to_payload(ft)},
          {"infill_after_finetune", wire::to_payload(again)},
          {"bad_slots", R"({"id":3,"masked_tokens":["<extra_id_0>"],"slots":2,"type":"infill"})"}};
}

}  // namespace covrl::testing
