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

// Mutator wire protocol.
//
// Every message is one frame: a 4-byte big-endian payload length followed by
// a UTF-8 JSON text payload. Payload objects carry a "type" field:
//
//   request                                   response
//   {"type":"ping"}                           {"type":"pong","model":...}
//   {"type":"infill","id","masked_tokens",    {"type":"infill","id",
//    "slots","decode":{top_k,                  "fills":[[...],...]}
//    contrastive_alpha}}
//   {"type":"finetune","cycle","records":     {"type":"finetune","cycle",
//    [{masked_tokens,fill_tokens,reward}],     "loss_before","loss_after"}
//    "epochs"}
//   any malformed request                     {"type":"error","message":...}
//
// Serialization is canonical (sorted keys, no whitespace) so frames can be
// compared byte for byte against golden fixtures.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace covrl::wire {

inline constexpr size_t kMaxFrameBytes = size_t{16} << 20;

std::string encode_frame(std::string_view payload);

// Incremental frame splitter for a byte stream.
class FrameDecoder {
 public:
  void feed(std::string_view bytes) { buf_.append(bytes); }
  // Next complete payload, if any. Throws ProtocolError on an oversized
  // length prefix.
  std::optional<std::string> next();
  size_t buffered() const { return buf_.size(); }

 private:
  std::string buf_;
};

struct DecodeOptions {
  int top_k = 32;
  double contrastive_alpha = 0.6;
  friend bool operator==(const DecodeOptions&, const DecodeOptions&) = default;
};

struct InfillRequest {
  uint64_t id = 0;
  std::vector<std::string> masked_tokens;
  size_t slots = 0;
  DecodeOptions decode;
  friend bool operator==(const InfillRequest&, const InfillRequest&) = default;
};

struct InfillResponse {
  uint64_t id = 0;
  std::vector<std::vector<std::string>> fills;
  friend bool operator==(const InfillResponse&, const InfillResponse&) = default;
};

struct FinetuneRecord {
  std::vector<std::string> masked_tokens;
  std::vector<std::vector<std::string>> fill_tokens;
  double reward = 0.0;
  friend bool operator==(const FinetuneRecord&, const FinetuneRecord&) = default;
};

struct FinetuneRequest {
  uint64_t cycle = 0;
  std::vector<FinetuneRecord> records;
  int epochs = 1;
  friend bool operator==(const FinetuneRequest&, const FinetuneRequest&) = default;
};

struct FinetuneResponse {
  uint64_t cycle = 0;
  double loss_before = 0.0;
  double loss_after = 0.0;
  friend bool operator==(const FinetuneResponse&, const FinetuneResponse&) = default;
};

std::string to_payload(const InfillRequest& m);
std::string to_payload(const InfillResponse& m);
std::string to_payload(const FinetuneRequest& m);
std::string to_payload(const FinetuneResponse& m);
std::string ping_payload();
std::string pong_payload(std::string_view model);
std::string error_payload(std::string_view message);

// Parses a payload and returns its "type". Throws ProtocolError on invalid
// JSON or a missing type.
std::string message_type(const nlohmann::json& j);
nlohmann::json parse_payload(std::string_view payload);

// Field extraction; throw ProtocolError on missing or mistyped fields.
InfillRequest parse_infill_request(const nlohmann::json& j);
InfillResponse parse_infill_response(const nlohmann::json& j);
FinetuneRequest parse_finetune_request(const nlohmann::json& j);
FinetuneResponse parse_finetune_response(const nlohmann::json& j);

}  // namespace covrl::wire
