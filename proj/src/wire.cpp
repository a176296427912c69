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

#include "covrl/wire.hpp"

#include "covrl/error.hpp"

namespace covrl::wire {
namespace {

using nlohmann::json;

std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

template <typename Fn>
auto guarded(std::string_view what, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string encode_frame(std::string_view payload) {
  if (payload.size() > kMaxFrameBytes) throw ProtocolError("frame too large");
  const auto n = static_cast<uint32_t>(payload.size());
  std::string out;
  out.reserve(4 + payload.size());
  out.push_back(static_cast<char>(n >> 24));
  out.push_back(static_cast<char>(n >> 16));
  out.push_back(static_cast<char>(n >> 8));
  out.push_back(static_cast<char>(n));
  out.append(payload);
  return out;
}

std::optional<std::string> FrameDecoder::next() {
  if (buf_.size() < 4) return std::nullopt;
  const auto* p = reinterpret_cast<const unsigned char*>(buf_.data());
  const uint32_t n = (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) |
                     (uint32_t{p[2]} << 8) | uint32_t{p[3]};
  if (n > kMaxFrameBytes) throw ProtocolError("frame length " + std::to_string(n) + " too large");
  if (buf_.size() < 4 + size_t{n}) return std::nullopt;
  std::string payload = buf_.substr(4, n);
  buf_.erase(0, 4 + size_t{n});
  return payload;
}

std::string to_payload(const InfillRequest& m) {
  return dump({{"type", "infill"},
               {"id", m.id},
               {"masked_tokens", m.masked_tokens},
               {"slots", m.slots},
               {"decode",
                {{"top_k", m.decode.top_k}, {"contrastive_alpha", m.decode.contrastive_alpha}}}});
}

std::string to_payload(const InfillResponse& m) {
  return dump({{"type", "infill"}, {"id", m.id}, {"fills", m.fills}});
}

std::string to_payload(const FinetuneRequest& m) {
  json records = json::array();
  for (const auto& r : m.records) {
    records.push_back(
        {{"masked_tokens", r.masked_tokens}, {"fill_tokens", r.fill_tokens}, {"reward", r.reward}});
  }
  return dump({{"type", "finetune"}, {"cycle", m.cycle}, {"records", records}, {"epochs", m.epochs}});
}

std::string to_payload(const FinetuneResponse& m) {
  return dump({{"type", "finetune"},
               {"cycle", m.cycle},
               {"loss_before", m.loss_before},
               {"loss_after", m.loss_after}});
}

std::string ping_payload() { return dump({{"type", "ping"}}); }

std::string pong_payload(std::string_view model) {
  return dump({{"type", "pong"}, {"model", model}});
}

std::string error_payload(std::string_view message) {
  return dump({{"type", "error"}, {"message", message}});
}

nlohmann::json parse_payload(std::string_view payload) {
  return guarded("malformed JSON payload", [&] { return json::parse(payload); });
}

std::string message_type(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ProtocolError("message without a string \"type\" field");
  }
  return j["type"].get<std::string>();
}

InfillRequest parse_infill_request(const nlohmann::json& j) {
  return guarded("infill request", [&] {
    InfillRequest m;
    m.id = j.at("id").get<uint64_t>();
    m.masked_tokens = j.at("masked_tokens").get<std::vector<std::string>>();
    m.slots = j.at("slots").get<size_t>();
    if (j.contains("decode")) {
      const auto& d = j["decode"];
      m.decode.top_k = d.value("top_k", m.decode.top_k);
      m.decode.contrastive_alpha = d.value("contrastive_alpha", m.decode.contrastive_alpha);
    }
    return m;
  });
}

InfillResponse parse_infill_response(const nlohmann::json& j) {
  return guarded("infill response", [&] {
    InfillResponse m;
    m.id = j.at("id").get<uint64_t>();
    m.fills = j.at("fills").get<std::vector<std::vector<std::string>>>();
    return m;
  });
}

FinetuneRequest parse_finetune_request(const nlohmann::json& j) {
  return guarded("finetune request", [&] {
    FinetuneRequest m;
    m.cycle = j.at("cycle").get<uint64_t>();
    m.epochs = j.value("epochs", 1);
    for (const auto& r : j.at("records")) {
      FinetuneRecord rec;
      rec.masked_tokens = r.at("masked_tokens").get<std::vector<std::string>>();
      rec.fill_tokens = r.at("fill_tokens").get<std::vector<std::vector<std::string>>>();
      rec.reward = r.at("reward").get<double>();
      m.records.push_back(std::move(rec));
    }
    return m;
  });
}

FinetuneResponse parse_finetune_response(const nlohmann::json& j) {
  return guarded("finetune response", [&] {
    FinetuneResponse m;
    m.cycle = j.at("cycle").get<uint64_t>();
    m.loss_before = j.at("loss_before").get<double>();
    m.loss_after = j.at("loss_after").get<double>();
    return m;
  });
}

}  // namespace covrl::wire
