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

#include <poll.h>

#include "covrl/error.hpp"
#include "covrl/mutator.hpp"

namespace covrl {

RemoteMutator::RemoteMutator(net::Endpoint ep, wire::DecodeOptions decode,
                             std::unique_ptr<Mutator> fallback, int timeout_ms)
    : ep_(std::move(ep)),
      decode_(decode),
      fallback_(std::move(fallback)),
      timeout_ms_(timeout_ms) {
  if (!fallback_) throw ConfigError("remote mutator needs a fallback mutator");
}

std::string RemoteMutator::model_id() const {
  return model_.empty() ? "remote:" + ep_.to_string() : model_;
}

void RemoteMutator::ensure_connected() {
  if (sock_.valid()) return;
  decoder_ = wire::FrameDecoder{};
  sock_ = net::connect_tcp(ep_, timeout_ms_);
}

std::string RemoteMutator::round_trip(const std::string& payload) {
  ensure_connected();
  net::send_all(sock_, wire::encode_frame(payload));
  return net::recv_frame(sock_, decoder_, timeout_ms_);
}

std::string RemoteMutator::ping() {
  const auto reply = wire::parse_payload(round_trip(wire::ping_payload()));
  if (wire::message_type(reply) != "pong") throw ProtocolError("expected pong");
  model_ = reply.value("model", std::string{});
  return model_;
}

void RemoteMutator::observe_tokens(std::span<const std::string> tokens) {
  fallback_->observe_tokens(tokens);
}

FillResult RemoteMutator::fill(const MaskedCase& mc, Rng& rng) {
  if (fallback_active_) {
    ++stats_.fallback_fills;
    return fallback_->fill(mc, rng);
  }
  wire::InfillRequest req;
  req.id = next_id_++;
  req.masked_tokens = mc.masked.tokens;
  req.slots = mc.slot_count;
  req.decode = decode_;
  const std::string payload = wire::to_payload(req);

  std::string reply;
  try {
    reply = round_trip(payload);
  } catch (const TransportError&) {
    sock_.reset();
    ++stats_.reconnects;
    try {
      reply = round_trip(payload);
    } catch (const TransportError&) {
      sock_.reset();
      fallback_active_ = true;
      ++stats_.fallback_fills;
      return fallback_->fill(mc, rng);
    }
  }

  const auto j = wire::parse_payload(reply);
  const auto type = wire::message_type(j);
  if (type == "error") throw ProtocolError("mutator error: " + j.value("message", std::string{}));
  if (type != "infill") throw ProtocolError("expected infill reply, got " + type);
  auto resp = wire::parse_infill_response(j);
  if (resp.id != req.id) throw ProtocolError("infill reply id mismatch");
  if (resp.fills.size() != mc.slot_count) {
    throw ProtocolError("infill reply has " + std::to_string(resp.fills.size()) +
                        " fills for " + std::to_string(mc.slot_count) + " slots");
  }
  return FillResult{std::move(resp.fills)};
}

wire::FinetuneResponse RemoteMutator::finetune(const wire::FinetuneRequest& req) {
  std::string reply;
  try {
    reply = round_trip(wire::to_payload(req));
  } catch (const TransportError&) {
    sock_.reset();
    throw;
  }
  const auto j = wire::parse_payload(reply);
  const auto type = wire::message_type(j);
  if (type == "error") throw ProtocolError("mutator error: " + j.value("message", std::string{}));
  if (type != "finetune") throw ProtocolError("expected finetune reply, got " + type);
  return wire::parse_finetune_response(j);
}

std::string handle_request(Mutator& mutator, Rng& rng, std::string_view payload) {
  try {
    const auto j = wire::parse_payload(payload);
    const auto type = wire::message_type(j);
    if (type == "ping") return wire::pong_payload(mutator.model_id());
    if (type == "infill") {
      const auto req = wire::parse_infill_request(j);
      MaskedCase mc;
      for (const auto& t : req.masked_tokens) {
        if (auto slot = sentinel_index(t)) {
          if (*slot != mc.slot_count) throw ProtocolError("sentinels must be numbered 0..k-1");
          ++mc.slot_count;
          mc.masked.push(t, TokenKind::Sentinel);
        } else {
          mc.masked.push(t, TokenKind::Identifier);
        }
      }
      if (mc.slot_count != req.slots) throw ProtocolError("slots does not match sentinel count");
      wire::InfillResponse resp;
      resp.id = req.id;
      resp.fills = mutator.fill(mc, rng).fills;
      return wire::to_payload(resp);
    }
    if (type == "finetune") {
      const auto req = wire::parse_finetune_request(j);
      return wire::to_payload(mutator.finetune(req));
    }
    return wire::error_payload("unknown message type '" + type + "'");
  } catch (const ProtocolError& e) {
    return wire::error_payload(e.what());
  }
}

void serve_mutator(const net::Fd& listener, Mutator& mutator, Rng& rng,
                   const std::atomic<bool>& stop, size_t max_connections) {
  size_t handled = 0;
  while (!stop.load()) {
    pollfd pfd{listener.get(), POLLIN, 0};
    if (::poll(&pfd, 1, 100) <= 0) continue;
    net::Fd conn = net::accept_one(listener);
    wire::FrameDecoder decoder;
    try {
      while (!stop.load()) {
        std::optional<std::string> frame;
        try {
          frame = net::try_recv_frame(conn, decoder, 100);
        } catch (const ProtocolError& e) {
          net::send_all(conn, wire::encode_frame(wire::error_payload(e.what())));
          break;
        }
        if (!frame) continue;
        net::send_all(conn, wire::encode_frame(handle_request(mutator, rng, *frame)));
      }
    } catch (const TransportError&) {
      // peer went away; wait for the next connection
    }
    if (max_connections && ++handled >= max_connections) break;
  }
}

}  // namespace covrl
