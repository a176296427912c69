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

#include "covrl/error.hpp"
#include "covrl/mutator.hpp"
#include "covrl/wire.hpp"
#include "doctest.h"
#include "golden_session.hpp"
#include "test_util.hpp"

namespace covrl {
namespace {

using nlohmann::json;

TEST_CASE("frame layout") {
  const auto f = wire::encode_frame("abc");
  CHECK(f == std::string("\0\0\0\3abc", 7));
  const auto big = wire::encode_frame(std::string(0x01020304 & 0xFFFFF, 'x'));
  CHECK(static_cast<unsigned char>(big[1]) == 0x02);
  CHECK(static_cast<unsigned char>(big[2]) == 0x03);
  CHECK(static_cast<unsigned char>(big[3]) == 0x04);
  CHECK(wire::encode_frame("") == std::string(4, '\0'));
  CHECK_THROWS_AS(wire::encode_frame(std::string(wire::kMaxFrameBytes + 1, 'x')), ProtocolError);
}

TEST_CASE("decoder splits arbitrary chunkings") {
  const std::vector<std::string> payloads{"", "a", std::string(300, 'z'), "{\"type\":\"ping\"}"};
  std::string stream;
  for (const auto& p : payloads) stream += wire::encode_frame(p);
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    wire::FrameDecoder d;
    std::vector<std::string> got;
    size_t pos = 0;
    while (pos < stream.size()) {
      const size_t n = 1 + uniform_below(rng, 40);
      d.feed(std::string_view(stream).substr(pos, n));
      pos += n;
      while (auto p = d.next()) got.push_back(*p);
    }
    CHECK(got == payloads);
    CHECK(d.buffered() == 0);
  }
  wire::FrameDecoder d;
  d.feed(std::string("\x01\x00\x00\x01", 4));
  CHECK_THROWS_AS(d.next(), ProtocolError);
  wire::FrameDecoder partial;
  partial.feed(std::string("\0\0\0\5ab", 6));
  CHECK_FALSE(partial.next());
  CHECK(partial.buffered() == 6);
}

TEST_CASE("payloads are canonical and round trip") {
  wire::InfillRequest rq{9, {"a", "<extra_id_0>"}, 1, {4, 0.5}};
  CHECK(wire::to_payload(rq) ==
        R"({"decode":{"contrastive_alpha":0.5,"top_k":4},"id":9,"masked_tokens":["a","<extra_id_0>"],"slots":1,"type":"infill"})");
  CHECK(wire::parse_infill_request(wire::parse_payload(wire::to_payload(rq))) == rq);

  wire::InfillResponse rs{9, {{"x", "y"}, {}}};
  CHECK(wire::to_payload(rs) == R"({"fills":[["x","y"],[]],"id":9,"type":"infill"})");
  CHECK(wire::parse_infill_response(wire::parse_payload(wire::to_payload(rs))) == rs);

  wire::FinetuneRequest fq{2, {{{"<extra_id_0>"}, {{"1"}}, -0.5}}, 3};
  CHECK(wire::to_payload(fq) ==
        R"({"cycle":2,"epochs":3,"records":[{"fill_tokens":[["1"]],"masked_tokens":["<extra_id_0>"],"reward":-0.5}],"type":"finetune"})");
  CHECK(wire::parse_finetune_request(wire::parse_payload(wire::to_payload(fq))) == fq);

  wire::FinetuneResponse fs{2, 1.25, 0.75};
  CHECK(wire::parse_finetune_response(wire::parse_payload(wire::to_payload(fs))) == fs);

  CHECK(wire::ping_payload() == R"({"type":"ping"})");
  CHECK(wire::pong_payload("m") == R"({"model":"m","type":"pong"})");
  CHECK(wire::error_payload("bad") == R"({"message":"bad","type":"error"})");
  // Invalid UTF-8 in a token is replaced rather than rejected.
  rq.masked_tokens = {"\xff"};
  CHECK(wire::parse_payload(wire::to_payload(rq)).at("masked_tokens")[0] == "\xEF\xBF\xBD");
}

TEST_CASE("decode defaults and parse errors") {
  const auto rq = wire::parse_infill_request(
      json::parse(R"({"type":"infill","id":1,"masked_tokens":[],"slots":0})"));
  CHECK(rq.decode == wire::DecodeOptions{});
  CHECK(wire::parse_finetune_request(json::parse(R"({"cycle":1,"records":[]})")).epochs == 1);
  CHECK_THROWS_AS(wire::parse_payload("{"), ProtocolError);
  CHECK_THROWS_AS(wire::message_type(json::parse("[1]")), ProtocolError);
  CHECK_THROWS_AS(wire::message_type(json::parse(R"({"type":3})")), ProtocolError);
  CHECK_THROWS_AS(wire::parse_infill_request(json::parse(R"({"id":"x"})")), ProtocolError);
  CHECK_THROWS_AS(wire::parse_infill_response(json::parse(R"({"id":1,"fills":[1]})")),
                  ProtocolError);
  CHECK_THROWS_AS(wire::parse_finetune_request(json::parse(R"({"cycle":1})")), ProtocolError);
  CHECK_THROWS_AS(wire::parse_finetune_response(json::parse(R"({"cycle":1,"loss_before":0})")),
                  ProtocolError);
}

TEST_CASE("handle_request answers errors in band") {
  MockMutator m;
  Rng rng(1);
  auto type_of = [&](std::string_view p) {
    return wire::message_type(wire::parse_payload(handle_request(m, rng, p)));
  };
  CHECK(type_of("nope") == "error");
  CHECK(type_of(R"({"type":"dance"})") == "error");
  CHECK(type_of(R"({"type":"infill","id":1,"masked_tokens":["<extra_id_1>"],"slots":1})") ==
        "error");
  CHECK(type_of(R"({"type":"ping"})") == "pong");
}

TEST_CASE("golden frames replay byte for byte") {
  const auto dir = testing::fixture("golden");
  auto mutator = testing::golden_mutator();
  Rng rng(testing::kGoldenRngSeed);
  for (const auto& [name, request] : testing::golden_requests()) {
    CAPTURE(name);
    const auto req_frame = testing::read_file(dir / (name + ".request.frame"));
    const auto resp_frame = testing::read_file(dir / (name + ".response.frame"));
    CHECK(wire::encode_frame(request) == req_frame);
    CHECK(wire::encode_frame(handle_request(*mutator, rng, request)) == resp_frame);
    wire::FrameDecoder d;
    d.feed(resp_frame);
    const auto payload = d.next();
    REQUIRE(payload);
    const auto type = wire::message_type(wire::parse_payload(*payload));
    if (name == "ping") CHECK(type == "pong");
    if (name.starts_with("infill")) {
      const auto r = wire::parse_infill_response(wire::parse_payload(*payload));
      CHECK(r.fills.size() == 2);
    }
    if (name == "finetune") CHECK(type == "finetune");
    if (name == "bad_slots") CHECK(type == "error");
  }
}

}  // namespace
}  // namespace covrl
