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

#include <atomic>
#include <functional>
#include <thread>

#include "covrl/error.hpp"
#include "covrl/fuzzer.hpp"
#include "covrl/mutator.hpp"
#include "covrl/net.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace covrl {
namespace {

// Answers frames with `reply(payload, connection, message)`; returning
// nullopt drops the connection without answering.
using Script = std::function<std::optional<std::string>(const std::string&, int, int)>;

class ScriptedServer {
 public:
  explicit ScriptedServer(Script script)
      : listener_(net::listen_tcp(net::Endpoint::parse("127.0.0.1:0"))),
        script_(std::move(script)),
        thread_([this] { loop(); }) {}
  ~ScriptedServer() {
    stop_ = true;
    thread_.join();
  }
  net::Endpoint endpoint() const { return {"127.0.0.1", net::local_port(listener_)}; }

 private:
  void loop() {
    int conn_no = 0;
    while (!stop_) {
      pollfd pfd{listener_.get(), POLLIN, 0};
      if (::poll(&pfd, 1, 50) <= 0) continue;
      net::Fd conn = net::accept_one(listener_);
      wire::FrameDecoder dec;
      int msg_no = 0;
      try {
        while (!stop_) {
          auto frame = net::try_recv_frame(conn, dec, 50);
          if (!frame) continue;
          auto out = script_(*frame, conn_no, msg_no++);
          if (!out) break;
          net::send_all(conn, wire::encode_frame(*out));
        }
      } catch (const TransportError&) {
      }
      ++conn_no;
    }
  }

  net::Fd listener_;
  Script script_;
  std::atomic<bool> stop_{false};
  std::thread thread_;
};

net::Endpoint dead_endpoint() {
  auto l = net::listen_tcp(net::Endpoint::parse("127.0.0.1:0"));
  return {"127.0.0.1", net::local_port(l)};
}

MaskedCase two_slots() {
  return mask_insert(tokenize("let x = 1;"), std::vector<size_t>{1, 4});
}

std::unique_ptr<Mutator> fallback() { return std::make_unique<MockMutator>(); }

std::string echo_fill(const std::string& payload, size_t extra = 0) {
  const auto req = wire::parse_infill_request(wire::parse_payload(payload));
  wire::InfillResponse r;
  r.id = req.id;
  r.fills.assign(req.slots + extra, {"0"});
  return wire::to_payload(r);
}

TEST_CASE("endpoint parsing") {
  const auto ep = net::Endpoint::parse("localhost:8080");
  CHECK(ep.host == "localhost");
  CHECK(ep.port == 8080);
  CHECK(ep.to_string() == "localhost:8080");
  CHECK_THROWS_AS(net::Endpoint::parse("nohost"), ConfigError);
  CHECK_THROWS_AS(net::Endpoint::parse("h:99999"), ConfigError);
  CHECK_THROWS_AS(net::Endpoint::parse("h:x"), ConfigError);
}

TEST_CASE("round trips against the served mock") {
  auto listener = net::listen_tcp(net::Endpoint::parse("127.0.0.1:0"));
  const net::Endpoint ep{"127.0.0.1", net::local_port(listener)};
  MockMutator served;
  Rng server_rng(3);
  std::atomic<bool> stop{false};
  std::thread t([&] { serve_mutator(listener, served, server_rng, stop, 1); });
  {
    RemoteMutator rm(ep, {8, 0.3}, fallback());
    CHECK(rm.ping() == "mock-bigram/2");
    CHECK(rm.model_id() == "mock-bigram/2");
    Rng rng(1);
    const auto mc = two_slots();
    for (int i = 0; i < 20; ++i) {
      const auto fr = rm.fill(mc, rng);
      CHECK(fr.fills.size() == 2);
      CHECK(!fr.fills[0].empty());
    }
    wire::FinetuneRequest ft;
    ft.cycle = 4;
    ft.records.push_back({mc.masked.tokens, {{"x"}, {"y"}}, 0.7});
    CHECK(rm.finetune(ft).cycle == 4);
    CHECK(rm.stats().reconnects == 0);
    CHECK(rm.stats().fallback_fills == 0);
  }
  t.join();
}

TEST_CASE("a dropped connection is retried once") {
  ScriptedServer srv([](const std::string& p, int conn, int msg) -> std::optional<std::string> {
    if (conn == 0 && msg == 1) return std::nullopt;
    return echo_fill(p);
  });
  RemoteMutator rm(srv.endpoint(), {}, fallback());
  Rng rng(1);
  const auto mc = two_slots();
  CHECK(rm.fill(mc, rng).fills == std::vector<std::vector<std::string>>{{"0"}, {"0"}});
  CHECK(rm.fill(mc, rng).fills.size() == 2);
  CHECK(rm.stats().reconnects == 1);
  CHECK_FALSE(rm.fallback_active());
}

TEST_CASE("a dead service falls back to the mock until the next cycle") {
  RemoteMutator rm(dead_endpoint(), {}, fallback(), 500);
  Rng rng(1);
  const auto mc = two_slots();
  CHECK(rm.fill(mc, rng).fills.size() == 2);
  CHECK(rm.fallback_active());
  CHECK(rm.stats().reconnects == 1);
  CHECK(rm.fill(mc, rng).fills.size() == 2);
  CHECK(rm.stats().reconnects == 1);
  CHECK(rm.stats().fallback_fills == 2);
  rm.begin_cycle();
  CHECK_FALSE(rm.fallback_active());
  rm.fill(mc, rng);
  CHECK(rm.stats().reconnects == 2);
  CHECK_THROWS_AS(rm.finetune({}), TransportError);
  CHECK_THROWS_AS(rm.ping(), TransportError);
}

TEST_CASE("protocol violations raise ProtocolError") {
  const auto mc = two_slots();
  Rng rng(1);
  {
    ScriptedServer srv([](const std::string& p, int, int) -> std::optional<std::string> {
      return echo_fill(p, 1);
    });
    RemoteMutator rm(srv.endpoint(), {}, fallback());
    CHECK_THROWS_AS(rm.fill(mc, rng), ProtocolError);
  }
  {
    ScriptedServer srv([](const std::string& p, int, int) -> std::optional<std::string> {
      auto j = wire::parse_payload(echo_fill(p));
      j["id"] = 999;
      return j.dump();
    });
    RemoteMutator rm(srv.endpoint(), {}, fallback());
    CHECK_THROWS_AS(rm.fill(mc, rng), ProtocolError);
  }
  {
    ScriptedServer srv([](const std::string&, int, int) -> std::optional<std::string> {
      return wire::error_payload("model exploded");
    });
    RemoteMutator rm(srv.endpoint(), {}, fallback());
    CHECK_THROWS_AS(rm.fill(mc, rng), ProtocolError);
    CHECK_THROWS_AS(rm.finetune({}), ProtocolError);
    CHECK_THROWS_AS(rm.ping(), ProtocolError);
  }
  {
    ScriptedServer srv([](const std::string&, int, int) -> std::optional<std::string> {
      return std::string("not json");
    });
    RemoteMutator rm(srv.endpoint(), {}, fallback());
    CHECK_THROWS_AS(rm.fill(mc, rng), ProtocolError);
  }
  CHECK_THROWS_AS(RemoteMutator(dead_endpoint(), {}, nullptr), ConfigError);
}

TEST_CASE("a campaign survives a dead mutator service") {
  testing::TempDir dir;
  Config cfg = testing::quick_config(dir / "out");
  cfg.iter_cycle = 50;
  cfg.execs = 100;
  Executor ex(make_target_config(cfg));
  RemoteMutator rm(dead_endpoint(), {}, fallback(), 500);
  Campaign camp(cfg, ex, rm);
  camp.load_corpus(cfg.corpus);
  camp.warm_up();
  camp.run();
  CHECK(camp.stats().iterations == 100);
  CHECK(camp.stats().cycles == 2);
  CHECK(camp.stats().finetune_failures == 2);
  CHECK(rm.stats().reconnects == 2);
  CHECK(rm.stats().fallback_fills == 100);
}

TEST_CASE("the campaign counts discarded mutations") {
  ScriptedServer srv([](const std::string& p, int, int) -> std::optional<std::string> {
    const auto j = wire::parse_payload(p);
    if (wire::message_type(j) == "finetune") {
      return wire::to_payload(wire::FinetuneResponse{j.at("cycle").get<uint64_t>(), 0, 0});
    }
    return echo_fill(p, 1);
  });
  testing::TempDir dir;
  Config cfg = testing::quick_config(dir / "out");
  cfg.iter_cycle = 20;
  cfg.execs = 20;
  Executor ex(make_target_config(cfg));
  RemoteMutator rm(srv.endpoint(), {}, fallback());
  Campaign camp(cfg, ex, rm);
  camp.load_corpus(cfg.corpus);
  const uint64_t warm = 100;
  camp.warm_up();
  camp.run();
  CHECK(camp.stats().protocol_errors == 20);
  CHECK(camp.stats().execs == warm);
}

}  // namespace
}  // namespace covrl
