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

// Minimal blocking TCP helpers for the mutator connection.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "covrl/wire.hpp"

namespace covrl::net {

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(Fd&& o) noexcept : fd_(o.release()) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = o.release();
    }
    return *this;
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release() {
    const int f = fd_;
    fd_ = -1;
    return f;
  }
  void reset();

 private:
  int fd_ = -1;
};

struct Endpoint {
  std::string host = "127.0.0.1";
  uint16_t port = 0;

  // "host:port"; throws ConfigError.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

// Throw TransportError.
Fd connect_tcp(const Endpoint& ep, int timeout_ms);
Fd listen_tcp(const Endpoint& ep);
uint16_t local_port(const Fd& sock);
Fd accept_one(const Fd& listener);

void send_all(const Fd& sock, std::string_view bytes);

// Blocks until a full frame is available. Throws TransportError on EOF,
// error, or timeout (timeout_ms < 0 waits forever).
std::string recv_frame(const Fd& sock, wire::FrameDecoder& decoder, int timeout_ms);

// Like recv_frame, but returns nullopt when the timeout expires.
std::optional<std::string> try_recv_frame(const Fd& sock, wire::FrameDecoder& decoder,
                                          int timeout_ms);

}  // namespace covrl::net
