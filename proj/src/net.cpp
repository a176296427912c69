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

#include "covrl/net.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "covrl/error.hpp"

namespace covrl::net {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const Endpoint& ep) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(ep.port);
  const std::string host = ep.host == "localhost" ? "127.0.0.1" : ep.host;
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    addrinfo* res = nullptr;
    if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res) {
      throw TransportError("cannot resolve host " + ep.host);
    }
    addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
    freeaddrinfo(res);
  }
  return addr;
}

}  // namespace

void Fd::reset() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw ConfigError("endpoint must look like host:port, got '" + std::string(text) + "'");
  }
  Endpoint ep;
  ep.host = std::string(text.substr(0, colon));
  if (ep.host.empty()) ep.host = "127.0.0.1";
  int port = 0;
  try {
    port = std::stoi(std::string(text.substr(colon + 1)));
  } catch (const std::exception&) {
    port = -1;
  }
  if (port < 0 || port > 65535) throw ConfigError("bad port in '" + std::string(text) + "'");
  ep.port = static_cast<uint16_t>(port);
  return ep;
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

Fd connect_tcp(const Endpoint& ep, int timeout_ms) {
  const sockaddr_in addr = resolve(ep);
  Fd s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!s.valid()) fail("socket");
  const int flags = fcntl(s.get(), F_GETFL);
  fcntl(s.get(), F_SETFL, flags | O_NONBLOCK);
  if (::connect(s.get(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    if (errno != EINPROGRESS) fail("connect " + ep.to_string());
    pollfd pfd{s.get(), POLLOUT, 0};
    if (::poll(&pfd, 1, timeout_ms) <= 0) throw TransportError("connect timeout " + ep.to_string());
    int err = 0;
    socklen_t len = sizeof err;
    getsockopt(s.get(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) {
      errno = err;
      fail("connect " + ep.to_string());
    }
  }
  fcntl(s.get(), F_SETFL, flags);
  const int one = 1;
  setsockopt(s.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

Fd listen_tcp(const Endpoint& ep) {
  const sockaddr_in addr = resolve(ep);
  Fd s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!s.valid()) fail("socket");
  const int one = 1;
  setsockopt(s.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(s.get(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    fail("bind " + ep.to_string());
  }
  if (::listen(s.get(), 4) != 0) fail("listen");
  return s;
}

uint16_t local_port(const Fd& sock) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (getsockname(sock.get(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail("getsockname");
  return ntohs(addr.sin_port);
}

Fd accept_one(const Fd& listener) {
  while (true) {
    const int c = ::accept4(listener.get(), nullptr, nullptr, SOCK_CLOEXEC);
    if (c >= 0) {
      const int one = 1;
      setsockopt(c, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return Fd(c);
    }
    if (errno != EINTR) fail("accept");
  }
}

void send_all(const Fd& sock, std::string_view bytes) {
  size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n = ::send(sock.get(), bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    off += static_cast<size_t>(n);
  }
}

std::optional<std::string> try_recv_frame(const Fd& sock, wire::FrameDecoder& decoder,
                                          int timeout_ms) {
  char buf[8192];
  while (true) {
    if (auto frame = decoder.next()) return frame;
    pollfd pfd{sock.get(), POLLIN, 0};
    const int r = ::poll(&pfd, 1, timeout_ms);
    if (r == 0) return std::nullopt;
    if (r < 0) {
      if (errno == EINTR) continue;
      fail("poll");
    }
    const ssize_t n = ::recv(sock.get(), buf, sizeof buf, 0);
    if (n == 0) throw TransportError("connection closed by peer");
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("recv");
    }
    decoder.feed(std::string_view(buf, static_cast<size_t>(n)));
  }
}

std::string recv_frame(const Fd& sock, wire::FrameDecoder& decoder, int timeout_ms) {
  auto frame = try_recv_frame(sock, decoder, timeout_ms);
  if (!frame) throw TransportError("receive timeout");
  return std::move(*frame);
}

}  // namespace covrl::net
