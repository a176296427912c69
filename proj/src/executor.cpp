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

#include "covrl/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/resource.h>
#include <sys/shm.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "covrl/error.hpp"

extern char** environ;

namespace covrl {
namespace {

constexpr int kForkServerCtlFd = 198;
constexpr int kForkServerStFd = 199;
constexpr int kHandshakeTimeoutMs = 10000;

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

std::filesystem::path resolve_binary(const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  const char* path = std::getenv("PATH");
  std::string_view rest = path ? path : "";
  while (!rest.empty()) {
    const auto colon = rest.find(':');
    const auto dir = rest.substr(0, colon);
    auto candidate = std::filesystem::path(dir) / name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return name;
}

void set_nonblocking(int fd) { fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK); }

// Appends up to the head limit and discards the rest.
void keep_head(std::string& head, const char* data, size_t n) {
  if (head.size() < kStderrHeadBytes) {
    head.append(data, std::min(n, kStderrHeadBytes - head.size()));
  }
}

// Reads whatever is currently available. Returns false on EOF.
bool drain(int fd, std::string& head) {
  char buf[4096];
  while (true) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n > 0) {
      keep_head(head, buf, static_cast<size_t>(n));
      continue;
    }
    if (n == 0) return false;
    if (errno == EINTR) continue;
    return true;  // EAGAIN
  }
}

ProcessExit decode_status(int status) {
  if (WIFSIGNALED(status)) return ProcessExit::signaled(WTERMSIG(status));
  if (WIFEXITED(status)) return ProcessExit::exited(WEXITSTATUS(status));
  return ProcessExit::exited(0);
}

class Pipe {
 public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0) throw TargetError(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  int take_read() { return std::exchange(fds_[0], -1); }
  int take_write() { return std::exchange(fds_[1], -1); }
  void close_read() {
    if (fds_[0] >= 0) ::close(std::exchange(fds_[0], -1));
  }
  void close_write() {
    if (fds_[1] >= 0) ::close(std::exchange(fds_[1], -1));
  }

 private:
  int fds_[2] = {-1, -1};
};

}  // namespace

struct Executor::Impl {
  std::filesystem::path workdir;
  std::filesystem::path case_path;
  std::filesystem::path cov_path;
  std::filesystem::path binary;
  std::vector<std::string> argv;
  std::vector<std::string> env;
  size_t map_size = 0;

  int shm_id = -1;
  uint8_t* shm = nullptr;

  pid_t server_pid = -1;
  int server_ctl = -1;  // we write
  int server_st = -1;   // we read
  int server_err = -1;  // stderr of the server and its children

  ~Impl() {
    stop_server();
    if (shm) ::shmdt(shm);
    if (shm_id >= 0) ::shmctl(shm_id, IPC_RMID, nullptr);
    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
  }

  std::vector<char*> c_strings(std::vector<std::string>& v) {
    std::vector<char*> out;
    out.reserve(v.size() + 1);
    for (auto& s : v) out.push_back(s.data());
    out.push_back(nullptr);
    return out;
  }

  pid_t spawn(int stderr_fd, bool as_server, int ctl_read, int st_write,
              std::optional<uint32_t> mem_mb) {
    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_addopen(&fa, 0, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_addopen(&fa, 1, "/dev/null", O_WRONLY, 0);
    posix_spawn_file_actions_adddup2(&fa, stderr_fd, 2);
    if (as_server) {
      posix_spawn_file_actions_adddup2(&fa, ctl_read, kForkServerCtlFd);
      posix_spawn_file_actions_adddup2(&fa, st_write, kForkServerStFd);
    }
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    sigset_t none;
    sigemptyset(&none);
    sigset_t defaults;
    sigemptyset(&defaults);
    sigaddset(&defaults, SIGPIPE);
    sigaddset(&defaults, SIGINT);
    posix_spawnattr_setsigmask(&attr, &none);
    posix_spawnattr_setsigdefault(&attr, &defaults);
    posix_spawnattr_setpgroup(&attr, 0);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETSIGDEF |
                                        POSIX_SPAWN_SETPGROUP);
    auto av = c_strings(argv);
    std::vector<std::string> envs = env;
    if (as_server) envs.emplace_back("COVRL_FORKSRV=1");
    auto ev = c_strings(envs);
    pid_t pid = -1;
    const int rc = ::posix_spawn(&pid, binary.c_str(), &fa, &attr, av.data(), ev.data());
    posix_spawn_file_actions_destroy(&fa);
    posix_spawnattr_destroy(&attr);
    if (rc != 0) {
      throw TargetError("cannot spawn " + binary.string() + ": " + std::strerror(rc));
    }
    if (mem_mb) {
      const rlim_t bytes = static_cast<rlim_t>(*mem_mb) << 20;
      rlimit lim{bytes, bytes};
      ::prlimit(pid, RLIMIT_AS, &lim, nullptr);
    }
    return pid;
  }

  void start_server(std::optional<uint32_t> mem_mb) {
    Pipe ctl, st, err;
    server_pid = spawn(err.write_end(), true, ctl.read_end(), st.write_end(), mem_mb);
    server_ctl = ctl.take_write();
    server_st = st.take_read();
    server_err = err.take_read();
    set_nonblocking(server_err);
    uint32_t hello = 0;
    if (!read_exact(server_st, &hello, Clock::now() + std::chrono::milliseconds(kHandshakeTimeoutMs))) {
      stop_server();
      throw TargetError("fork server handshake failed for " + binary.string());
    }
  }

  void stop_server() {
    if (server_pid > 0) {
      ::kill(server_pid, SIGKILL);
      int st = 0;
      ::waitpid(server_pid, &st, 0);
      server_pid = -1;
    }
    for (int* fd : {&server_ctl, &server_st, &server_err}) {
      if (*fd >= 0) ::close(*fd);
      *fd = -1;
    }
  }

  // Reads 4 bytes before the deadline, draining server stderr meanwhile.
  bool read_exact(int fd, uint32_t* out, Clock::time_point deadline, std::string* head = nullptr) {
    auto* p = reinterpret_cast<char*>(out);
    size_t got = 0;
    while (got < 4) {
      pollfd pfds[2] = {{fd, POLLIN, 0}, {server_err, POLLIN, 0}};
      const int nfds = head && server_err >= 0 ? 2 : 1;
      const int r = ::poll(pfds, nfds, remaining_ms(deadline));
      if (r == 0) return false;
      if (r < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      if (nfds == 2 && (pfds[1].revents & (POLLIN | POLLHUP))) drain(server_err, *head);
      if (pfds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
        const ssize_t n = ::read(fd, p + got, 4 - got);
        if (n <= 0) {
          if (n < 0 && errno == EINTR) continue;
          return false;
        }
        got += static_cast<size_t>(n);
      }
    }
    return true;
  }

  void write_case(std::string_view bytes) {
    const int fd = ::open(case_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    if (fd < 0) throw TargetError("cannot write test case: " + std::string(std::strerror(errno)));
    size_t off = 0;
    while (off < bytes.size()) {
      const ssize_t n = ::write(fd, bytes.data() + off, bytes.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw TargetError("short write of test case");
      }
      off += static_cast<size_t>(n);
    }
    ::close(fd);
  }

  void reset_coverage() {
    if (shm) {
      std::memset(shm, 0, map_size);
    } else {
      ::unlink(cov_path.c_str());
    }
  }

  void collect_coverage(CoverageMap& cov) {
    auto dst = cov.counters();
    if (shm) {
      std::memcpy(dst.data(), shm, map_size);
      return;
    }
    const int fd = ::open(cov_path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) return;
    size_t off = 0;
    while (off < map_size) {
      const ssize_t n = ::read(fd, dst.data() + off, map_size - off);
      if (n <= 0) {
        if (n < 0 && errno == EINTR) continue;
        break;
      }
      off += static_cast<size_t>(n);
    }
    ::close(fd);
  }
};

void validate(const TargetConfig& cfg) {
  if (cfg.argv.empty()) throw ConfigError("target argv is empty");
  size_t placeholders = 0;
  for (const auto& a : cfg.argv) placeholders += a == kCasePlaceholder;
  if (placeholders != 1) {
    throw ConfigError("target argv must contain exactly one '@@' placeholder");
  }
  if (cfg.timeout_ms == 0) throw ConfigError("timeout_ms must be > 0");
  check_map_exponent(cfg.map_exponent);
  const auto bin = resolve_binary(cfg.argv.front());
  if (::access(bin.c_str(), X_OK) != 0) {
    throw ConfigError("target binary not executable: " + cfg.argv.front());
  }
}

Executor::Executor(TargetConfig cfg) : cfg_(std::move(cfg)), impl_(std::make_unique<Impl>()) {
  validate(cfg_);
  ::signal(SIGPIPE, SIG_IGN);
  auto& im = *impl_;
  im.map_size = size_t{1} << cfg_.map_exponent;
  im.binary = resolve_binary(cfg_.argv.front());

  std::string tmpl = (std::filesystem::temp_directory_path() / "covrl-exec-XXXXXX").string();
  if (!::mkdtemp(tmpl.data())) throw TargetError("mkdtemp failed");
  im.workdir = tmpl;
  im.case_path = im.workdir / "cur_input";
  im.cov_path = im.workdir / "coverage.bin";

  for (const auto& a : cfg_.argv) {
    im.argv.push_back(a == kCasePlaceholder ? im.case_path.string() : a);
  }

  auto overridden = [this](std::string_view entry) {
    const auto eq = entry.find('=');
    const auto key = entry.substr(0, eq);
    if (key == "COVRL_COV_PATH" || key == "COVRL_MAP_SIZE" || key == "__AFL_SHM_ID" ||
        key == "COVRL_FORKSRV") {
      return true;
    }
    for (const auto& [k, v] : cfg_.extra_env) {
      if (key == k) return true;
    }
    return false;
  };
  for (char** e = environ; e && *e; ++e) {
    if (!overridden(*e)) im.env.emplace_back(*e);
  }
  im.env.push_back("COVRL_MAP_SIZE=" + std::to_string(im.map_size));
  if (cfg_.coverage_channel == CoverageChannel::SharedRegion) {
    im.shm_id = ::shmget(IPC_PRIVATE, im.map_size, IPC_CREAT | IPC_EXCL | 0600);
    if (im.shm_id < 0) throw TargetError(std::string("shmget: ") + std::strerror(errno));
    void* p = ::shmat(im.shm_id, nullptr, 0);
    if (p == reinterpret_cast<void*>(-1)) throw TargetError(std::string("shmat: ") + std::strerror(errno));
    im.shm = static_cast<uint8_t*>(p);
    im.env.push_back("__AFL_SHM_ID=" + std::to_string(im.shm_id));
  } else {
    im.env.push_back("COVRL_COV_PATH=" + im.cov_path.string());
  }
  for (const auto& [k, v] : cfg_.extra_env) im.env.push_back(k + "=" + v);
}

Executor::~Executor() = default;

ExecutionResult Executor::execute(std::string_view case_bytes) {
  auto& im = *impl_;
  ExecutionResult res{Outcome::pass(), CoverageMap(cfg_.map_exponent), 0, {}, {}};
  im.write_case(case_bytes);
  im.reset_coverage();

  const auto start = Clock::now();
  const auto deadline = start + std::chrono::milliseconds(cfg_.timeout_ms);
  bool timed_out = false;
  int status = 0;

  if (cfg_.fork_server) {
    for (int attempt = 0;; ++attempt) {
      if (im.server_pid < 0) im.start_server(cfg_.memory_limit_mb);
      const uint32_t go = 0;
      uint32_t child = 0;
      const bool sent = ::write(im.server_ctl, &go, 4) == 4;
      if (sent && im.read_exact(im.server_st, &child, Clock::now() + std::chrono::seconds(10))) {
        uint32_t st = 0;
        if (!im.read_exact(im.server_st, &st, deadline, &res.stderr_head)) {
          timed_out = true;
          ::kill(static_cast<pid_t>(child), SIGKILL);
          if (!im.read_exact(im.server_st, &st, Clock::now() + std::chrono::seconds(10),
                             &res.stderr_head)) {
            im.stop_server();
          }
        }
        status = static_cast<int>(st);
        if (im.server_err >= 0) drain(im.server_err, res.stderr_head);
        break;
      }
      im.stop_server();
      if (attempt == 1) throw TargetError("fork server died twice in a row");
    }
  } else {
    Pipe err;
    const pid_t pid = im.spawn(err.write_end(), false, -1, -1, cfg_.memory_limit_mb);
    err.close_write();
    set_nonblocking(err.read_end());
    bool open = true;
    while (open) {
      pollfd pfd{err.read_end(), POLLIN, 0};
      const int r = ::poll(&pfd, 1, remaining_ms(deadline));
      if (r == 0) {
        timed_out = true;
        break;
      }
      if (r < 0 && errno != EINTR) break;
      if (r > 0) open = drain(err.read_end(), res.stderr_head);
    }
    while (!timed_out) {
      const pid_t w = ::waitpid(pid, &status, WNOHANG);
      if (w == pid) break;
      if (w < 0 && errno != EINTR) break;
      if (Clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::microseconds(20));
    }
    if (timed_out) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      drain(err.read_end(), res.stderr_head);
    }
  }

  res.wall_ms = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  im.collect_coverage(res.coverage);
  res.exit = decode_status(status);
  res.outcome = timed_out ? Outcome::timeout() : classify_stderr(res.stderr_head, res.exit);
  return res;
}

std::filesystem::path default_toy_target() {
  if (const char* env = std::getenv("COVRL_TOY_TARGET"); env && *env) return env;
  std::error_code ec;
  const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return self.parent_path() / "covrl-toy";
  return "covrl-toy";
}

}  // namespace covrl
