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

#include "covrl/crash.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace covrl {
namespace {

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::string normalize_crash_text(std::string_view text) {
  std::string out;
  size_t lines = 0;
  size_t i = 0;
  while (i < text.size() && lines < 5) {
    const char c = text[i];
    if (c == '\n') {
      out.push_back('\n');
      ++lines;
      ++i;
    } else if (c == '0' && i + 1 < text.size() && (text[i + 1] | 0x20) == 'x') {
      i += 2;
      while (i < text.size() && is_hex(text[i])) ++i;
      out += "0x?";
    } else if (is_digit(c)) {
      while (i < text.size() && is_digit(text[i])) ++i;
      out.push_back('N');
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

std::string fingerprint_crash(const ExecutionResult& res) {
  const auto sig = res.outcome.signal();
  if (!sig) throw std::invalid_argument("fingerprint_crash: outcome is not a crash");
  const std::string key = std::to_string(*sig) + "|" + normalize_crash_text(res.stderr_head);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
  return buf;
}

CrashStore::CrashStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (e.path().extension() == ".js") buckets_.insert(e.path().stem().string());
  }
}

bool CrashStore::add(const std::string& bucket, std::string_view input,
                     std::string_view stderr_head) {
  if (!buckets_.insert(bucket).second) return false;
  std::ofstream(dir_ / (bucket + ".js"), std::ios::binary).write(input.data(), input.size());
  std::ofstream(dir_ / (bucket + ".stderr"), std::ios::binary)
      .write(stderr_head.data(), stderr_head.size());
  return true;
}

}  // namespace covrl
