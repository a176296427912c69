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

// Crash deduplication by a normalized stderr signature.

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "covrl/executor.hpp"

namespace covrl {

// First five lines with hex addresses and decimal runs masked out.
std::string normalize_crash_text(std::string_view stderr_text);

// 16 hex digits: FNV-1a over the signal and the normalized text.
// Throws std::invalid_argument unless the outcome is a crash.
std::string fingerprint_crash(const ExecutionResult& res);

// Keeps one input per crash bucket under `dir`.
class CrashStore {
 public:
  explicit CrashStore(std::filesystem::path dir);

  // Returns true when the bucket is new (and the input was written).
  bool add(const std::string& bucket, std::string_view input, std::string_view stderr_head);

  size_t bucket_count() const { return buckets_.size(); }
  const std::set<std::string>& buckets() const { return buckets_; }

 private:
  std::filesystem::path dir_;
  std::set<std::string> buckets_;
};

}  // namespace covrl
