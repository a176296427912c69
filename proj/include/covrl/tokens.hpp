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

// JavaScript-flavored lexer. It is not a parser: it only needs to cut source
// text into tokens that survive being joined with single spaces.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace covrl {

enum class TokenKind {
  Identifier,
  Keyword,
  Number,
  String,
  Punctuator,
  TemplateChunk,
  Regex,
  Sentinel,  // mask slot, never produced by tokenize()
};

std::string_view to_string(TokenKind kind);

struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<TokenKind> kinds;

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  void push(std::string text, TokenKind kind) {
    tokens.push_back(std::move(text));
    kinds.push_back(kind);
  }

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

// Total: never fails. Comments are dropped, unknown bytes become one-byte
// punctuators, invalid UTF-8 is replaced with U+FFFD first.
TokenStream tokenize(std::string_view source);

// Single-space join.
std::string detokenize(std::span<const std::string> tokens);
inline std::string detokenize(const TokenStream& ts) { return detokenize(ts.tokens); }

// "<extra_id_N>"
std::string sentinel(size_t index);
std::optional<size_t> sentinel_index(std::string_view token);

}  // namespace covrl
