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

#include "covrl/tokens.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace covrl {
namespace {

constexpr std::array<std::string_view, 46> kKeywords = {
    "async",  "await",    "break",  "case",    "catch",    "class",      "const",
    "continue", "debugger", "default", "delete", "do",      "else",       "export",
    "extends", "false",   "finally", "for",    "function", "if",         "import",
    "in",     "instanceof", "let",  "new",     "null",     "of",         "return",
    "static", "super",    "switch", "this",    "throw",    "true",       "try",
    "typeof", "undefined", "var",   "void",    "while",    "with",       "yield",
    "get",    "set",      "enum",   "arguments",
};

// Longest first within each leading character is not required: we try every
// candidate and keep the longest match.
constexpr std::array<std::string_view, 52> kPunctuators = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?\?=",
    "=>",   "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "**",  "<<",  ">>",
    "{",    "}",   "(",   ")",   "[",   "]",   ";",   ",",   "<",   ">",   "+",
    "-",    "*",   "/",   "%",   "&",   "|",   "^",   "!",
};
constexpr std::array<std::string_view, 5> kSinglePunctuators = {"~", "?", ":", "=", "."};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(unsigned char c) {
  return is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool is_ident_part(unsigned char c) { return is_ident_start(c) || is_ascii_digit(c); }
bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Replaces every ill-formed UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  size_t i = 0;
  while (i < in.size()) {
    const auto c = static_cast<unsigned char>(in[i]);
    size_t len = 0;
    uint32_t min_cp = 0;
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      min_cp = 0x80;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      min_cp = 0x800;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      min_cp = 0x10000;
    }
    bool ok = len != 0 && i + len <= in.size();
    uint32_t cp = len ? (c & (0x7f >> len)) : 0;
    for (size_t k = 1; ok && k < len; ++k) {
      const auto d = static_cast<unsigned char>(in[i + k]);
      if ((d & 0xc0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (d & 0x3f);
      }
    }
    if (ok && (cp < min_cp || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))) ok = false;
    if (ok) {
      out.append(in.substr(i, len));
      i += len;
    } else {
      out.append("\xef\xbf\xbd");
      ++i;
    }
  }
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : s_(src) {}

  TokenStream run() {
    while (true) {
      skip_trivia();
      if (pos_ >= s_.size()) break;
      lex_one();
    }
    return std::move(out_);
  }

 private:
  unsigned char at(size_t i) const {
    return i < s_.size() ? static_cast<unsigned char>(s_[i]) : 0;
  }

  void skip_trivia() {
    while (pos_ < s_.size()) {
      const unsigned char c = at(pos_);
      if (is_space(c)) {
        ++pos_;
      } else if (c == 0xc2 && at(pos_ + 1) == 0xa0) {  // no-break space
        pos_ += 2;
      } else if (c == '/' && at(pos_ + 1) == '/') {
        while (pos_ < s_.size() && at(pos_) != '\n') ++pos_;
      } else if (c == '/' && at(pos_ + 1) == '*') {
        const size_t end = s_.find("*/", pos_ + 2);
        pos_ = end == std::string_view::npos ? s_.size() : end + 2;
      } else {
        break;
      }
    }
  }

  void emit(size_t start, TokenKind kind) {
    out_.push(std::string(s_.substr(start, pos_ - start)), kind);
  }

  bool regex_allowed() const {
    if (out_.empty()) return true;
    const std::string& prev = out_.tokens.back();
    switch (out_.kinds.back()) {
      case TokenKind::Identifier:
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::TemplateChunk:
      case TokenKind::Regex:
        return false;
      case TokenKind::Keyword:
        return !(prev == "this" || prev == "super" || prev == "true" || prev == "false" ||
                 prev == "null" || prev == "undefined" || prev == "arguments");
      case TokenKind::Punctuator:
        return !(prev == ")" || prev == "]" || prev == "}" || prev == "++" || prev == "--");
      case TokenKind::Sentinel:
        return true;
    }
    return true;
  }

  void lex_one() {
    const size_t start = pos_;
    const unsigned char c = at(pos_);
    if (is_ident_start(c)) {
      while (pos_ < s_.size() && is_ident_part(at(pos_))) ++pos_;
      const auto word = s_.substr(start, pos_ - start);
      emit(start, is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier);
      return;
    }
    if (is_ascii_digit(c) || (c == '.' && is_ascii_digit(at(pos_ + 1)))) {
      lex_number();
      emit(start, TokenKind::Number);
      return;
    }
    if ((c == '"' || c == '\'') && scan_quoted(c)) {
      emit(start, TokenKind::String);
      return;
    }
    if (c == '`' && scan_quoted('`')) {
      emit(start, TokenKind::TemplateChunk);
      return;
    }
    if (c == '/' && regex_allowed() && scan_regex()) {
      emit(start, TokenKind::Regex);
      return;
    }
    lex_punctuator();
    emit(start, TokenKind::Punctuator);
  }

  void lex_number() {
    const unsigned char c = at(pos_);
    if (c == '0') {
      const unsigned char p = at(pos_ + 1) | 0x20;
      auto radix_digit = [p](unsigned char d) {
        if (p == 'x') return is_hex_digit(d);
        if (p == 'b') return d == '0' || d == '1';
        return d >= '0' && d <= '7';
      };
      if ((p == 'x' || p == 'b' || p == 'o') && radix_digit(at(pos_ + 2))) {
        pos_ += 2;
        while (radix_digit(at(pos_))) ++pos_;
        if (at(pos_) == 'n') ++pos_;
        return;
      }
    }
    while (is_ascii_digit(at(pos_))) ++pos_;
    if (at(pos_) == 'n') {
      ++pos_;
      return;
    }
    if (at(pos_) == '.') {
      ++pos_;
      while (is_ascii_digit(at(pos_))) ++pos_;
    }
    if ((at(pos_) | 0x20) == 'e') {
      size_t q = pos_ + 1;
      if (at(q) == '+' || at(q) == '-') ++q;
      if (is_ascii_digit(at(q))) {
        pos_ = q;
        while (is_ascii_digit(at(pos_))) ++pos_;
      }
    }
  }

  // Scans a quote-delimited literal. Leaves pos_ untouched and returns false
  // when the literal is unterminated.
  bool scan_quoted(unsigned char quote) {
    size_t i = pos_ + 1;
    while (i < s_.size()) {
      const unsigned char c = at(i);
      if (c == '\\') {
        i += 2;
      } else if (c == quote) {
        pos_ = i + 1;
        return true;
      } else {
        ++i;
      }
    }
    return false;
  }

  bool scan_regex() {
    size_t i = pos_ + 1;
    bool in_class = false;
    while (i < s_.size()) {
      const unsigned char c = at(i);
      if (c == '\\') {
        i += 2;
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) {
        ++i;
        while (i < s_.size() && is_ident_part(at(i))) ++i;
        pos_ = i;
        return true;
      }
      ++i;
    }
    return false;
  }

  void lex_punctuator() {
    size_t best = 0;
    const auto rest = s_.substr(pos_);
    for (std::string_view p : kPunctuators) {
      if (p.size() > best && rest.starts_with(p)) best = p.size();
    }
    // "?." does not start an optional chain when a digit follows.
    if (best == 2 && rest.starts_with("?.") && is_ascii_digit(at(pos_ + 2))) best = 1;
    if (best == 0) {
      for (std::string_view p : kSinglePunctuators) {
        if (rest.starts_with(p)) best = 1;
      }
    }
    pos_ += best == 0 ? 1 : best;
  }

  std::string_view s_;
  size_t pos_ = 0;
  TokenStream out_;
};

constexpr std::string_view kSentinelPrefix = "<extra_id_";

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "Identifier";
    case TokenKind::Keyword: return "Keyword";
    case TokenKind::Number: return "Number";
    case TokenKind::String: return "String";
    case TokenKind::Punctuator: return "Punctuator";
    case TokenKind::TemplateChunk: return "TemplateChunk";
    case TokenKind::Regex: return "Regex";
    case TokenKind::Sentinel: return "Sentinel";
  }
  return "Punctuator";
}

TokenStream tokenize(std::string_view source) {
  const std::string clean = sanitize_utf8(source);
  return Lexer(clean).run();
}

std::string detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string sentinel(size_t index) {
  return std::string(kSentinelPrefix) + std::to_string(index) + ">";
}

std::optional<size_t> sentinel_index(std::string_view token) {
  if (!token.starts_with(kSentinelPrefix) || !token.ends_with(">")) return std::nullopt;
  const auto digits = token.substr(kSentinelPrefix.size(),
                                   token.size() - kSentinelPrefix.size() - 1);
  if (digits.empty() || (digits.size() > 1 && digits[0] == '0')) return std::nullopt;
  size_t value = 0;
  const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace covrl
