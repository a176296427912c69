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

// covrl-toy: a small, self-instrumented interpreter for a JavaScript subset.
//
// It stands in for a real engine when testing the fuzzer: every interesting
// branch calls EDGE(name), which bumps a counter in the coverage map, and
// failures print JavaScript-style error lines on stderr.
//
// Language: numbers, strings, booleans, null/undefined, arrays; let/var/const;
// if/else, while, for, break, continue; function declarations with return;
// calls to builtins and a few array/string methods; typeof.
//
// Exit status: 0 on success, 1 after printing "<Kind>Error: ..." on stderr.
// Three deliberately planted bugs terminate the process with a signal.
//
// Environment:
//   COVRL_MAP_SIZE   map size M (default 65536)
//   __AFL_SHM_ID     System V segment to record coverage into
//   COVRL_COV_PATH   otherwise, file receiving the M-byte map at exit
//   COVRL_TRACE=1    print "[edge <id>] <name>" to stderr on first hit
//   COVRL_FORKSRV=1  run the fork-server loop on fds 198/199
//
// Usage: covrl-toy <testcase>      covrl-toy --edge-count

#include <fcntl.h>
#include <signal.h>
#include <sys/shm.h>
#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace toycov {

uint8_t* g_map = nullptr;
uint32_t g_mask = 0;
bool g_trace = false;
bool g_shared = false;
const char* g_out_path = nullptr;
std::vector<uint8_t> g_local;
uint8_t g_traced[8192];

inline void hit(uint32_t id, const char* name) {
  if (!g_map) return;
  uint8_t& c = g_map[id & g_mask];
  if (c != 0xff) ++c;
  if (g_trace && !g_traced[id & 8191]) {
    g_traced[id & 8191] = 1;
    std::fprintf(stderr, "[edge %u] %s\n", id, name);
  }
}

void init() {
  uint32_t size = 65536;
  if (const char* s = std::getenv("COVRL_MAP_SIZE")) {
    const long v = std::strtol(s, nullptr, 10);
    if (v >= 256 && v <= (1L << 24) && (v & (v - 1)) == 0) size = static_cast<uint32_t>(v);
  }
  g_mask = size - 1;
  g_trace = std::getenv("COVRL_TRACE") && std::strcmp(std::getenv("COVRL_TRACE"), "1") == 0;
  if (const char* id = std::getenv("__AFL_SHM_ID")) {
    void* p = shmat(std::atoi(id), nullptr, 0);
    if (p != reinterpret_cast<void*>(-1)) {
      g_map = static_cast<uint8_t*>(p);
      g_shared = true;
      return;
    }
  }
  g_local.assign(size, 0);
  g_map = g_local.data();
  g_out_path = std::getenv("COVRL_COV_PATH");
}

void flush() {
  if (g_shared || !g_out_path) return;
  const int fd = ::open(g_out_path, O_WRONLY | O_CREAT | O_TRUNC, 0600);
  if (fd < 0) return;
  size_t off = 0;
  while (off < g_local.size()) {
    const ssize_t n = ::write(fd, g_local.data() + off, g_local.size() - off);
    if (n <= 0) break;
    off += static_cast<size_t>(n);
  }
  ::close(fd);
}

}  // namespace toycov

#define EDGE(name) ::toycov::hit(__COUNTER__, name)

// Buckets a count into 0, 1, 2-3, 4-7, 8-15, 16-31, 32+.
inline int log_bucket(size_t n) {
  if (n == 0) return 0;
  int b = 1;
  while (n > 1 && b < 6) {
    n >>= 1;
    ++b;
  }
  return b;
}

#define EDGE_BUCKET7(name, b)  \
  switch (b) {                 \
    case 0: EDGE(name "/0"); break;  \
    case 1: EDGE(name "/1"); break;  \
    case 2: EDGE(name "/2-3"); break; \
    case 3: EDGE(name "/4-7"); break; \
    case 4: EDGE(name "/8-15"); break; \
    case 5: EDGE(name "/16-31"); break; \
    default: EDGE(name "/32+"); break; \
  }

namespace toy {

[[noreturn]] void finish(int code) {
  std::fflush(stdout);
  std::fflush(stderr);
  toycov::flush();
  std::_Exit(code);
}

[[noreturn]] void throw_error(const char* kind, const std::string& msg) {
  std::fprintf(stderr, "%s: %s\n", kind, msg.c_str());
  finish(1);
}

[[noreturn]] void syntax_error(const std::string& msg) {
  EDGE("fail.syntax");
  throw_error("SyntaxError", msg);
}
[[noreturn]] void type_error(const std::string& msg) {
  EDGE("fail.type");
  throw_error("TypeError", msg);
}
[[noreturn]] void reference_error(const std::string& msg) {
  EDGE("fail.reference");
  throw_error("ReferenceError", msg);
}
[[noreturn]] void range_error(const std::string& msg) {
  EDGE("fail.range");
  throw_error("RangeError", msg);
}
[[noreturn]] void uri_error(const std::string& msg) {
  EDGE("fail.uri");
  throw_error("URIError", msg);
}
[[noreturn]] void internal_error(const std::string& msg) {
  EDGE("fail.internal");
  throw_error("InternalError", msg);
}

// Planted bug: print a sanitizer-like report with live addresses, then die.
[[noreturn]] void planted_crash(int sig, const char* where, const void* obj, size_t detail) {
  std::fprintf(stderr, "==%d==ERROR: toy-sanitizer: planted bug in %s\n", static_cast<int>(getpid()),
               where);
  std::fprintf(stderr, "    #0 %p in %s (object %p, detail %zu)\n",
               reinterpret_cast<const void*>(&planted_crash), where, obj, detail);
  std::fprintf(stderr, "    #1 %p in toy::Interp::run\n", static_cast<const void*>(&obj));
  std::fflush(stderr);
  toycov::flush();
  if (sig == SIGABRT) std::abort();
  ::signal(sig, SIG_DFL);
  ::raise(sig);
  std::_Exit(128 + sig);
}

// ---------------------------------------------------------------- lexer

enum class Tok { Num, Str, Ident, Keyword, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  double num = 0;
};

bool is_keyword(std::string_view w) {
  static const char* const kws[] = {"let",   "var",    "const",  "if",       "else",
                                    "while", "for",    "break",  "continue", "function",
                                    "return", "true",  "false",  "null",     "undefined",
                                    "typeof", "class", "new",    "this",     "await",
                                    "async", "try",    "catch",  "throw",    "of",
                                    "in",    "do",     "switch", "case",     "default",
                                    "delete", "void",  "yield",  "static",   "extends",
                                    "super", "import", "export", "with",     "instanceof"};
  for (const char* k : kws) {
    if (w == k) return true;
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : s_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      if (p_ >= s_.size()) break;
      out.push_back(next());
    }
    out.push_back({Tok::End, "", 0});
    EDGE_BUCKET7("lex.token_count", log_bucket(out.size()));
    return out;
  }

 private:
  char at(size_t i) const { return i < s_.size() ? s_[i] : '\0'; }

  void skip() {
    while (p_ < s_.size()) {
      const char c = s_[p_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++p_;
      } else if (c == '\n') {
        EDGE("lex.newline");
        ++p_;
      } else if (c == '/' && at(p_ + 1) == '/') {
        EDGE("lex.line_comment");
        while (p_ < s_.size() && s_[p_] != '\n') ++p_;
      } else if (c == '/' && at(p_ + 1) == '*') {
        const size_t end = s_.find("*/", p_ + 2);
        if (end == std::string_view::npos) syntax_error("Invalid or unexpected token");
        EDGE("lex.block_comment");
        p_ = end + 2;
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
  }
  static bool digit(char c) { return c >= '0' && c <= '9'; }

  Token next() {
    const char c = s_[p_];
    if (ident_start(c)) {
      const size_t b = p_;
      while (p_ < s_.size() && (ident_start(s_[p_]) || digit(s_[p_]))) ++p_;
      std::string w(s_.substr(b, p_ - b));
      if (is_keyword(w)) {
        EDGE("lex.keyword");
        return {Tok::Keyword, w, 0};
      }
      EDGE("lex.identifier");
      return {Tok::Ident, w, 0};
    }
    if (digit(c) || (c == '.' && digit(at(p_ + 1)))) return number();
    if (c == '"' || c == '\'') return string(c);
    if (c == '`') {
      EDGE("lex.template_rejected");
      syntax_error("Unexpected template string");
    }
    static const char* const puncts[] = {"===", "!==", "==", "!=", "<=", ">=", "&&", "||",
                                         "+=",  "-=",  "*=", "++", "--", "{",  "}",  "(",
                                         ")",   "[",   "]",  ";",  ",",  "<",  ">",  "+",
                                         "-",   "*",   "/",  "%",  "!",  "=",  ".",  "?",
                                         ":"};
    for (const char* p : puncts) {
      const size_t n = std::strlen(p);
      if (s_.substr(p_, n) == p) {
        p_ += n;
        if (n == 3) EDGE("lex.punct3");
        else if (n == 2) EDGE("lex.punct2");
        else EDGE("lex.punct1");
        return {Tok::Punct, p, 0};
      }
    }
    EDGE("lex.bad_char");
    syntax_error("Invalid or unexpected token");
  }

  Token number() {
    const size_t b = p_;
    double v = 0;
    if (s_[p_] == '0' && (at(p_ + 1) == 'x' || at(p_ + 1) == 'X')) {
      EDGE("lex.number.hex");
      p_ += 2;
      const size_t hb = p_;
      while (p_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      if (p_ == hb) syntax_error("Invalid or unexpected token");
      v = static_cast<double>(std::strtoull(std::string(s_.substr(hb, p_ - hb)).c_str(), nullptr, 16));
    } else {
      bool frac = false;
      while (digit(at(p_))) ++p_;
      if (at(p_) == '.') {
        frac = true;
        ++p_;
        while (digit(at(p_))) ++p_;
      }
      if (at(p_) == 'e' || at(p_) == 'E') {
        size_t q = p_ + 1;
        if (at(q) == '+' || at(q) == '-') ++q;
        if (digit(at(q))) {
          EDGE("lex.number.exponent");
          p_ = q;
          while (digit(at(p_))) ++p_;
        }
      }
      if (frac) EDGE("lex.number.fraction");
      else EDGE("lex.number.int");
      v = std::strtod(std::string(s_.substr(b, p_ - b)).c_str(), nullptr);
    }
    if (ident_start(at(p_))) {
      EDGE("lex.number.bad_suffix");
      syntax_error("Invalid or unexpected token");
    }
    return {Tok::Num, std::string(s_.substr(b, p_ - b)), v};
  }

  Token string(char q) {
    if (q == '"') EDGE("lex.string.double");
    else EDGE("lex.string.single");
    ++p_;
    std::string out;
    while (true) {
      if (p_ >= s_.size() || s_[p_] == '\n') {
        EDGE("lex.string.unterminated");
        syntax_error("Invalid or unexpected token");
      }
      const char c = s_[p_++];
      if (c == q) break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      const char e = at(p_++);
      switch (e) {
        case 'n': EDGE("lex.escape.n"); out.push_back('\n'); break;
        case 't': EDGE("lex.escape.t"); out.push_back('\t'); break;
        case '\\': EDGE("lex.escape.backslash"); out.push_back('\\'); break;
        case '\'':
        case '"': EDGE("lex.escape.quote"); out.push_back(e); break;
        case 'x': {
          EDGE("lex.escape.hex");
          if (!std::isxdigit(static_cast<unsigned char>(at(p_))) ||
              !std::isxdigit(static_cast<unsigned char>(at(p_ + 1)))) {
            syntax_error("Invalid hexadecimal escape sequence");
          }
          out.push_back(static_cast<char>(std::strtol(std::string(s_.substr(p_, 2)).c_str(), nullptr, 16)));
          p_ += 2;
          break;
        }
        default: EDGE("lex.escape.other"); out.push_back(e); break;
      }
    }
    EDGE_BUCKET7("lex.string.length", log_bucket(out.size()));
    return {Tok::Str, out, 0};
  }

  std::string_view s_;
  size_t p_ = 0;
};

// ---------------------------------------------------------------- AST

enum class Ex {
  Num, Str, Bool, Null, Undef, Ident, Array, Unary, Binary, Logical, Cond, Assign, Call,
  Index, Member, Typeof, Update
};

struct Expr {
  Ex kind;
  std::string op;  // operator, identifier or member name
  double num = 0;
  std::string str;
  bool flag = false;  // bool literal / prefix update
  std::vector<std::unique_ptr<Expr>> kids;
};
using ExprP = std::unique_ptr<Expr>;

enum class St { Decl, If, While, For, Break, Continue, Block, ExprSt, Empty, Func, Return };

struct Stmt {
  St kind;
  std::string op;  // decl kind or function name
  std::vector<std::string> names;
  std::vector<ExprP> exprs;  // initializers / condition / expression
  std::vector<std::unique_ptr<Stmt>> body;
};
using StmtP = std::unique_ptr<Stmt>;

ExprP make(Ex k) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  return e;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  std::vector<StmtP> program() {
    EDGE("parse.program");
    std::vector<StmtP> out;
    while (peek().kind != Tok::End) out.push_back(statement());
    if (out.empty()) EDGE("parse.empty_program");
    EDGE_BUCKET7("parse.statement_count", log_bucket(out.size()));
    return out;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(int& d) : d_(d) {
      if (++d_ > 48) internal_error("too much recursion");
    }
    ~DepthGuard() { --d_; }
    int& d_;
  };

  const Token& peek(size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool is(const char* text) const {
    const Token& t = peek();
    return (t.kind == Tok::Punct || t.kind == Tok::Keyword) && t.text == text;
  }
  bool accept(const char* text) {
    if (!is(text)) return false;
    ++i_;
    return true;
  }
  [[noreturn]] void unexpected() {
    const Token& t = peek();
    if (t.kind == Tok::End) {
      EDGE("parse.unexpected_end");
      syntax_error("Unexpected end of input");
    }
    EDGE("parse.unexpected_token");
    syntax_error("Unexpected token '" + t.text + "'");
  }
  void expect(const char* text) {
    if (!accept(text)) unexpected();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) unexpected();
    return t_[i_++].text;
  }
  void semicolon() {
    if (accept(";")) return;
    if (is("}") || peek().kind == Tok::End) {
      EDGE("parse.asi");
      return;
    }
    unexpected();
  }

  StmtP stmt(St k) {
    auto s = std::make_unique<Stmt>();
    s->kind = k;
    return s;
  }

  StmtP statement() {
    DepthGuard g(depth_);
    const Token& t = peek();
    if (t.kind == Tok::Keyword) {
      if (t.text == "let" || t.text == "var" || t.text == "const") return declaration(true);
      if (t.text == "if") return if_statement();
      if (t.text == "while") return while_statement();
      if (t.text == "for") return for_statement();
      if (t.text == "function") return function_declaration();
      if (t.text == "return") {
        ++i_;
        if (fn_depth_ == 0) {
          EDGE("parse.return.outside");
          syntax_error("Illegal return statement");
        }
        auto s = stmt(St::Return);
        if (!is(";") && !is("}") && peek().kind != Tok::End) {
          EDGE("parse.return.value");
          s->exprs.push_back(expression());
        } else {
          EDGE("parse.return.bare");
        }
        semicolon();
        return s;
      }
      if (t.text == "break" || t.text == "continue") {
        const bool brk = t.text == "break";
        ++i_;
        if (loop_depth_ == 0) {
          EDGE("parse.jump.outside_loop");
          syntax_error(brk ? "Illegal break statement" : "Illegal continue statement");
        }
        if (brk) EDGE("parse.break");
        else EDGE("parse.continue");
        semicolon();
        return stmt(brk ? St::Break : St::Continue);
      }
    }
    if (accept("{")) {
      EDGE("parse.block");
      auto s = stmt(St::Block);
      while (!accept("}")) {
        if (peek().kind == Tok::End) unexpected();
        s->body.push_back(statement());
      }
      EDGE_BUCKET7("parse.block_size", log_bucket(s->body.size()));
      return s;
    }
    if (accept(";")) {
      EDGE("parse.empty_statement");
      return stmt(St::Empty);
    }
    EDGE("parse.expression_statement");
    auto s = stmt(St::ExprSt);
    s->exprs.push_back(expression());
    semicolon();
    return s;
  }

  StmtP declaration(bool need_semicolon) {
    auto s = stmt(St::Decl);
    s->op = t_[i_++].text;
    if (s->op == "let") EDGE("parse.decl.let");
    else if (s->op == "var") EDGE("parse.decl.var");
    else EDGE("parse.decl.const");
    do {
      s->names.push_back(ident());
      if (accept("=")) {
        EDGE("parse.decl.init");
        s->exprs.push_back(assignment());
      } else {
        if (s->op == "const") {
          EDGE("parse.decl.const_without_init");
          syntax_error("Missing initializer in const declaration");
        }
        EDGE("parse.decl.no_init");
        s->exprs.push_back(make(Ex::Undef));
      }
    } while (accept(","));
    if (s->names.size() > 1) EDGE("parse.decl.multiple");
    if (need_semicolon) semicolon();
    return s;
  }

  StmtP if_statement() {
    ++i_;
    EDGE("parse.if");
    auto s = stmt(St::If);
    expect("(");
    s->exprs.push_back(expression());
    expect(")");
    s->body.push_back(statement());
    if (accept("else")) {
      if (is("if")) EDGE("parse.else_if");
      else EDGE("parse.else");
      s->body.push_back(statement());
    }
    return s;
  }

  StmtP while_statement() {
    ++i_;
    EDGE("parse.while");
    auto s = stmt(St::While);
    expect("(");
    s->exprs.push_back(expression());
    expect(")");
    ++loop_depth_;
    s->body.push_back(statement());
    --loop_depth_;
    return s;
  }

  StmtP for_statement() {
    ++i_;
    EDGE("parse.for");
    auto s = stmt(St::For);
    expect("(");
    if (accept(";")) {
      EDGE("parse.for.no_init");
      s->body.push_back(stmt(St::Empty));
    } else if (is("let") || is("var") || is("const")) {
      EDGE("parse.for.decl_init");
      s->body.push_back(declaration(false));
      if (is("of") || is("in")) {
        EDGE("parse.for.of_in_rejected");
        syntax_error("for-in/of loops are not supported");
      }
      expect(";");
    } else {
      EDGE("parse.for.expr_init");
      auto init = stmt(St::ExprSt);
      init->exprs.push_back(expression());
      s->body.push_back(std::move(init));
      expect(";");
    }
    if (is(";")) {
      EDGE("parse.for.no_cond");
      auto t = make(Ex::Bool);
      t->flag = true;
      s->exprs.push_back(std::move(t));
    } else {
      s->exprs.push_back(expression());
    }
    expect(";");
    if (is(")")) {
      EDGE("parse.for.no_update");
      s->exprs.push_back(make(Ex::Undef));
    } else {
      s->exprs.push_back(expression());
    }
    expect(")");
    ++loop_depth_;
    s->body.push_back(statement());
    --loop_depth_;
    return s;
  }

  StmtP function_declaration() {
    ++i_;
    EDGE("parse.function");
    auto s = stmt(St::Func);
    s->op = ident();
    expect("(");
    if (!is(")")) {
      do {
        s->names.push_back(ident());
      } while (accept(","));
    }
    expect(")");
    EDGE_BUCKET7("parse.function.params", log_bucket(s->names.size()));
    expect("{");
    ++fn_depth_;
    const int saved_loops = loop_depth_;
    loop_depth_ = 0;
    auto body = stmt(St::Block);
    while (!accept("}")) {
      if (peek().kind == Tok::End) unexpected();
      body->body.push_back(statement());
    }
    loop_depth_ = saved_loops;
    --fn_depth_;
    s->body.push_back(std::move(body));
    return s;
  }

  ExprP expression() {
    DepthGuard g(depth_);
    auto e = assignment();
    if (is(",")) {
      EDGE("parse.comma_rejected");
      unexpected();
    }
    return e;
  }

  ExprP assignment() {
    DepthGuard g(depth_);
    auto lhs = conditional();
    for (const char* op : {"=", "+=", "-=", "*="}) {
      if (!is(op)) continue;
      if (lhs->kind != Ex::Ident && lhs->kind != Ex::Index && lhs->kind != Ex::Member) {
        EDGE("parse.assign.bad_target");
        syntax_error("Invalid left-hand side in assignment");
      }
      ++i_;
      if (op[0] == '=') EDGE("parse.assign.plain");
      else EDGE("parse.assign.compound");
      auto e = make(Ex::Assign);
      e->op = op;
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(assignment());
      return e;
    }
    return lhs;
  }

  ExprP conditional() {
    auto c = logical_or();
    if (!accept("?")) return c;
    EDGE("parse.conditional");
    auto e = make(Ex::Cond);
    e->kids.push_back(std::move(c));
    e->kids.push_back(assignment());
    expect(":");
    e->kids.push_back(assignment());
    return e;
  }

  ExprP logical_or() {
    auto l = logical_and();
    while (is("||")) {
      ++i_;
      EDGE("parse.or");
      auto e = make(Ex::Logical);
      e->op = "||";
      e->kids.push_back(std::move(l));
      e->kids.push_back(logical_and());
      l = std::move(e);
    }
    return l;
  }

  ExprP logical_and() {
    auto l = equality();
    while (is("&&")) {
      ++i_;
      EDGE("parse.and");
      auto e = make(Ex::Logical);
      e->op = "&&";
      e->kids.push_back(std::move(l));
      e->kids.push_back(equality());
      l = std::move(e);
    }
    return l;
  }

  ExprP binary_level(ExprP (Parser::*sub)(), std::initializer_list<const char*> ops) {
    auto l = (this->*sub)();
    while (true) {
      const char* hit = nullptr;
      for (const char* op : ops) {
        if (is(op)) hit = op;
      }
      if (!hit) return l;
      ++i_;
      auto e = make(Ex::Binary);
      e->op = hit;
      e->kids.push_back(std::move(l));
      e->kids.push_back((this->*sub)());
      l = std::move(e);
    }
  }

  ExprP equality() { return binary_level(&Parser::relational, {"===", "!==", "==", "!="}); }
  ExprP relational() { return binary_level(&Parser::additive, {"<=", ">=", "<", ">"}); }
  ExprP additive() { return binary_level(&Parser::multiplicative, {"+", "-"}); }
  ExprP multiplicative() { return binary_level(&Parser::unary, {"*", "/", "%"}); }

  ExprP unary() {
    DepthGuard g(depth_);
    if (is("-") || is("!") || is("+")) {
      EDGE("parse.unary");
      auto e = make(Ex::Unary);
      e->op = t_[i_++].text;
      e->kids.push_back(unary());
      return e;
    }
    if (accept("typeof")) {
      EDGE("parse.typeof");
      auto e = make(Ex::Typeof);
      e->kids.push_back(unary());
      return e;
    }
    if (is("++") || is("--")) {
      EDGE("parse.prefix_update");
      auto e = make(Ex::Update);
      e->op = t_[i_++].text;
      e->flag = true;
      e->kids.push_back(unary());
      if (e->kids[0]->kind != Ex::Ident && e->kids[0]->kind != Ex::Index) {
        syntax_error("Invalid left-hand side expression in prefix operation");
      }
      return e;
    }
    return postfix();
  }

  ExprP postfix() {
    auto e = primary();
    while (true) {
      if (accept("(")) {
        EDGE("parse.call");
        auto c = make(Ex::Call);
        c->kids.push_back(std::move(e));
        if (!is(")")) {
          do {
            c->kids.push_back(assignment());
          } while (accept(","));
        }
        expect(")");
        e = std::move(c);
      } else if (accept("[")) {
        EDGE("parse.index");
        auto x = make(Ex::Index);
        x->kids.push_back(std::move(e));
        x->kids.push_back(expression());
        expect("]");
        e = std::move(x);
      } else if (accept(".")) {
        EDGE("parse.member");
        auto m = make(Ex::Member);
        if (peek().kind != Tok::Ident && peek().kind != Tok::Keyword) unexpected();
        m->op = t_[i_++].text;
        m->kids.push_back(std::move(e));
        e = std::move(m);
      } else if (is("++") || is("--")) {
        if (e->kind != Ex::Ident && e->kind != Ex::Index) return e;
        EDGE("parse.postfix_update");
        auto u = make(Ex::Update);
        u->op = t_[i_++].text;
        u->kids.push_back(std::move(e));
        e = std::move(u);
      } else {
        return e;
      }
    }
  }

  ExprP primary() {
    DepthGuard g(depth_);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Num: {
        EDGE("parse.literal.number");
        auto e = make(Ex::Num);
        e->num = t.num;
        ++i_;
        return e;
      }
      case Tok::Str: {
        EDGE("parse.literal.string");
        auto e = make(Ex::Str);
        e->str = t.text;
        ++i_;
        return e;
      }
      case Tok::Ident: {
        EDGE("parse.identifier");
        auto e = make(Ex::Ident);
        e->op = t.text;
        ++i_;
        return e;
      }
      case Tok::Keyword: {
        if (t.text == "true" || t.text == "false") {
          EDGE("parse.literal.bool");
          auto e = make(Ex::Bool);
          e->flag = t.text == "true";
          ++i_;
          return e;
        }
        if (t.text == "null") {
          EDGE("parse.literal.null");
          ++i_;
          return make(Ex::Null);
        }
        if (t.text == "undefined") {
          EDGE("parse.literal.undefined");
          ++i_;
          return make(Ex::Undef);
        }
        EDGE("parse.reserved_word");
        unexpected();
      }
      case Tok::Punct: {
        if (accept("(")) {
          EDGE("parse.paren");
          auto e = expression();
          expect(")");
          return e;
        }
        if (accept("[")) {
          EDGE("parse.array_literal");
          auto e = make(Ex::Array);
          while (!accept("]")) {
            e->kids.push_back(assignment());
            if (!is("]")) expect(",");
          }
          EDGE_BUCKET7("parse.array_literal.size", log_bucket(e->kids.size()));
          return e;
        }
        if (is("{")) {
          EDGE("parse.object_literal_rejected");
          syntax_error("Object literals are not supported");
        }
        unexpected();
      }
      case Tok::End:
        unexpected();
    }
    unexpected();
  }

  std::vector<Token> t_;
  size_t i_ = 0;
  int depth_ = 0;
  int loop_depth_ = 0;
  int fn_depth_ = 0;
};

// ---------------------------------------------------------------- values

struct Value;
using Array = std::vector<Value>;

struct Value {
  enum class T { Undef, Null, Bool, Num, Str, Arr, Builtin, Fn } t = T::Undef;
  double n = 0;
  bool b = false;
  std::string s;
  std::shared_ptr<Array> a;
  int id = 0;  // builtin index or function index

  static Value num(double v) {
    Value x;
    x.t = T::Num;
    x.n = v;
    return x;
  }
  static Value str(std::string v) {
    Value x;
    x.t = T::Str;
    x.s = std::move(v);
    return x;
  }
  static Value boolean(bool v) {
    Value x;
    x.t = T::Bool;
    x.b = v;
    return x;
  }
  static Value null() {
    Value x;
    x.t = T::Null;
    return x;
  }
  static Value array(Array items) {
    Value x;
    x.t = T::Arr;
    x.a = std::make_shared<Array>(std::move(items));
    return x;
  }
};

constexpr size_t kMaxArray = 10000;
constexpr size_t kMaxString = 100000;
constexpr uint64_t kMaxSteps = 20000;
constexpr int kMaxCallDepth = 64;

std::string number_to_string(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  if (v == 0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string to_display(const Value& v, int depth = 0);

std::string to_display(const Value& v, int depth) {
  switch (v.t) {
    case Value::T::Undef: return "undefined";
    case Value::T::Null: return "null";
    case Value::T::Bool: return v.b ? "true" : "false";
    case Value::T::Num: return number_to_string(v.n);
    case Value::T::Str: return v.s;
    case Value::T::Arr: {
      if (depth > 8) return "...";
      std::string out;
      for (size_t i = 0; i < v.a->size(); ++i) {
        if (i) out += ",";
        out += to_display((*v.a)[i], depth + 1);
      }
      return out;
    }
    case Value::T::Builtin:
    case Value::T::Fn: return "function";
  }
  return "";
}

const char* type_name(const Value& v) {
  switch (v.t) {
    case Value::T::Undef: return "undefined";
    case Value::T::Null: return "object";
    case Value::T::Bool: return "boolean";
    case Value::T::Num: return "number";
    case Value::T::Str: return "string";
    case Value::T::Arr: return "object";
    case Value::T::Builtin:
    case Value::T::Fn: return "function";
  }
  return "undefined";
}

bool truthy(const Value& v) {
  switch (v.t) {
    case Value::T::Undef: EDGE("truthy.undefined"); return false;
    case Value::T::Null: EDGE("truthy.null"); return false;
    case Value::T::Bool: EDGE("truthy.bool"); return v.b;
    case Value::T::Num: EDGE("truthy.number"); return v.n != 0 && !std::isnan(v.n);
    case Value::T::Str: EDGE("truthy.string"); return !v.s.empty();
    case Value::T::Arr: EDGE("truthy.array"); return true;
    default: EDGE("truthy.function"); return true;
  }
}

bool strict_equal(const Value& x, const Value& y) {
  if (x.t != y.t) {
    EDGE("equal.type_mismatch");
    return false;
  }
  switch (x.t) {
    case Value::T::Undef:
    case Value::T::Null: EDGE("equal.nullish"); return true;
    case Value::T::Bool: EDGE("equal.bool"); return x.b == y.b;
    case Value::T::Num: EDGE("equal.number"); return x.n == y.n;
    case Value::T::Str: EDGE("equal.string"); return x.s == y.s;
    case Value::T::Arr: EDGE("equal.array_identity"); return x.a == y.a;
    default: EDGE("equal.function"); return x.id == y.id;
  }
}

// Classifies a numeric result so magnitudes show up as distinct edges.
void number_shape(double v) {
  if (std::isnan(v)) EDGE("num.nan");
  else if (std::isinf(v)) EDGE("num.infinite");
  else if (v == 0) EDGE("num.zero");
  else if (v != std::floor(v)) EDGE("num.fraction");
  else if (v < 0) EDGE("num.negative_int");
  else if (v < 256) EDGE("num.small_int");
  else if (v < 65536) EDGE("num.medium_int");
  else EDGE("num.large_int");
}

// ---------------------------------------------------------------- interpreter

enum class Builtin {
  Print, Len, Push, Pop, Str, Num, Abs, Min, Max, Floor, Sqrt, Substr, Repeat, CharAt,
  DecodeURI, Join, Range, ParseInt, IndexOf, Count
};

struct BuiltinInfo {
  const char* name;
  Builtin id;
};

constexpr BuiltinInfo kBuiltins[] = {
    {"print", Builtin::Print},   {"len", Builtin::Len},         {"push", Builtin::Push},
    {"pop", Builtin::Pop},       {"str", Builtin::Str},         {"num", Builtin::Num},
    {"abs", Builtin::Abs},       {"min", Builtin::Min},         {"max", Builtin::Max},
    {"floor", Builtin::Floor},   {"sqrt", Builtin::Sqrt},       {"substr", Builtin::Substr},
    {"repeat", Builtin::Repeat}, {"charAt", Builtin::CharAt},   {"decodeURI", Builtin::DecodeURI},
    {"join", Builtin::Join},     {"range", Builtin::Range},     {"parseInt", Builtin::ParseInt},
    {"indexOf", Builtin::IndexOf},
};

struct Binding {
  Value v;
  bool is_const = false;
};

enum class Flow { Normal, Break, Continue, Return };

class Interp {
 public:
  void run(const std::vector<StmtP>& prog) {
    EDGE("run.start");
    scopes_.emplace_back();
    for (const auto& b : kBuiltins) {
      Value v;
      v.t = Value::T::Builtin;
      v.id = static_cast<int>(b.id);
      scopes_[0][b.name] = {v, true};
    }
    // Hoist top-level function declarations.
    for (const auto& s : prog) {
      if (s->kind == St::Func) {
        EDGE("run.hoist_function");
        declare_function(*s);
      }
    }
    for (const auto& s : prog) {
      const Flow f = exec(*s);
      if (f != Flow::Normal) EDGE("run.stray_flow");
    }
    EDGE("run.done");
  }

 private:
  using Scope = std::map<std::string, Binding>;

  struct Frame {
    std::vector<Scope> scopes;
  };

  void tick() {
    if (++steps_ > kMaxSteps) internal_error("step budget exhausted");
  }

  std::vector<Scope>& current_scopes() { return frames_.empty() ? scopes_ : frames_.back().scopes; }

  Binding* lookup(const std::string& name) {
    auto& sc = current_scopes();
    for (auto it = sc.rbegin(); it != sc.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    if (!frames_.empty()) {
      auto f = scopes_[0].find(name);
      if (f != scopes_[0].end()) {
        EDGE("scope.global_from_function");
        return &f->second;
      }
    }
    return nullptr;
  }

  void declare_function(const Stmt& s) {
    Value v;
    v.t = Value::T::Fn;
    v.id = static_cast<int>(functions_.size());
    functions_.push_back(&s);
    current_scopes().back()[s.op] = {v, false};
  }

  Flow exec(const Stmt& s) {
    tick();
    switch (s.kind) {
      case St::Decl: {
        auto& scope = current_scopes().back();
        for (size_t i = 0; i < s.names.size(); ++i) {
          Value v = eval(*s.exprs[i]);
          auto it = scope.find(s.names[i]);
          if (it != scope.end()) {
            if (s.op != "var" || it->second.is_const) {
              EDGE("exec.decl.redeclare");
              syntax_error("Identifier '" + s.names[i] + "' has already been declared");
            }
            EDGE("exec.decl.var_redeclare");
          }
          if (s.op == "const") EDGE("exec.decl.const");
          else EDGE("exec.decl.mutable");
          scope[s.names[i]] = {std::move(v), s.op == "const"};
        }
        return Flow::Normal;
      }
      case St::If: {
        if (truthy(eval(*s.exprs[0]))) {
          EDGE("exec.if.then");
          return exec(*s.body[0]);
        }
        if (s.body.size() > 1) {
          EDGE("exec.if.else");
          ++else_depth_;
          const Flow f = exec(*s.body[1]);
          --else_depth_;
          return f;
        }
        EDGE("exec.if.skip");
        return Flow::Normal;
      }
      case St::While: {
        EDGE("exec.while");
        size_t iters = 0;
        ++loop_depth_;
        Flow out = Flow::Normal;
        while (truthy(eval(*s.exprs[0]))) {
          tick();
          ++iters;
          const Flow f = exec(*s.body[0]);
          if (f == Flow::Break) {
            EDGE("exec.while.break");
            break;
          }
          if (f == Flow::Continue) EDGE("exec.while.continue");
          if (f == Flow::Return) {
            EDGE("exec.while.return");
            out = f;
            break;
          }
        }
        --loop_depth_;
        EDGE_BUCKET7("exec.while.iterations", log_bucket(iters));
        return out;
      }
      case St::For: {
        EDGE("exec.for");
        current_scopes().emplace_back();
        exec(*s.body[0]);
        size_t iters = 0;
        ++loop_depth_;
        Flow out = Flow::Normal;
        while (truthy(eval(*s.exprs[0]))) {
          tick();
          ++iters;
          const Flow f = exec(*s.body[1]);
          if (f == Flow::Break) {
            EDGE("exec.for.break");
            break;
          }
          if (f == Flow::Continue) EDGE("exec.for.continue");
          if (f == Flow::Return) {
            EDGE("exec.for.return");
            out = f;
            break;
          }
          eval(*s.exprs[1]);
        }
        --loop_depth_;
        current_scopes().pop_back();
        EDGE_BUCKET7("exec.for.iterations", log_bucket(iters));
        if (loop_depth_ > 0) EDGE("exec.for.nested");
        return out;
      }
      case St::Break: return Flow::Break;
      case St::Continue: return Flow::Continue;
      case St::Block: {
        current_scopes().emplace_back();
        Flow out = Flow::Normal;
        for (const auto& c : s.body) {
          if (c->kind == St::Func) declare_function(*c);
        }
        for (const auto& c : s.body) {
          out = exec(*c);
          if (out != Flow::Normal) {
            EDGE("exec.block.early_exit");
            break;
          }
        }
        current_scopes().pop_back();
        return out;
      }
      case St::ExprSt:
        eval(*s.exprs[0]);
        return Flow::Normal;
      case St::Empty: return Flow::Normal;
      case St::Func:
        if (current_scopes().back().count(s.op) == 0) {
          EDGE("exec.function.nested_decl");
          declare_function(s);
        }
        return Flow::Normal;
      case St::Return:
        ret_ = s.exprs.empty() ? Value{} : eval(*s.exprs[0]);
        return Flow::Return;
    }
    return Flow::Normal;
  }

  Value call_function(int fn_index, std::vector<Value>& args) {
    const Stmt& f = *functions_[static_cast<size_t>(fn_index)];
    if (static_cast<int>(frames_.size()) >= kMaxCallDepth) {
      EDGE("call.stack_overflow");
      range_error("Maximum call stack size exceeded");
    }
    EDGE("call.user_function");
    if (args.size() < f.names.size()) EDGE("call.missing_args");
    if (args.size() > f.names.size()) EDGE("call.extra_args");
    if (!frames_.empty()) EDGE("call.nested");
    if (frames_.size() >= 8) EDGE("call.deep_recursion");
    Frame fr;
    fr.scopes.emplace_back();
    for (size_t i = 0; i < f.names.size(); ++i) {
      fr.scopes[0][f.names[i]] = {i < args.size() ? args[i] : Value{}, false};
    }
    frames_.push_back(std::move(fr));
    const int saved_loops = loop_depth_;
    loop_depth_ = 0;
    ret_ = Value{};
    const Flow flow = exec(*f.body[0]);
    loop_depth_ = saved_loops;
    frames_.pop_back();
    if (flow == Flow::Return) {
      EDGE("call.returned_value");
      Value r = std::move(ret_);
      ret_ = Value{};
      return r;
    }
    EDGE("call.fell_off_end");
    return Value{};
  }

  size_t check_index(const Value& idx, size_t size, bool allow_end) {
    if (idx.t != Value::T::Num) {
      EDGE("index.non_number");
      type_error("index must be a number");
    }
    if (idx.n < 0 || idx.n != std::floor(idx.n)) {
      EDGE("index.negative_or_fraction");
      range_error("Invalid index " + number_to_string(idx.n));
    }
    const size_t i = static_cast<size_t>(idx.n);
    if (i > size || (i == size && !allow_end)) {
      EDGE("index.out_of_bounds");
      range_error("Index " + number_to_string(idx.n) + " out of range");
    }
    return i;
  }

  Value index_read(const Value& obj, const Value& idx) {
    if (obj.t == Value::T::Arr) {
      EDGE("index.array");
      const size_t i = check_index(idx, obj.a->size(), false);
      if (loop_depth_ > 0) EDGE("index.array_in_loop");
      return (*obj.a)[i];
    }
    if (obj.t == Value::T::Str) {
      EDGE("index.string");
      const size_t i = check_index(idx, obj.s.size(), false);
      return Value::str(std::string(1, obj.s[i]));
    }
    if (obj.t == Value::T::Undef || obj.t == Value::T::Null) {
      EDGE("index.nullish");
      type_error("Cannot read properties of " + to_display(obj));
    }
    EDGE("index.unsupported");
    type_error(std::string(type_name(obj)) + " is not indexable");
  }

  Value member_read(const Value& obj, const std::string& name) {
    if (obj.t == Value::T::Undef || obj.t == Value::T::Null) {
      EDGE("member.nullish");
      type_error("Cannot read properties of " + to_display(obj) + " (reading '" + name + "')");
    }
    if (name == "length") {
      if (obj.t == Value::T::Arr) {
        EDGE("member.array_length");
        return Value::num(static_cast<double>(obj.a->size()));
      }
      if (obj.t == Value::T::Str) {
        EDGE("member.string_length");
        return Value::num(static_cast<double>(obj.s.size()));
      }
    }
    EDGE("member.unknown");
    return Value{};
  }

  void assign_to(const Expr& target, Value v) {
    if (target.kind == Ex::Ident) {
      Binding* b = lookup(target.op);
      if (!b) {
        EDGE("assign.undeclared");
        reference_error(target.op + " is not defined");
      }
      if (b->is_const) {
        EDGE("assign.const");
        type_error("Assignment to constant variable.");
      }
      EDGE("assign.variable");
      b->v = std::move(v);
      return;
    }
    if (target.kind == Ex::Index) {
      Value obj = eval(*target.kids[0]);
      Value idx = eval(*target.kids[1]);
      if (obj.t != Value::T::Arr) {
        EDGE("assign.index_non_array");
        type_error("Cannot assign to index of " + std::string(type_name(obj)));
      }
      const size_t i = check_index(idx, obj.a->size(), true);
      if (i == obj.a->size()) {
        EDGE("assign.index_append");
        if (obj.a->size() >= kMaxArray) range_error("Invalid array length");
        obj.a->push_back(std::move(v));
      } else {
        EDGE("assign.index_overwrite");
        (*obj.a)[i] = std::move(v);
      }
      return;
    }
    EDGE("assign.member_rejected");
    type_error("Cannot assign to property '" + target.op + "'");
  }

  Value arith(const std::string& op, const Value& l, const Value& r) {
    if (op == "+") {
      if (l.t == Value::T::Str || r.t == Value::T::Str) {
        if (l.t == Value::T::Str && r.t == Value::T::Str) EDGE("add.string_string");
        else EDGE("add.string_mixed");
        std::string s = to_display(l) + to_display(r);
        if (s.size() > kMaxString) range_error("Invalid string length");
        EDGE_BUCKET7("add.string_length", log_bucket(s.size()));
        return Value::str(std::move(s));
      }
      if (l.t == Value::T::Num && r.t == Value::T::Num) {
        EDGE("add.number");
        const double v = l.n + r.n;
        number_shape(v);
        return Value::num(v);
      }
      if (l.t == Value::T::Arr || r.t == Value::T::Arr) {
        EDGE("add.array_rejected");
        type_error("Cannot add an array");
      }
      EDGE("add.coerce");
      return Value::num(to_number(l) + to_number(r));
    }
    if (l.t == Value::T::Arr || r.t == Value::T::Arr) {
      EDGE("arith.array_rejected");
      type_error("Cannot convert an array to a number");
    }
    if (l.t != Value::T::Num || r.t != Value::T::Num) EDGE("arith.coerce");
    const double a = to_number(l);
    const double b = to_number(r);
    double v = 0;
    if (op == "-") {
      EDGE("arith.sub");
      v = a - b;
    } else if (op == "*") {
      EDGE("arith.mul");
      v = a * b;
    } else if (op == "/") {
      if (b == 0) EDGE("arith.div_by_zero");
      else EDGE("arith.div");
      v = a / b;
    } else {
      if (b == 0) EDGE("arith.mod_by_zero");
      else EDGE("arith.mod");
      v = std::fmod(a, b);
    }
    number_shape(v);
    return Value::num(v);
  }

  double to_number(const Value& v) {
    switch (v.t) {
      case Value::T::Num: return v.n;
      case Value::T::Bool: EDGE("coerce.bool"); return v.b ? 1 : 0;
      case Value::T::Null: EDGE("coerce.null"); return 0;
      case Value::T::Str: {
        EDGE("coerce.string");
        if (v.s.empty()) return 0;
        char* end = nullptr;
        const double d = std::strtod(v.s.c_str(), &end);
        if (end && *end == '\0') return d;
        EDGE("coerce.string_nan");
        return std::nan("");
      }
      case Value::T::Undef: EDGE("coerce.undefined"); return std::nan("");
      default:
        EDGE("coerce.object_rejected");
        type_error("Cannot convert object to number");
    }
  }

  Value compare(const std::string& op, const Value& l, const Value& r) {
    if (op == "===" || op == "==" || op == "!==" || op == "!=") {
      const bool loose = op.size() == 2;
      bool eq = false;
      if (loose && l.t != r.t) {
        EDGE("compare.loose_mixed");
        const bool ln = l.t == Value::T::Undef || l.t == Value::T::Null;
        const bool rn = r.t == Value::T::Undef || r.t == Value::T::Null;
        if (ln || rn) eq = ln && rn;
        else if (l.t == Value::T::Arr || r.t == Value::T::Arr) eq = false;
        else eq = to_number(l) == to_number(r);
      } else {
        eq = strict_equal(l, r);
      }
      return Value::boolean(op[0] == '=' ? eq : !eq);
    }
    bool res = false;
    if (l.t == Value::T::Str && r.t == Value::T::Str) {
      EDGE("compare.strings");
      const int c = l.s.compare(r.s);
      res = op == "<" ? c < 0 : op == ">" ? c > 0 : op == "<=" ? c <= 0 : c >= 0;
    } else {
      if (l.t == Value::T::Num && r.t == Value::T::Num) EDGE("compare.numbers");
      else EDGE("compare.coerced");
      const double a = to_number(l);
      const double b = to_number(r);
      res = op == "<" ? a < b : op == ">" ? a > b : op == "<=" ? a <= b : a >= b;
    }
    if (res) EDGE("compare.true");
    else EDGE("compare.false");
    return Value::boolean(res);
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Ex::Num: return Value::num(e.num);
      case Ex::Str: return Value::str(e.str);
      case Ex::Bool: return Value::boolean(e.flag);
      case Ex::Null: return Value::null();
      case Ex::Undef: return Value{};
      case Ex::Ident: {
        Binding* b = lookup(e.op);
        if (!b) {
          EDGE("eval.undefined_identifier");
          reference_error(e.op + " is not defined");
        }
        return b->v;
      }
      case Ex::Array: {
        Array items;
        for (const auto& k : e.kids) items.push_back(eval(*k));
        if (items.empty()) EDGE("eval.array.empty");
        else EDGE("eval.array.filled");
        bool nested = false;
        for (const auto& it : items) nested |= it.t == Value::T::Arr;
        if (nested) EDGE("eval.array.nested");
        return Value::array(std::move(items));
      }
      case Ex::Unary: {
        Value v = eval(*e.kids[0]);
        if (e.op == "!") {
          EDGE("eval.not");
          return Value::boolean(!truthy(v));
        }
        if (e.op == "+") {
          EDGE("eval.unary_plus");
          return Value::num(to_number(v));
        }
        if (v.t == Value::T::Arr) {
          EDGE("eval.negate_array");
          type_error("Cannot negate an array");
        }
        EDGE("eval.negate");
        return Value::num(-to_number(v));
      }
      case Ex::Typeof: {
        if (e.kids[0]->kind == Ex::Ident && !lookup(e.kids[0]->op)) {
          EDGE("eval.typeof_undeclared");
          return Value::str("undefined");
        }
        Value v = eval(*e.kids[0]);
        EDGE("eval.typeof");
        if (v.t == Value::T::Arr && e.kids[0]->kind == Ex::Index &&
            e.kids[0]->kids[0]->kind == Ex::Index) {
          EDGE("eval.typeof_nested_index");
        }
        return Value::str(type_name(v));
      }
      case Ex::Update: {
        Value old = eval(*e.kids[0]);
        if (old.t != Value::T::Num) {
          EDGE("eval.update_coerce");
        }
        const double before = to_number(old);
        const double after = e.op == "++" ? before + 1 : before - 1;
        if (e.op == "++") EDGE("eval.increment");
        else EDGE("eval.decrement");
        assign_to(*e.kids[0], Value::num(after));
        return Value::num(e.flag ? after : before);
      }
      case Ex::Binary: {
        Value l = eval(*e.kids[0]);
        Value r = eval(*e.kids[1]);
        const char c0 = e.op[0];
        if (c0 == '+' || c0 == '-' || c0 == '*' || c0 == '/' || c0 == '%') return arith(e.op, l, r);
        return compare(e.op, l, r);
      }
      case Ex::Logical: {
        Value l = eval(*e.kids[0]);
        if (e.op == "&&") {
          if (!truthy(l)) {
            EDGE("eval.and_short_circuit");
            return l;
          }
          EDGE("eval.and_rhs");
        } else {
          if (truthy(l)) {
            EDGE("eval.or_short_circuit");
            return l;
          }
          EDGE("eval.or_rhs");
        }
        return eval(*e.kids[1]);
      }
      case Ex::Cond: {
        if (truthy(eval(*e.kids[0]))) {
          EDGE("eval.cond_then");
          return eval(*e.kids[1]);
        }
        EDGE("eval.cond_else");
        return eval(*e.kids[2]);
      }
      case Ex::Assign: {
        Value v = eval(*e.kids[1]);
        if (e.op != "=") {
          Value cur = eval(*e.kids[0]);
          v = arith(std::string(1, e.op[0]), cur, v);
        }
        assign_to(*e.kids[0], v);
        return v;
      }
      case Ex::Index: {
        Value obj = eval(*e.kids[0]);
        Value idx = eval(*e.kids[1]);
        return index_read(obj, idx);
      }
      case Ex::Member: {
        Value obj = eval(*e.kids[0]);
        return member_read(obj, e.op);
      }
      case Ex::Call: return eval_call(e);
    }
    return Value{};
  }

  Value eval_call(const Expr& e) {
    tick();
    const Expr& callee = *e.kids[0];
    std::vector<Value> args;
    if (callee.kind == Ex::Member) {
      Value recv = eval(*callee.kids[0]);
      for (size_t i = 1; i < e.kids.size(); ++i) args.push_back(eval(*e.kids[i]));
      return call_method(recv, callee.op, args);
    }
    Value fn = eval(callee);
    for (size_t i = 1; i < e.kids.size(); ++i) args.push_back(eval(*e.kids[i]));
    if (fn.t == Value::T::Builtin) {
      EDGE("call.builtin");
      return call_builtin(static_cast<Builtin>(fn.id), args);
    }
    if (fn.t == Value::T::Fn) return call_function(fn.id, args);
    EDGE("call.not_a_function");
    type_error((callee.kind == Ex::Ident ? callee.op : std::string("expression")) +
               " is not a function");
  }

  Value call_method(const Value& recv, const std::string& name, std::vector<Value>& args) {
    if (recv.t == Value::T::Undef || recv.t == Value::T::Null) {
      EDGE("method.nullish_receiver");
      type_error("Cannot read properties of " + to_display(recv) + " (reading '" + name + "')");
    }
    std::vector<Value> full;
    full.push_back(recv);
    for (auto& a : args) full.push_back(std::move(a));
    if (recv.t == Value::T::Arr) {
      if (name == "push") { EDGE("method.array.push"); return call_builtin(Builtin::Push, full); }
      if (name == "pop") { EDGE("method.array.pop"); return call_builtin(Builtin::Pop, full); }
      if (name == "join") { EDGE("method.array.join"); return call_builtin(Builtin::Join, full); }
      if (name == "indexOf") { EDGE("method.array.indexOf"); return call_builtin(Builtin::IndexOf, full); }
      if (name == "slice") {
        EDGE("method.array.slice");
        const size_t n = recv.a->size();
        size_t lo = full.size() > 1 ? clamp_pos(full[1], n) : 0;
        size_t hi = full.size() > 2 ? clamp_pos(full[2], n) : n;
        if (hi < lo) hi = lo;
        return Value::array(Array(recv.a->begin() + static_cast<long>(lo),
                                  recv.a->begin() + static_cast<long>(hi)));
      }
    }
    if (recv.t == Value::T::Str) {
      if (name == "charAt") { EDGE("method.string.charAt"); return call_builtin(Builtin::CharAt, full); }
      if (name == "substr") { EDGE("method.string.substr"); return call_builtin(Builtin::Substr, full); }
      if (name == "repeat") { EDGE("method.string.repeat"); return call_builtin(Builtin::Repeat, full); }
      if (name == "indexOf") { EDGE("method.string.indexOf"); return call_builtin(Builtin::IndexOf, full); }
      if (name == "toUpperCase") {
        EDGE("method.string.toUpperCase");
        std::string s = recv.s;
        for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return Value::str(s);
      }
      if (name == "split") {
        EDGE("method.string.split");
        const std::string sep = full.size() > 1 ? to_display(full[1]) : "";
        Array parts;
        if (sep.empty()) {
          for (char c : recv.s) parts.push_back(Value::str(std::string(1, c)));
        } else {
          size_t pos = 0;
          while (true) {
            const size_t nx = recv.s.find(sep, pos);
            parts.push_back(Value::str(recv.s.substr(pos, nx == std::string::npos ? std::string::npos : nx - pos)));
            if (nx == std::string::npos) break;
            pos = nx + sep.size();
          }
        }
        if (parts.size() > kMaxArray) range_error("Invalid array length");
        return Value::array(std::move(parts));
      }
    }
    EDGE("method.unknown");
    type_error(std::string(type_name(recv)) + "." + name + " is not a function");
  }

  size_t clamp_pos(const Value& v, size_t n) {
    double d = to_number(v);
    if (std::isnan(d)) d = 0;
    if (d < 0) {
      EDGE("slice.negative");
      d = std::max(0.0, static_cast<double>(n) + d);
    }
    return static_cast<size_t>(std::min(d, static_cast<double>(n)));
  }

  const Value& arg(const std::vector<Value>& a, size_t i) {
    static const Value undef;
    return i < a.size() ? a[i] : undef;
  }

  Value call_builtin(Builtin b, std::vector<Value>& a) {
    switch (b) {
      case Builtin::Print: {
        EDGE("builtin.print");
        for (size_t i = 0; i < a.size(); ++i) {
          std::fputs(to_display(a[i]).c_str(), stdout);
          std::fputc(i + 1 < a.size() ? ' ' : '\n', stdout);
        }
        if (a.empty()) EDGE("builtin.print.empty");
        return Value{};
      }
      case Builtin::Len: {
        const Value& v = arg(a, 0);
        if (v.t == Value::T::Arr) { EDGE("builtin.len.array"); return Value::num(static_cast<double>(v.a->size())); }
        if (v.t == Value::T::Str) { EDGE("builtin.len.string"); return Value::num(static_cast<double>(v.s.size())); }
        EDGE("builtin.len.bad");
        type_error("len expects an array or string");
      }
      case Builtin::Push: {
        const Value& arr = arg(a, 0);
        if (arr.t != Value::T::Arr) {
          EDGE("builtin.push.bad");
          type_error("push expects an array");
        }
        if (a.size() < 2) EDGE("builtin.push.nothing");
        for (size_t i = 1; i < a.size(); ++i) {
          if (arr.a->size() >= kMaxArray) range_error("Invalid array length");
          arr.a->push_back(a[i]);
          // Planted bug 1: growth to 32 elements from inside nested loops.
          if (arr.a->size() == 32 && loop_depth_ >= 2) {
            planted_crash(SIGSEGV, "array_push_grow", arr.a.get(), arr.a->size());
          }
        }
        EDGE_BUCKET7("builtin.push.length", log_bucket(arr.a->size()));
        if (loop_depth_ >= 2) EDGE("builtin.push.nested_loop");
        return Value::num(static_cast<double>(arr.a->size()));
      }
      case Builtin::Pop: {
        const Value& arr = arg(a, 0);
        if (arr.t != Value::T::Arr) {
          EDGE("builtin.pop.bad");
          type_error("pop expects an array");
        }
        if (arr.a->empty()) {
          EDGE("builtin.pop.empty");
          return Value{};
        }
        EDGE("builtin.pop");
        Value v = arr.a->back();
        arr.a->pop_back();
        return v;
      }
      case Builtin::Str: EDGE("builtin.str"); return Value::str(to_display(arg(a, 0)));
      case Builtin::Num: {
        EDGE("builtin.num");
        const double d = to_number(arg(a, 0));
        number_shape(d);
        return Value::num(d);
      }
      case Builtin::Abs: {
        const double d = to_number(arg(a, 0));
        if (d < 0) EDGE("builtin.abs.negative");
        else EDGE("builtin.abs.positive");
        return Value::num(std::fabs(d));
      }
      case Builtin::Min:
      case Builtin::Max: {
        if (a.empty()) {
          EDGE("builtin.minmax.empty");
          return Value::num(b == Builtin::Min ? INFINITY : -INFINITY);
        }
        if (b == Builtin::Min) EDGE("builtin.min");
        else EDGE("builtin.max");
        double best = to_number(a[0]);
        for (size_t i = 1; i < a.size(); ++i) {
          const double d = to_number(a[i]);
          if (std::isnan(d)) EDGE("builtin.minmax.nan");
          best = b == Builtin::Min ? std::min(best, d) : std::max(best, d);
        }
        return Value::num(best);
      }
      case Builtin::Floor: EDGE("builtin.floor"); return Value::num(std::floor(to_number(arg(a, 0))));
      case Builtin::Sqrt: {
        const double d = to_number(arg(a, 0));
        if (d < 0) EDGE("builtin.sqrt.negative");
        else EDGE("builtin.sqrt");
        return Value::num(std::sqrt(d));
      }
      case Builtin::Substr: {
        const Value& s = arg(a, 0);
        if (s.t != Value::T::Str) {
          EDGE("builtin.substr.bad");
          type_error("substr expects a string");
        }
        double start = a.size() > 1 ? to_number(a[1]) : 0;
        double count = a.size() > 2 ? to_number(a[2]) : static_cast<double>(s.s.size());
        if (std::isnan(start)) start = 0;
        if (std::isnan(count)) count = 0;
        if (start < 0) {
          EDGE("builtin.substr.negative_start");
          // Planted bug 2: negative start on a long string inside a function.
          if (s.s.size() >= 8 && !frames_.empty()) {
            planted_crash(SIGABRT, "string_substr_negative", s.s.data(), s.s.size());
          }
          start = std::max(0.0, static_cast<double>(s.s.size()) + start);
        }
        if (count <= 0) {
          EDGE("builtin.substr.empty");
          return Value::str("");
        }
        if (start >= static_cast<double>(s.s.size())) {
          EDGE("builtin.substr.past_end");
          return Value::str("");
        }
        EDGE("builtin.substr");
        return Value::str(s.s.substr(static_cast<size_t>(start), static_cast<size_t>(std::min(count, 1e9))));
      }
      case Builtin::Repeat: {
        const Value& s = arg(a, 0);
        if (s.t != Value::T::Str) {
          EDGE("builtin.repeat.bad");
          type_error("repeat expects a string");
        }
        const double n = to_number(arg(a, 1));
        if (std::isnan(n) || n < 0 || std::isinf(n)) {
          EDGE("builtin.repeat.invalid_count");
          range_error("Invalid count value: " + number_to_string(n));
        }
        const size_t k = static_cast<size_t>(n);
        if (s.s.size() * k > kMaxString) {
          EDGE("builtin.repeat.too_long");
          range_error("Invalid string length");
        }
        EDGE_BUCKET7("builtin.repeat.count", log_bucket(k));
        std::string out;
        for (size_t i = 0; i < k; ++i) out += s.s;
        return Value::str(std::move(out));
      }
      case Builtin::CharAt: {
        const Value& s = arg(a, 0);
        if (s.t != Value::T::Str) {
          EDGE("builtin.charAt.bad");
          type_error("charAt expects a string");
        }
        const double i = to_number(arg(a, 1));
        if (!(i >= 0) || i >= static_cast<double>(s.s.size())) {
          EDGE("builtin.charAt.out_of_range");
          return Value::str("");
        }
        EDGE("builtin.charAt");
        return Value::str(std::string(1, s.s[static_cast<size_t>(i)]));
      }
      case Builtin::DecodeURI: return decode_uri(arg(a, 0));
      case Builtin::Join: {
        const Value& arr = arg(a, 0);
        if (arr.t != Value::T::Arr) {
          EDGE("builtin.join.bad");
          type_error("join expects an array");
        }
        const std::string sep = a.size() > 1 ? to_display(a[1]) : ",";
        if (a.size() > 1) EDGE("builtin.join.custom_sep");
        else EDGE("builtin.join.default_sep");
        std::string out;
        for (size_t i = 0; i < arr.a->size(); ++i) {
          if (i) out += sep;
          out += to_display((*arr.a)[i]);
          if (out.size() > kMaxString) range_error("Invalid string length");
        }
        return Value::str(std::move(out));
      }
      case Builtin::Range: {
        const double n = to_number(arg(a, 0));
        if (!(n >= 0) || n > static_cast<double>(kMaxArray)) {
          EDGE("builtin.range.invalid");
          range_error("Invalid array length");
        }
        EDGE_BUCKET7("builtin.range.size", log_bucket(static_cast<size_t>(n)));
        Array out;
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) out.push_back(Value::num(static_cast<double>(i)));
        return Value::array(std::move(out));
      }
      case Builtin::ParseInt: {
        const std::string s = to_display(arg(a, 0));
        const int radix = a.size() > 1 ? static_cast<int>(to_number(a[1])) : 10;
        if (a.size() > 1) {
          if (radix < 2 || radix > 36) {
            EDGE("builtin.parseInt.bad_radix");
            return Value::num(std::nan(""));
          }
          EDGE("builtin.parseInt.radix");
        }
        char* end = nullptr;
        const long v = std::strtol(s.c_str(), &end, radix);
        if (end == s.c_str()) {
          EDGE("builtin.parseInt.nan");
          return Value::num(std::nan(""));
        }
        EDGE("builtin.parseInt");
        return Value::num(static_cast<double>(v));
      }
      case Builtin::IndexOf: {
        const Value& hay = arg(a, 0);
        const Value& needle = arg(a, 1);
        if (hay.t == Value::T::Arr) {
          for (size_t i = 0; i < hay.a->size(); ++i) {
            if (strict_equal((*hay.a)[i], needle)) {
              EDGE("builtin.indexOf.array_found");
              return Value::num(static_cast<double>(i));
            }
          }
          EDGE("builtin.indexOf.array_missing");
          return Value::num(-1);
        }
        if (hay.t == Value::T::Str) {
          const size_t p = hay.s.find(to_display(needle));
          if (p == std::string::npos) {
            EDGE("builtin.indexOf.string_missing");
            return Value::num(-1);
          }
          EDGE("builtin.indexOf.string_found");
          return Value::num(static_cast<double>(p));
        }
        EDGE("builtin.indexOf.bad");
        type_error("indexOf expects an array or string");
      }
      case Builtin::Count: break;
    }
    return Value{};
  }

  Value decode_uri(const Value& v) {
    if (v.t != Value::T::Str) {
      EDGE("builtin.decodeURI.coerce");
    }
    const std::string s = to_display(v);
    std::string out;
    size_t escapes = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '%') {
        out.push_back(s[i]);
        continue;
      }
      if (i + 2 >= s.size() + 0 || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
          !std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
        EDGE("builtin.decodeURI.malformed");
        uri_error("URI malformed");
      }
      ++escapes;
      out.push_back(static_cast<char>(std::strtol(s.substr(i + 1, 2).c_str(), nullptr, 16)));
      i += 2;
    }
    if (escapes == 0) EDGE("builtin.decodeURI.plain");
    else EDGE("builtin.decodeURI.escaped");
    // Planted bug 3: many escapes in a long input decoded inside a loop.
    if (escapes >= 3 && s.size() >= 12 && loop_depth_ >= 1) {
      planted_crash(SIGFPE, "uri_decode_escapes", s.data(), escapes);
    }
    return Value::str(std::move(out));
  }

  std::vector<Scope> scopes_;
  std::vector<Frame> frames_;
  std::vector<const Stmt*> functions_;
  Value ret_;
  uint64_t steps_ = 0;
  int loop_depth_ = 0;
  int else_depth_ = 0;
};

}  // namespace toy

namespace {

// Fork-server loop: returns in the forked child, never in the server.
void maybe_run_fork_server() {
  const char* env = std::getenv("COVRL_FORKSRV");
  if (!env || std::strcmp(env, "1") != 0) return;
  uint32_t hello = 0x434f5652;  // "COVR"
  if (::write(199, &hello, 4) != 4) return;
  while (true) {
    uint32_t go = 0;
    if (::read(198, &go, 4) != 4) std::_Exit(0);
    const pid_t child = ::fork();
    if (child < 0) std::_Exit(1);
    if (child == 0) {
      ::close(198);
      ::close(199);
      return;
    }
    const uint32_t pid32 = static_cast<uint32_t>(child);
    if (::write(199, &pid32, 4) != 4) std::_Exit(1);
    int status = 0;
    if (::waitpid(child, &status, 0) < 0) std::_Exit(1);
    const uint32_t st32 = static_cast<uint32_t>(status);
    if (::write(199, &st32, 4) != 4) std::_Exit(1);
  }
}

unsigned static_edge_count();

}  // namespace

int main(int argc, char** argv) {
  if (argc == 2 && std::strcmp(argv[1], "--edge-count") == 0) {
    std::printf("%u\n", static_edge_count());
    return 0;
  }
  toycov::init();
  maybe_run_fork_server();
  EDGE("main.entry");
  if (argc < 2) {
    std::fputs("usage: covrl-toy <testcase>\n", stderr);
    toy::finish(2);
  }
  std::string src;
  if (FILE* f = std::fopen(argv[1], "rb")) {
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) src.append(buf, n);
    std::fclose(f);
  } else {
    std::fprintf(stderr, "cannot open %s\n", argv[1]);
    toy::finish(2);
  }
  EDGE("main.read_input");
  if (src.empty()) EDGE("main.empty_input");
  if (src.size() > 65536) {
    EDGE("main.input_too_large");
    src.resize(65536);
  }
  auto tokens = toy::Lexer(src).run();
  auto program = toy::Parser(std::move(tokens)).program();
  toy::Interp interp;
  interp.run(program);
  EDGE("main.exit_ok");
  toy::finish(0);
}

namespace {
unsigned static_edge_count() { return __COUNTER__; }
}  // namespace
