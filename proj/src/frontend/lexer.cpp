// Copyright 2026 The vsel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vsel/frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <string>

namespace vsel::frontend {

namespace {

constexpr std::array<std::string_view, 37> kKeywords = {
    "int",      "char",     "void",   "short",    "long",     "unsigned",
    "signed",   "float",    "double", "_Bool",    "const",    "volatile",
    "static",   "extern",   "register", "inline", "auto",     "typedef",
    "struct",   "union",    "enum",   "if",       "else",     "while",
    "for",      "do",       "switch", "case",     "default",  "return",
    "break",    "continue", "goto",   "sizeof",   "restrict", "__inline",
    "__restrict"};

// Longest first so a prefix scan implements maximal munch.
constexpr std::array<std::string_view, 46> kOperators = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "+",  "-",
    "*",   "/",   "%",   "<",  ">",  "=",  "!",  "~",  "&",  "|",  "^",  "?",
    ":",   ".",   ";",   ",",  "(",  ")",  "{",  "}",  "[",  "]"};

bool is_punct_text(std::string_view t) {
  return t == ";" || t == "," || t == "(" || t == ")" || t == "{" ||
         t == "}" || t == "[" || t == "]";
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool line_start = true;
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '\n') {
        advance();
        line_start = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '#' && line_start) {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        continue;
      }
      line_start = false;
      if (c == '/' && peek(1) == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        SourcePos start = pos_;
        advance();
        advance();
        while (i_ < src_.size() && !(src_[i_] == '*' && peek(1) == '/')) advance();
        if (i_ >= src_.size()) throw LexError(start, "unterminated comment");
        advance();
        advance();
        continue;
      }
      out.push_back(next_token());
    }
    Token end;
    end.kind = TokenKind::kEnd;
    end.pos = pos_;
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t off) const {
    return i_ + off < src_.size() ? src_[i_ + off] : '\0';
  }

  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  Token take(TokenKind kind, std::size_t len, SourcePos start) {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(i_, len));
    t.pos = start;
    for (std::size_t k = 0; k < len; ++k) advance();
    return t;
  }

  Token next_token() {
    SourcePos start = pos_;
    char c = src_[i_];
    if (is_ident_start(c)) {
      std::size_t n = 1;
      while (is_ident_char(peek(n))) ++n;
      std::string_view word = src_.substr(i_, n);
      bool kw = false;
      for (auto k : kKeywords) kw = kw || k == word;
      return take(kw ? TokenKind::kKeyword : TokenKind::kIdentifier, n, start);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(start);
    }
    if (c == '\'' || c == '"') return quoted(start, c);
    for (auto op : kOperators) {
      if (src_.substr(i_, op.size()) == op) {
        return take(is_punct_text(op) ? TokenKind::kPunct : TokenKind::kOperator,
                    op.size(), start);
      }
    }
    throw LexError(start, std::string("illegal character '") + c + "'");
  }

  Token number(SourcePos start) {
    std::size_t n = 0;
    bool is_float = false;
    if (peek(0) == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      n = 2;
      while (std::isxdigit(static_cast<unsigned char>(peek(n)))) ++n;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
      if (peek(n) == '.') {
        is_float = true;
        ++n;
        while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
      }
      if (peek(n) == 'e' || peek(n) == 'E') {
        std::size_t m = n + 1;
        if (peek(m) == '+' || peek(m) == '-') ++m;
        if (std::isdigit(static_cast<unsigned char>(peek(m)))) {
          is_float = true;
          n = m;
          while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
        }
      }
    }
    while (peek(n) == 'u' || peek(n) == 'U' || peek(n) == 'l' || peek(n) == 'L' ||
           (is_float && (peek(n) == 'f' || peek(n) == 'F'))) {
      ++n;
    }
    if (is_ident_char(peek(n))) {
      SourcePos bad = start;
      bad.column += n;
      throw LexError(bad, "malformed number");
    }
    return take(is_float ? TokenKind::kFloatLiteral : TokenKind::kIntLiteral, n,
                start);
  }

  Token quoted(SourcePos start, char quote) {
    std::size_t n = 1;
    while (true) {
      char c = peek(n);
      if (c == '\0' || c == '\n') throw LexError(start, "unterminated literal");
      if (c == '\\') {
        n += 2;
        continue;
      }
      ++n;
      if (c == quote) break;
    }
    return take(quote == '"' ? TokenKind::kStringLiteral : TokenKind::kCharLiteral,
                n, start);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "kw";
    case TokenKind::kIdentifier: return "ident";
    case TokenKind::kIntLiteral: return "int-lit";
    case TokenKind::kFloatLiteral: return "float-lit";
    case TokenKind::kCharLiteral: return "char-lit";
    case TokenKind::kStringLiteral: return "string-lit";
    case TokenKind::kOperator: return "op";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kEnd: return "end";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace vsel::frontend
