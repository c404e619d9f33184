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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vsel/error.hpp"

namespace vsel::frontend {

enum class TokenKind {
  kKeyword,
  kIdentifier,
  kIntLiteral,
  kFloatLiteral,
  kCharLiteral,
  kStringLiteral,
  kOperator,
  kPunct,
  kEnd,
};

const char* token_kind_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourcePos pos;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::kPunct, t); }
  bool is_op(std::string_view t) const { return is(TokenKind::kOperator, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::kKeyword, t); }
};

// Splits C-subset source into tokens. Whitespace, comments and preprocessor
// line markers ("# 1 \"file.c\"") are dropped. The result always ends with a
// kEnd token. Throws LexError on a character outside the subset alphabet.
std::vector<Token> tokenize(std::string_view source);

}  // namespace vsel::frontend
