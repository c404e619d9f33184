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

#include <span>
#include <string_view>

#include "vsel/frontend/ast.hpp"
#include "vsel/frontend/lexer.hpp"

namespace vsel::frontend {

// Recursive-descent parser for the supported C subset. Structural punctuation
// (parentheses, braces, semicolons) never becomes a node. Identifier uses are
// resolved against lexical scopes so DeclRefExpr::decl names the declaration.
//
// Throws ParseError on grammar violations and UnsupportedConstruct for C
// features outside the subset (goto, function-pointer declarators,
// bit-fields, compound literals).
Ast parse(std::span<const Token> tokens);

/// tokenize + parse.
Ast parse_source(std::string_view source);

}  // namespace vsel::frontend
