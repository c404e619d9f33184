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

#include "vsel/frontend/ast.hpp"

#include <array>

namespace vsel::frontend {

namespace {

constexpr std::array<std::string_view, kNodeKindCount> kNames = {
    "TranslationUnit",   "FunctionDecl",       "ParmVarDecl",
    "VarDecl",           "TypedefDecl",        "RecordDecl",
    "FieldDecl",         "EnumDecl",           "EnumConstantDecl",
    "CompoundStmt",      "DeclStmt",           "IfStmt",
    "WhileStmt",         "DoStmt",             "ForStmt",
    "SwitchStmt",        "CaseStmt",           "DefaultStmt",
    "LabelStmt",         "ReturnStmt",         "BreakStmt",
    "ContinueStmt",      "NullStmt",           "BinaryOperator",
    "CompoundAssignOperator", "UnaryOperator", "ConditionalOperator",
    "CallExpr",          "DeclRefExpr",        "IntegerLiteral",
    "FloatingLiteral",   "CharacterLiteral",   "StringLiteral",
    "ArraySubscriptExpr", "MemberExpr",        "CStyleCastExpr",
    "UnaryExprOrTypeTraitExpr", "InitListExpr"};

}  // namespace

std::string_view node_kind_name(NodeKind kind) {
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<NodeKind> node_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

bool is_statement_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::kCompoundStmt:
    case NodeKind::kDeclStmt:
    case NodeKind::kIfStmt:
    case NodeKind::kWhileStmt:
    case NodeKind::kDoStmt:
    case NodeKind::kForStmt:
    case NodeKind::kSwitchStmt:
    case NodeKind::kCaseStmt:
    case NodeKind::kDefaultStmt:
    case NodeKind::kLabelStmt:
    case NodeKind::kReturnStmt:
    case NodeKind::kBreakStmt:
    case NodeKind::kContinueStmt:
    case NodeKind::kNullStmt:
      return true;
    default:
      return false;
  }
}

bool is_expression_kind(NodeKind kind) {
  return kind >= NodeKind::kBinaryOperator;
}

Ast::ForParts Ast::for_parts(NodeId for_stmt) const {
  const AstNode& n = nodes[for_stmt];
  ForParts p;
  std::size_t k = 0;
  if (n.flags & flags::kForHasInit) p.init = n.children[k++];
  if (n.flags & flags::kForHasCond) p.cond = n.children[k++];
  if (n.flags & flags::kForHasInc) p.inc = n.children[k++];
  p.body = n.children[k];
  return p;
}

NodeId Ast::function_body(NodeId fn) const {
  const AstNode& n = nodes[fn];
  if (!(n.flags & flags::kFunctionHasBody)) return kNoNode;
  return n.children.back();
}

}  // namespace vsel::frontend
