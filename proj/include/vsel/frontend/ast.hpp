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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsel/error.hpp"

namespace vsel::frontend {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// Names follow the Clang AST node classes so graphs from an external Clang
// based extractor and from this frontend share one vocabulary.
enum class NodeKind : std::uint8_t {
  kTranslationUnit,
  kFunctionDecl,
  kParmVarDecl,
  kVarDecl,
  kTypedefDecl,
  kRecordDecl,
  kFieldDecl,
  kEnumDecl,
  kEnumConstantDecl,
  kCompoundStmt,
  kDeclStmt,
  kIfStmt,
  kWhileStmt,
  kDoStmt,
  kForStmt,
  kSwitchStmt,
  kCaseStmt,
  kDefaultStmt,
  kLabelStmt,
  kReturnStmt,
  kBreakStmt,
  kContinueStmt,
  kNullStmt,
  kBinaryOperator,
  kCompoundAssignOperator,
  kUnaryOperator,
  kConditionalOperator,
  kCallExpr,
  kDeclRefExpr,
  kIntegerLiteral,
  kFloatingLiteral,
  kCharacterLiteral,
  kStringLiteral,
  kArraySubscriptExpr,
  kMemberExpr,
  kCStyleCastExpr,
  kUnaryExprOrTypeTraitExpr,
  kInitListExpr,
};

inline constexpr std::size_t kNodeKindCount =
    static_cast<std::size_t>(NodeKind::kInitListExpr) + 1;

std::string_view node_kind_name(NodeKind kind);
std::optional<NodeKind> node_kind_from_name(std::string_view name);

// Per-kind layout bits stored in AstNode::flags.
namespace flags {
inline constexpr std::uint8_t kForHasInit = 1;
inline constexpr std::uint8_t kForHasCond = 2;
inline constexpr std::uint8_t kForHasInc = 4;
inline constexpr std::uint8_t kIfHasElse = 1;
inline constexpr std::uint8_t kUnaryPostfix = 1;
inline constexpr std::uint8_t kMemberArrow = 1;
inline constexpr std::uint8_t kCallIndirect = 1;  // child 0 is the callee
inline constexpr std::uint8_t kFunctionHasBody = 1;
}  // namespace flags

struct AstNode {
  NodeKind kind = NodeKind::kNullStmt;
  std::string text;  // identifier, operator or literal lexeme; may be empty
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  NodeId decl = kNoNode;  // DeclRefExpr: resolved VarDecl/ParmVarDecl/EnumConstantDecl
  std::uint8_t flags = 0;
  SourcePos pos;
};

/// Abstract syntax tree with nodes numbered in pre-order; node 0 is the root
/// TranslationUnit.
struct Ast {
  std::vector<AstNode> nodes;
  NodeId root = 0;

  std::size_t size() const { return nodes.size(); }
  const AstNode& operator[](NodeId id) const { return nodes[id]; }

  // Children of a ForStmt, or kNoNode for the missing optional parts.
  struct ForParts {
    NodeId init = kNoNode, cond = kNoNode, inc = kNoNode, body = kNoNode;
  };
  ForParts for_parts(NodeId for_stmt) const;

  /// FunctionDecl body (CompoundStmt) or kNoNode for prototypes.
  NodeId function_body(NodeId fn) const;
};

bool is_statement_kind(NodeKind kind);
bool is_expression_kind(NodeKind kind);

}  // namespace vsel::frontend
