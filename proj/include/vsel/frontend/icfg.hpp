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
#include <vector>

#include "vsel/frontend/ast.hpp"

namespace vsel::frontend {

enum class ControlEdgeKind : std::uint8_t { kFlow, kCall, kReturn, kLoopBack };

const char* control_edge_kind_name(ControlEdgeKind kind);

struct ControlEdge {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  ControlEdgeKind kind = ControlEdgeKind::kFlow;

  friend bool operator==(const ControlEdge&, const ControlEdge&) = default;
};

/// Statement-level interprocedural control flow over AST node ids.
///
/// A function's FunctionDecl node is both its entry and its exit: it has a
/// flow edge to the first statement, and every ReturnStmt (or the last
/// statement, when control falls off the end) has a flow edge back to it.
/// A call site is the innermost statement-level node containing a direct
/// CallExpr to a defined function; it gets a kCall edge to the callee's
/// FunctionDecl and the callee a kReturn edge back to the call site.
struct ControlEdges {
  std::vector<ControlEdge> edges;        // sorted by (src, dst), unique pairs
  std::vector<std::string> diagnostics;  // unresolved callees, stray break/continue
};

ControlEdges build_icfg(const Ast& ast);

/// True for nodes that take part in statement-level control flow.
bool is_flow_node(const Ast& ast, NodeId id);

/// Innermost flow node containing `id` (inclusive), or kNoNode.
NodeId enclosing_flow_node(const Ast& ast, NodeId id);

}  // namespace vsel::frontend
