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
#include "vsel/frontend/icfg.hpp"

namespace vsel::frontend {

/// Def-use edge: the statement-level node `def` assigns or declares
/// `variable`, and the DeclRefExpr `use` reads it.
struct DataEdge {
  NodeId def = kNoNode;
  NodeId use = kNoNode;
  std::string variable;

  friend bool operator==(const DataEdge&, const DataEdge&) = default;
};

struct DataEdges {
  std::vector<DataEdge> edges;  // sorted by (def, use)
};

// Variables are identified by their declaring VarDecl/ParmVarDecl node, so
// same-named locals in different functions never alias.
struct VariableDef {
  NodeId variable = kNoNode;
  bool strong = true;  // strong definitions kill earlier ones
};

struct VariableUse {
  NodeId use = kNoNode;  // DeclRefExpr
  NodeId variable = kNoNode;
};

struct DefUseFacts {
  std::vector<VariableDef> defs;
  std::vector<VariableUse> uses;
};

/// Definitions and uses evaluated at a single flow node. A plain assignment
/// or declaration of a named variable is a strong definition; writes through
/// a subscript or member are weak. Writes through `*p` define nothing.
DefUseFacts collect_def_use(const Ast& ast, NodeId flow_node);

/// Worklist reaching-definitions over the ICFG, emitting one edge per
/// (reaching definition, use) pair.
DataEdges reaching_definitions(const Ast& ast, const ControlEdges& icfg);

}  // namespace vsel::frontend
