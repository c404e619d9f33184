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

#include "vsel/frontend/icfg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace vsel::frontend {

namespace {

// Where control goes next, and how the edge into it is tagged.
struct Target {
  NodeId node = kNoNode;
  ControlEdgeKind kind = ControlEdgeKind::kFlow;
};

std::size_t child_index(const Ast& ast, NodeId parent, NodeId child) {
  const auto& ch = ast[parent].children;
  return static_cast<std::size_t>(std::find(ch.begin(), ch.end(), child) - ch.begin());
}

class IcfgBuilder {
 public:
  explicit IcfgBuilder(const Ast& ast) : ast_(ast) {}

  ControlEdges run() {
    std::map<std::string, NodeId> definitions;
    for (NodeId id = 0; id < ast_.size(); ++id) {
      const AstNode& n = ast_[id];
      if (n.kind != NodeKind::kFunctionDecl || ast_.function_body(id) == kNoNode) continue;
      definitions.emplace(n.text, id);  // first definition wins
      build_function(id);
    }
    add_call_edges(definitions);

    std::sort(out_.edges.begin(), out_.edges.end(), [](const ControlEdge& a, const ControlEdge& b) {
      return std::tie(a.src, a.dst, a.kind) < std::tie(b.src, b.dst, b.kind);
    });
    out_.edges.erase(std::unique(out_.edges.begin(), out_.edges.end(),
                                 [](const ControlEdge& a, const ControlEdge& b) {
                                   return a.src == b.src && a.dst == b.dst;
                                 }),
                     out_.edges.end());
    return std::move(out_);
  }

 private:
  void emit(NodeId src, Target dst) {
    if (dst.node == kNoNode) return;
    out_.edges.push_back({src, dst.node, dst.kind});
  }

  void build_function(NodeId fn) {
    fn_ = fn;
    breaks_.clear();
    continues_.clear();
    Target entry = build(ast_.function_body(fn), Target{fn, ControlEdgeKind::kFlow});
    emit(fn, entry);
  }

  // Emits the edges of statement `s` given the continuation `next` and
  // returns the entry point of `s`.
  Target build(NodeId s, Target next) {
    const AstNode& n = ast_[s];
    Target self{s, ControlEdgeKind::kFlow};
    switch (n.kind) {
      case NodeKind::kCompoundStmt: {
        Target t = next;
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) t = build(*it, t);
        return t;
      }
      case NodeKind::kLabelStmt:
      case NodeKind::kDefaultStmt:
      case NodeKind::kCaseStmt: {
        if (n.kind != NodeKind::kLabelStmt && !switch_labels_.empty()) {
          switch_labels_.back().push_back(s);
        }
        emit(s, build(n.children.back(), next));
        return self;
      }
      case NodeKind::kIfStmt: {
        Target then_entry = build(n.children[1], next);
        Target else_entry = (n.flags & flags::kIfHasElse) ? build(n.children[2], next) : next;
        emit(s, then_entry);
        emit(s, else_entry);
        return self;
      }
      case NodeKind::kWhileStmt: {
        Target header{s, ControlEdgeKind::kLoopBack};
        breaks_.push_back(next);
        continues_.push_back(header);
        Target body = build(n.children[1], header);
        breaks_.pop_back();
        continues_.pop_back();
        emit(s, body);
        emit(s, next);
        return self;
      }
      case NodeKind::kDoStmt: {
        breaks_.push_back(next);
        continues_.push_back(self);
        Target body = build(n.children[0], self);
        breaks_.pop_back();
        continues_.pop_back();
        emit(s, Target{body.node, ControlEdgeKind::kLoopBack});
        emit(s, next);
        return body;
      }
      case NodeKind::kForStmt: {
        auto parts = ast_.for_parts(s);
        Target cont{s, ControlEdgeKind::kLoopBack};
        if (parts.inc != kNoNode) {
          emit(parts.inc, cont);
          cont = Target{parts.inc, ControlEdgeKind::kFlow};
        }
        breaks_.push_back(next);
        continues_.push_back(cont);
        Target body = build(parts.body, cont);
        breaks_.pop_back();
        continues_.pop_back();
        emit(s, body);
        if (parts.cond != kNoNode) emit(s, next);
        if (parts.init == kNoNode) return self;
        emit(parts.init, self);
        return Target{parts.init, ControlEdgeKind::kFlow};
      }
      case NodeKind::kSwitchStmt: {
        breaks_.push_back(next);
        switch_labels_.emplace_back();
        build(n.children[1], next);
        std::vector<NodeId> labels = std::move(switch_labels_.back());
        switch_labels_.pop_back();
        breaks_.pop_back();
        bool has_default = false;
        for (NodeId l : labels) {
          emit(s, Target{l, ControlEdgeKind::kFlow});
          has_default = has_default || ast_[l].kind == NodeKind::kDefaultStmt;
        }
        if (!has_default) emit(s, next);
        return self;
      }
      case NodeKind::kReturnStmt:
        emit(s, Target{fn_, ControlEdgeKind::kFlow});
        return self;
      case NodeKind::kBreakStmt:
        if (breaks_.empty()) {
          out_.diagnostics.push_back("break outside loop or switch at node " + std::to_string(s));
        } else {
          emit(s, breaks_.back());
        }
        return self;
      case NodeKind::kContinueStmt:
        if (continues_.empty()) {
          out_.diagnostics.push_back("continue outside loop at node " + std::to_string(s));
        } else {
          emit(s, continues_.back());
        }
        return self;
      default:
        // DeclStmt, NullStmt and expression statements.
        emit(s, next);
        return self;
    }
  }

  void add_call_edges(const std::map<std::string, NodeId>& definitions) {
    for (NodeId id = 0; id < ast_.size(); ++id) {
      const AstNode& n = ast_[id];
      if (n.kind != NodeKind::kCallExpr || (n.flags & flags::kCallIndirect)) continue;
      auto callee = definitions.find(n.text);
      if (callee == definitions.end()) {
        out_.diagnostics.push_back("unresolved callee '" + n.text + "'");
        continue;
      }
      NodeId site = enclosing_flow_node(ast_, id);
      if (site == kNoNode || ast_[site].kind == NodeKind::kFunctionDecl) {
        out_.diagnostics.push_back("call to '" + n.text + "' outside a statement");
        continue;
      }
      out_.edges.push_back({site, callee->second, ControlEdgeKind::kCall});
      out_.edges.push_back({callee->second, site, ControlEdgeKind::kReturn});
    }
  }

  const Ast& ast_;
  ControlEdges out_;
  NodeId fn_ = kNoNode;
  std::vector<Target> breaks_;
  std::vector<Target> continues_;
  std::vector<std::vector<NodeId>> switch_labels_;
};

}  // namespace

const char* control_edge_kind_name(ControlEdgeKind kind) {
  switch (kind) {
    case ControlEdgeKind::kFlow: return "flow";
    case ControlEdgeKind::kCall: return "call";
    case ControlEdgeKind::kReturn: return "return";
    case ControlEdgeKind::kLoopBack: return "loop-back";
  }
  return "?";
}

bool is_flow_node(const Ast& ast, NodeId id) {
  const AstNode& n = ast[id];
  if (n.kind == NodeKind::kFunctionDecl) return ast.function_body(id) != kNoNode;
  if (n.kind == NodeKind::kCompoundStmt) return false;
  if (is_statement_kind(n.kind)) return true;
  if (!is_expression_kind(n.kind) || n.parent == kNoNode) return false;
  NodeId p = n.parent;
  std::size_t idx = child_index(ast, p, id);
  switch (ast[p].kind) {
    case NodeKind::kCompoundStmt:
    case NodeKind::kLabelStmt:
    case NodeKind::kDefaultStmt:
      return true;
    case NodeKind::kCaseStmt:
      return idx == 1;
    case NodeKind::kIfStmt:
      return idx >= 1;
    case NodeKind::kWhileStmt:
    case NodeKind::kSwitchStmt:
      return idx == 1;
    case NodeKind::kDoStmt:
      return idx == 0;
    case NodeKind::kForStmt: {
      auto parts = ast.for_parts(p);
      return id == parts.init || id == parts.inc || id == parts.body;
    }
    default:
      return false;
  }
}

NodeId enclosing_flow_node(const Ast& ast, NodeId id) {
  for (NodeId cur = id; cur != kNoNode; cur = ast[cur].parent) {
    if (is_flow_node(ast, cur)) return cur;
  }
  return kNoNode;
}

ControlEdges build_icfg(const Ast& ast) { return IcfgBuilder(ast).run(); }

}  // namespace vsel::frontend
