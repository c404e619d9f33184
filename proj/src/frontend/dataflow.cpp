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

#include "vsel/frontend/dataflow.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <tuple>

namespace vsel::frontend {

namespace {

bool is_variable_decl(const Ast& ast, NodeId decl) {
  if (decl == kNoNode) return false;
  NodeKind k = ast[decl].kind;
  return k == NodeKind::kVarDecl || k == NodeKind::kParmVarDecl;
}

class DefUseCollector {
 public:
  DefUseCollector(const Ast& ast, DefUseFacts& out) : ast_(ast), out_(out) {}

  void read(NodeId e) {
    const AstNode& n = ast_[e];
    switch (n.kind) {
      case NodeKind::kDeclRefExpr:
        if (is_variable_decl(ast_, n.decl)) out_.uses.push_back({e, n.decl});
        return;
      case NodeKind::kBinaryOperator:
        if (n.text == "=") {
          write(n.children[0], /*also_read=*/false);
          read(n.children[1]);
          return;
        }
        break;
      case NodeKind::kCompoundAssignOperator:
        write(n.children[0], /*also_read=*/true);
        read(n.children[1]);
        return;
      case NodeKind::kUnaryOperator:
        if (n.text == "++" || n.text == "--") {
          write(n.children[0], /*also_read=*/true);
          return;
        }
        break;
      case NodeKind::kUnaryExprOrTypeTraitExpr:
        return;  // sizeof does not evaluate its operand
      default:
        break;
    }
    for (NodeId c : n.children) read(c);
  }

  void write(NodeId target, bool also_read) {
    const AstNode& n = ast_[target];
    if (n.kind == NodeKind::kDeclRefExpr) {
      if (!is_variable_decl(ast_, n.decl)) return;
      if (also_read) out_.uses.push_back({target, n.decl});
      out_.defs.push_back({n.decl, true});
      return;
    }
    if (n.kind == NodeKind::kArraySubscriptExpr || n.kind == NodeKind::kMemberExpr) {
      // Weak update of the base variable; index expressions are reads.
      NodeId base = n.children[0];
      for (std::size_t k = 1; k < n.children.size(); ++k) read(n.children[k]);
      const AstNode& b = ast_[base];
      if (b.kind == NodeKind::kDeclRefExpr && !(n.flags & flags::kMemberArrow)) {
        if (!is_variable_decl(ast_, b.decl)) return;
        if (also_read) out_.uses.push_back({base, b.decl});
        out_.defs.push_back({b.decl, false});
      } else if (b.kind == NodeKind::kArraySubscriptExpr || b.kind == NodeKind::kMemberExpr) {
        write(base, also_read);
      } else {
        read(base);
      }
      return;
    }
    read(target);
  }

 private:
  const Ast& ast_;
  DefUseFacts& out_;
};

}  // namespace

DefUseFacts collect_def_use(const Ast& ast, NodeId flow_node) {
  DefUseFacts facts;
  DefUseCollector c(ast, facts);
  const AstNode& n = ast[flow_node];
  switch (n.kind) {
    case NodeKind::kFunctionDecl:
      for (NodeId ch : n.children) {
        if (ast[ch].kind == NodeKind::kParmVarDecl) facts.defs.push_back({ch, true});
      }
      break;
    case NodeKind::kDeclStmt:
      for (NodeId ch : n.children) {
        if (ast[ch].kind != NodeKind::kVarDecl) continue;
        for (NodeId init : ast[ch].children) c.read(init);
        facts.defs.push_back({ch, true});
      }
      break;
    case NodeKind::kIfStmt:
    case NodeKind::kWhileStmt:
    case NodeKind::kSwitchStmt:
    case NodeKind::kCaseStmt:
      c.read(n.children[0]);
      break;
    case NodeKind::kDoStmt:
      c.read(n.children[1]);
      break;
    case NodeKind::kForStmt: {
      NodeId cond = ast.for_parts(flow_node).cond;
      if (cond != kNoNode) c.read(cond);
      break;
    }
    case NodeKind::kReturnStmt:
      if (!n.children.empty()) c.read(n.children[0]);
      break;
    case NodeKind::kLabelStmt:
    case NodeKind::kDefaultStmt:
    case NodeKind::kBreakStmt:
    case NodeKind::kContinueStmt:
    case NodeKind::kNullStmt:
    case NodeKind::kCompoundStmt:
      break;
    default:
      if (is_expression_kind(n.kind)) c.read(flow_node);
      break;
  }
  return facts;
}

DataEdges reaching_definitions(const Ast& ast, const ControlEdges& icfg) {
  const std::size_t n = ast.size();
  std::vector<char> is_node(n, 0);
  for (NodeId id = 0; id < n; ++id) is_node[id] = is_flow_node(ast, id) ? 1 : 0;
  std::vector<std::vector<NodeId>> preds(n), succs(n);
  for (const auto& e : icfg.edges) {
    preds[e.dst].push_back(e.src);
    succs[e.src].push_back(e.dst);
    is_node[e.src] = is_node[e.dst] = 1;
  }

  // Enumerate definitions as (node, variable) pairs, one bit each.
  struct Def {
    NodeId node;
    NodeId variable;
  };
  std::vector<Def> defs;
  std::vector<DefUseFacts> facts(n);
  std::vector<std::vector<std::size_t>> gen(n);
  std::vector<std::vector<NodeId>> killed_vars(n);
  for (NodeId id = 0; id < n; ++id) {
    if (!is_node[id]) continue;
    facts[id] = collect_def_use(ast, id);
    std::vector<NodeId> vars;
    for (const auto& d : facts[id].defs) {
      vars.push_back(d.variable);
      if (d.strong) killed_vars[id].push_back(d.variable);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (NodeId v : vars) {
      gen[id].push_back(defs.size());
      defs.push_back({id, v});
    }
  }

  const std::size_t words = (defs.size() + 63) / 64;
  using Bits = std::vector<std::uint64_t>;
  auto set_bit = [](Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); };
  auto test_bit = [](const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; };

  std::vector<Bits> gen_bits(n), keep_bits(n);
  std::vector<Bits> in(n, Bits(words, 0)), out(n, Bits(words, 0));
  for (NodeId id = 0; id < n; ++id) {
    if (!is_node[id]) continue;
    gen_bits[id].assign(words, 0);
    keep_bits[id].assign(words, ~std::uint64_t{0});
    for (std::size_t d : gen[id]) set_bit(gen_bits[id], d);
    for (std::size_t d = 0; d < defs.size(); ++d) {
      const auto& kv = killed_vars[id];
      if (std::find(kv.begin(), kv.end(), defs[d].variable) != kv.end()) {
        keep_bits[id][d / 64] &= ~(std::uint64_t{1} << (d % 64));
      }
    }
  }

  std::deque<NodeId> worklist;
  std::vector<char> queued(n, 0);
  for (NodeId id = 0; id < n; ++id) {
    if (is_node[id]) {
      worklist.push_back(id);
      queued[id] = 1;
    }
  }
  while (!worklist.empty()) {
    NodeId id = worklist.front();
    worklist.pop_front();
    queued[id] = 0;
    Bits& in_bits = in[id];
    std::fill(in_bits.begin(), in_bits.end(), 0);
    for (NodeId p : preds[id]) {
      for (std::size_t w = 0; w < words; ++w) in_bits[w] |= out[p][w];
    }
    bool changed = false;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t v = gen_bits[id][w] | (in_bits[w] & keep_bits[id][w]);
      if (v != out[id][w]) {
        out[id][w] = v;
        changed = true;
      }
    }
    if (!changed) continue;
    for (NodeId s : succs[id]) {
      if (!queued[s]) {
        worklist.push_back(s);
        queued[s] = 1;
      }
    }
  }

  DataEdges result;
  for (NodeId id = 0; id < n; ++id) {
    if (!is_node[id]) continue;
    for (const auto& u : facts[id].uses) {
      for (std::size_t d = 0; d < defs.size(); ++d) {
        if (defs[d].variable == u.variable && test_bit(in[id], d)) {
          result.edges.push_back({defs[d].node, u.use, ast[u.variable].text});
        }
      }
    }
  }
  std::sort(result.edges.begin(), result.edges.end(), [](const DataEdge& a, const DataEdge& b) {
    return std::tie(a.def, a.use) < std::tie(b.def, b.use);
  });
  result.edges.erase(std::unique(result.edges.begin(), result.edges.end(),
                                 [](const DataEdge& a, const DataEdge& b) {
                                   return a.def == b.def && a.use == b.use;
                                 }),
                     result.edges.end());
  return result;
}

}  // namespace vsel::frontend
