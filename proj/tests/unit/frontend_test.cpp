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

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vsel/error.hpp"
#include "vsel/frontend/dataflow.hpp"
#include "vsel/frontend/extract.hpp"
#include "vsel/frontend/icfg.hpp"
#include "vsel/frontend/lexer.hpp"
#include "vsel/frontend/parser.hpp"
#include "vsel/graphio/graph_json.hpp"
#include "vsel/graphio/vocabulary.hpp"

namespace fe = vsel::frontend;
using fe::Ast;
using fe::ControlEdgeKind;
using fe::NodeId;
using fe::NodeKind;
using fe::TokenKind;

namespace {

const std::string kCorpus = std::string(VSEL_SOURCE_DIR) + "/tests/corpus";

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kCorpus)) {
    if (e.path().extension() == ".c") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const vsel::graphio::TokenVocabulary& shipped_vocab() {
  static const auto v =
      vsel::graphio::TokenVocabulary::load(std::string(VSEL_SOURCE_DIR) + "/data/vocab.txt");
  return v;
}

NodeId find_node(const Ast& ast, NodeKind kind, const std::string& text = {},
                 std::size_t skip = 0) {
  for (NodeId i = 0; i < ast.size(); ++i) {
    if (ast[i].kind == kind && (text.empty() || ast[i].text == text)) {
      if (skip == 0) return i;
      --skip;
    }
  }
  return fe::kNoNode;
}

std::size_t count_kind(const fe::ControlEdges& g, ControlEdgeKind k) {
  return static_cast<std::size_t>(
      std::count_if(g.edges.begin(), g.edges.end(), [k](const auto& e) { return e.kind == k; }));
}

bool has_edge(const fe::ControlEdges& g, NodeId s, NodeId d) {
  return std::any_of(g.edges.begin(), g.edges.end(),
                     [&](const auto& e) { return e.src == s && e.dst == d; });
}

// Set of (use node, def node) pairs for uses of the named variable.
std::vector<fe::DataEdge> uses_of(const fe::DataEdges& d, const std::string& var) {
  std::vector<fe::DataEdge> out;
  for (const auto& e : d.edges)
    if (e.variable == var) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("tokenize a declaration") {
  auto toks = fe::tokenize("int a;");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].is_keyword("int"));
  CHECK(toks[1].is(TokenKind::kIdentifier, "a"));
  CHECK(toks[2].is_punct(";"));
  CHECK(toks[3].kind == TokenKind::kEnd);
}

TEST_CASE("tokenize uses maximal munch") {
  auto toks = fe::tokenize("a!=2");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].is(TokenKind::kIdentifier, "a"));
  CHECK(toks[1].is_op("!="));
  CHECK(toks[2].is(TokenKind::kIntLiteral, "2"));
}

TEST_CASE("illegal character reports its column") {
  try {
    fe::tokenize("int $x;");
    FAIL("expected LexError");
  } catch (const vsel::LexError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 5);
  }
}

TEST_CASE("tokenize drops comments and preprocessor lines") {
  auto toks = fe::tokenize("# 1 \"x.c\"\n/* c */ int // tail\n b;");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].is_keyword("int"));
  CHECK(toks[1].pos.line == 3);
}

TEST_CASE("parse a minimal main") {
  Ast ast = fe::parse_source("int main(){return 0;}");
  REQUIRE(ast.size() == 5);
  CHECK(ast[0].kind == NodeKind::kTranslationUnit);
  CHECK(ast[1].kind == NodeKind::kFunctionDecl);
  CHECK(ast[1].text == "main");
  CHECK(ast[2].kind == NodeKind::kCompoundStmt);
  CHECK(ast[3].kind == NodeKind::kReturnStmt);
  CHECK(ast[4].kind == NodeKind::kIntegerLiteral);
  for (NodeId i = 1; i < 5; ++i) CHECK(ast[i].parent == i - 1);
}

TEST_CASE("parse the alias_of_return program") {
  Ast ast = fe::parse_source(vsel::oracle::read_file(kCorpus + "/alias_of_return.c"));
  CHECK(find_node(ast, NodeKind::kFunctionDecl, "err") != fe::kNoNode);
  CHECK(find_node(ast, NodeKind::kFunctionDecl, "return_self") != fe::kNoNode);
  CHECK(find_node(ast, NodeKind::kFunctionDecl, "main") != fe::kNoNode);
  NodeId ifs = find_node(ast, NodeKind::kIfStmt);
  REQUIRE(ifs != fe::kNoNode);
  // The guarded statement is the call to err.
  REQUIRE(ast[ifs].children.size() == 2);
  const auto& then = ast[ast[ifs].children[1]];
  CHECK(then.kind == NodeKind::kCallExpr);
  CHECK(then.text == "err");
}

TEST_CASE("goto is outside the subset") {
  try {
    fe::parse_source("int main(){goto L;}");
    FAIL("expected UnsupportedConstruct");
  } catch (const vsel::UnsupportedConstruct& e) {
    CHECK(e.construct() == "goto");
    CHECK(e.code() == vsel::ErrorCode::kUnsupportedConstruct);
  }
}

TEST_CASE("parse errors name expected and found tokens") {
  try {
    fe::parse_source("int main(){ return 0 }");
    FAIL("expected ParseError");
  } catch (const vsel::ParseError& e) {
    CHECK(e.expected() == "';'");
    CHECK(e.found().find("}") != std::string::npos);
  }
}

TEST_CASE("every corpus AST is a pre-order tree rooted at TranslationUnit") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path);
    Ast ast = fe::parse_source(vsel::oracle::read_file(path));
    REQUIRE(ast.size() > 0);
    CHECK(ast[0].kind == NodeKind::kTranslationUnit);
    CHECK(ast[0].parent == fe::kNoNode);
    std::size_t edges = 0;
    std::vector<int> parents(ast.size(), 0);
    for (NodeId i = 0; i < ast.size(); ++i) {
      for (NodeId c : ast[i].children) {
        ++edges;
        ++parents[c];
        CHECK(c > i);  // pre-order: children after parents
        CHECK(ast[c].parent == i);
      }
    }
    CHECK(edges == ast.size() - 1);
    for (NodeId i = 1; i < ast.size(); ++i) CHECK(parents[i] == 1);
  }
}

TEST_CASE("while loop edges") {
  Ast ast = fe::parse_source("int main(){ int c, s; while(c){ s = 1; } return s; }");
  auto icfg = fe::build_icfg(ast);
  NodeId w = find_node(ast, NodeKind::kWhileStmt);
  NodeId s = find_node(ast, NodeKind::kBinaryOperator, "=");
  NodeId ret = find_node(ast, NodeKind::kReturnStmt);
  CHECK(has_edge(icfg, w, s));
  CHECK(has_edge(icfg, s, w));
  CHECK(has_edge(icfg, w, ret));
  for (const auto& e : icfg.edges) {
    if (e.src == s && e.dst == w) CHECK(e.kind == ControlEdgeKind::kLoopBack);
  }
}

TEST_CASE("alias_of_return ends main with an edge from the final IfStmt") {
  Ast ast = fe::parse_source(vsel::oracle::read_file(kCorpus + "/alias_of_return.c"));
  auto icfg = fe::build_icfg(ast);
  NodeId main_fn = find_node(ast, NodeKind::kFunctionDecl, "main");
  NodeId ifs = find_node(ast, NodeKind::kIfStmt);
  CHECK(has_edge(icfg, ifs, main_fn));
  // The call inside the if also falls off the end of main.
  NodeId err_call = find_node(ast, NodeKind::kCallExpr, "err");
  CHECK(has_edge(icfg, err_call, main_fn));
}

TEST_CASE("one call yields one call edge and one return edge") {
  Ast ast = fe::parse_source(
      "int f(int x){ return x + 1; }\n"
      "int main(){ int y = 0; y = f(y); return y; }");
  auto icfg = fe::build_icfg(ast);
  // Oracle: count direct CallExprs naming a function defined in the unit.
  std::set<std::string> defined;
  for (const auto& n : ast.nodes)
    if (n.kind == NodeKind::kFunctionDecl && (n.flags & fe::flags::kFunctionHasBody))
      defined.insert(n.text);
  std::size_t direct_calls = 0;
  for (const auto& n : ast.nodes)
    if (n.kind == NodeKind::kCallExpr && !(n.flags & fe::flags::kCallIndirect) &&
        defined.count(n.text))
      ++direct_calls;
  REQUIRE(direct_calls == 1);
  CHECK(count_kind(icfg, ControlEdgeKind::kCall) == 1);
  CHECK(count_kind(icfg, ControlEdgeKind::kReturn) == 1);
  NodeId f = find_node(ast, NodeKind::kFunctionDecl, "f");
  NodeId site = find_node(ast, NodeKind::kBinaryOperator, "=");
  CHECK(has_edge(icfg, site, f));
  CHECK(has_edge(icfg, f, site));
}

TEST_CASE("unresolved callees are diagnosed, not linked") {
  Ast ast = fe::parse_source("int main(){ int x = __VERIFIER_nondet_int(); return x; }");
  auto icfg = fe::build_icfg(ast);
  CHECK(count_kind(icfg, ControlEdgeKind::kCall) == 0);
  REQUIRE(icfg.diagnostics.size() == 1);
  CHECK(icfg.diagnostics[0].find("__VERIFIER_nondet_int") != std::string::npos);
}

TEST_CASE("ICFG endpoints are flow nodes and edges are sorted and unique") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path);
    Ast ast = fe::parse_source(vsel::oracle::read_file(path));
    auto icfg = fe::build_icfg(ast);
    for (std::size_t i = 0; i < icfg.edges.size(); ++i) {
      const auto& e = icfg.edges[i];
      CHECK(e.src < ast.size());
      CHECK(e.dst < ast.size());
      CHECK(fe::is_flow_node(ast, e.src));
      CHECK(fe::is_flow_node(ast, e.dst));
      if (i > 0) {
        const auto& p = icfg.edges[i - 1];
        CHECK(std::make_pair(p.src, p.dst) < std::make_pair(e.src, e.dst));
      }
    }
    // Every call edge has its matching return edge.
    for (const auto& e : icfg.edges) {
      if (e.kind != ControlEdgeKind::kCall) continue;
      bool back = false;
      for (const auto& r : icfg.edges)
        back |= r.kind == ControlEdgeKind::kReturn && r.src == e.dst && r.dst == e.src;
      CHECK(back);
    }
  }
}

TEST_CASE("straight-line single definition") {
  Ast ast = fe::parse_source("int main(){ int a, b; a = 1; b = a; return 0; }");
  auto dfg = fe::reaching_definitions(ast, fe::build_icfg(ast));
  NodeId def = find_node(ast, NodeKind::kBinaryOperator, "=");
  auto a_edges = uses_of(dfg, "a");
  REQUIRE(a_edges.size() == 1);
  CHECK(a_edges[0].def == def);
  CHECK(ast[a_edges[0].use].kind == NodeKind::kDeclRefExpr);
  CHECK(ast[a_edges[0].use].parent == find_node(ast, NodeKind::kBinaryOperator, "=", 1));
}

TEST_CASE("both branch definitions reach the join") {
  Ast ast = fe::parse_source("int main(){ int a, b, c; a = 1; if (c) a = 2; b = a; return 0; }");
  auto dfg = fe::reaching_definitions(ast, fe::build_icfg(ast));
  NodeId def1 = find_node(ast, NodeKind::kBinaryOperator, "=", 0);
  NodeId def2 = find_node(ast, NodeKind::kBinaryOperator, "=", 1);
  NodeId join = find_node(ast, NodeKind::kBinaryOperator, "=", 2);
  std::set<NodeId> defs;
  for (const auto& e : uses_of(dfg, "a"))
    if (ast[e.use].parent == join) defs.insert(e.def);
  CHECK(defs == std::set<NodeId>{def1, def2});
}

TEST_CASE("loop definitions both reach the loop condition") {
  Ast ast = fe::parse_source("int main(){ int i, n; i = 0; while (i < n) { i = i + 1; } return i; }");
  auto dfg = fe::reaching_definitions(ast, fe::build_icfg(ast));
  NodeId init = find_node(ast, NodeKind::kBinaryOperator, "=", 0);
  NodeId body = find_node(ast, NodeKind::kBinaryOperator, "=", 1);
  NodeId cond = find_node(ast, NodeKind::kBinaryOperator, "<");
  std::set<NodeId> defs;
  for (const auto& e : uses_of(dfg, "i"))
    if (ast[e.use].parent == cond) defs.insert(e.def);
  CHECK(defs == std::set<NodeId>{init, body});
}

TEST_CASE("same-named locals in different functions never alias") {
  Ast ast = fe::parse_source(
      "void g(){ int a; a = 5; }\n"
      "int main(){ int a; a = 1; g(); return a; }");
  auto dfg = fe::reaching_definitions(ast, fe::build_icfg(ast));
  NodeId main_def = find_node(ast, NodeKind::kBinaryOperator, "=", 1);
  for (const auto& e : uses_of(dfg, "a")) {
    if (ast[ast[e.use].parent].kind == NodeKind::kReturnStmt) CHECK(e.def == main_def);
  }
}

TEST_CASE("reaching definitions agree with path enumeration on the corpus") {
  for (const auto& path : corpus_files()) {
    CAPTURE(path);
    Ast ast = fe::parse_source(vsel::oracle::read_file(path));
    auto icfg = fe::build_icfg(ast);
    auto dfg = fe::reaching_definitions(ast, icfg);
    std::set<vsel::oracle::DefUseTriple> got;
    for (const auto& e : dfg.edges) {
      CHECK(e.def < ast.size());
      CHECK(e.use < ast.size());
      got.emplace(e.def, e.use, ast[e.use].decl);
      CHECK(ast[ast[e.use].decl].text == e.variable);
    }
    auto want = vsel::oracle::brute_force_reaching(ast, icfg);
    CHECK(got == want);
  }
}

TEST_CASE("extraction is deterministic") {
  const auto& vocab = shipped_vocab();
  for (const auto& path : corpus_files()) {
    CAPTURE(path);
    const std::string src = vsel::oracle::read_file(path);
    auto a = fe::extract_program(src, "p", vsel::graphio::PropertyKind::kReachSafety, vocab);
    auto b = fe::extract_program(src, "p", vsel::graphio::PropertyKind::kReachSafety, vocab);
    CHECK(vsel::graphio::serialize_graph(a.graph) == vsel::graphio::serialize_graph(b.graph));
    CHECK(a.graph.edge_set(vsel::graphio::EdgeSet::kAst).size() == a.graph.num_nodes() - 1);
  }
}

TEST_CASE("empty translation unit gives one node and no edges") {
  auto ex = fe::extract_program("", "empty", vsel::graphio::PropertyKind::kReachSafety,
                                shipped_vocab());
  CHECK(ex.graph.num_nodes() == 1);
  for (auto es : vsel::graphio::kAllEdgeSets) CHECK(ex.graph.edge_set(es).empty());
}

TEST_CASE("alias_of_return graph has the root-to-err AST edge") {
  const auto& vocab = shipped_vocab();
  const std::string src = vsel::oracle::read_file(kCorpus + "/alias_of_return.c");
  Ast ast = fe::parse_source(src);
  NodeId err = find_node(ast, NodeKind::kFunctionDecl, "err");
  auto ex = fe::extract_program(src, "alias_of_return", vsel::graphio::PropertyKind::kReachSafety,
                                vocab);
  const auto& ast_edges = ex.graph.edge_set(vsel::graphio::EdgeSet::kAst);
  CHECK(std::find(ast_edges.begin(), ast_edges.end(), vsel::graphio::Edge{0, err}) !=
        ast_edges.end());
  CHECK(ex.graph.node_kinds[0] == vocab.lookup("TranslationUnit"));
  CHECK(ex.graph.node_kinds[err] == vocab.lookup("FunctionDecl"));
}

TEST_CASE("three-statement main: AST is a tree, ICFG has entry, two successors, exit") {
  const std::string src = "int main(){ int a = 1; a = a + 1; return a; }";
  Ast ast = fe::parse_source(src);
  auto ex =
      fe::extract_program(src, "m", vsel::graphio::PropertyKind::kReachSafety, shipped_vocab());
  CHECK(ex.graph.edge_set(vsel::graphio::EdgeSet::kAst).size() == ex.graph.num_nodes() - 1);
  // Hand-derived: main->s1 (entry), s1->s2, s2->s3, s3->main (return).
  NodeId fn = find_node(ast, NodeKind::kFunctionDecl, "main");
  NodeId s1 = find_node(ast, NodeKind::kDeclStmt);
  NodeId s2 = find_node(ast, NodeKind::kBinaryOperator, "=");
  NodeId s3 = find_node(ast, NodeKind::kReturnStmt);
  std::vector<vsel::graphio::Edge> want = {{fn, s1}, {s1, s2}, {s2, s3}, {s3, fn}};
  std::sort(want.begin(), want.end());
  CHECK(ex.graph.edge_set(vsel::graphio::EdgeSet::kIcfg) == want);
}

TEST_CASE("node cap raises GraphTooLarge") {
  try {
    fe::extract_program("int main(){ return 0; }", "m", vsel::graphio::PropertyKind::kReachSafety,
                        shipped_vocab(), 3);
    FAIL("expected GraphTooLarge");
  } catch (const vsel::Error& e) {
    CHECK(e.code() == vsel::ErrorCode::kGraphTooLarge);
  }
}

TEST_CASE("verifier intrinsics keep their own vocabulary entries") {
  const auto& vocab = shipped_vocab();
  auto ex = fe::extract_program("int main(){ int x = __VERIFIER_nondet_int(); return x; }", "m",
                                vsel::graphio::PropertyKind::kReachSafety, vocab);
  const auto idx = vocab.lookup("CallExpr", "__VERIFIER_nondet_int");
  CHECK(idx != vocab.lookup("CallExpr"));
  CHECK(std::count(ex.graph.node_kinds.begin(), ex.graph.node_kinds.end(), idx) == 1);
}
