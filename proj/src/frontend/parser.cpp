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

#include "vsel/frontend/parser.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace vsel::frontend {

namespace {

bool is_type_keyword(std::string_view t) {
  return t == "int" || t == "char" || t == "void" || t == "short" ||
         t == "long" || t == "unsigned" || t == "signed" || t == "float" ||
         t == "double" || t == "_Bool" || t == "struct" || t == "union" ||
         t == "enum";
}

bool is_qualifier_keyword(std::string_view t) {
  return t == "const" || t == "volatile" || t == "static" || t == "extern" ||
         t == "register" || t == "inline" || t == "__inline" || t == "auto" ||
         t == "typedef" || t == "restrict" || t == "__restrict";
}

bool is_assignment_op(std::string_view t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
         t == "%=" || t == "&=" || t == "|=" || t == "^=" || t == "<<=" ||
         t == ">>=";
}

int binary_precedence(const Token& t) {
  if (t.kind != TokenKind::kOperator) return -1;
  const std::string& s = t.text;
  if (s == "||") return 1;
  if (s == "&&") return 2;
  if (s == "|") return 3;
  if (s == "^") return 4;
  if (s == "&") return 5;
  if (s == "==" || s == "!=") return 6;
  if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
  if (s == "<<" || s == ">>") return 8;
  if (s == "+" || s == "-") return 9;
  if (s == "*" || s == "/" || s == "%") return 10;
  return -1;
}

std::string describe(const Token& t) {
  if (t.kind == TokenKind::kEnd) return "end of input";
  return std::string(token_kind_name(t.kind)) + " '" + t.text + "'";
}

struct Declarator {
  std::string name;
  SourcePos pos;
  bool is_function = false;
  struct Param {
    std::string name;
    SourcePos pos;
  };
  std::vector<Param> params;
};

class Parser {
 public:
  explicit Parser(std::span<const Token> toks) : toks_(toks) {}

  Ast run() {
    NodeId tu = make(NodeKind::kTranslationUnit, "", cur().pos);
    scopes_.emplace_back();
    while (cur().kind != TokenKind::kEnd) parse_external(tu);
    return finish(tu);
  }

 private:
  // ---- token helpers ----
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t k) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[i_];
    if (t.kind != TokenKind::kEnd) ++i_;
    return t;
  }
  bool accept_punct(std::string_view p) {
    if (cur().is_punct(p)) {
      ++i_;
      return true;
    }
    return false;
  }
  bool accept_op(std::string_view p) {
    if (cur().is_op(p)) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) throw ParseError(cur().pos, "'" + std::string(p) + "'", describe(cur()));
  }
  void expect_op(std::string_view p) {
    if (!accept_op(p)) throw ParseError(cur().pos, "'" + std::string(p) + "'", describe(cur()));
  }
  std::string expect_identifier() {
    if (cur().kind != TokenKind::kIdentifier) {
      throw ParseError(cur().pos, "identifier", describe(cur()));
    }
    return next().text;
  }

  // ---- node helpers ----
  NodeId make(NodeKind kind, std::string text, SourcePos pos) {
    AstNode n;
    n.kind = kind;
    n.text = std::move(text);
    n.pos = pos;
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }
  void add(NodeId parent, NodeId child) { nodes_[parent].children.push_back(child); }

  // ---- scopes ----
  void declare(const std::string& name, NodeId decl) {
    if (!name.empty()) scopes_.back()[name] = decl;
  }
  NodeId lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return kNoNode;
  }
  bool is_typedef_name(const Token& t) const {
    return t.kind == TokenKind::kIdentifier && typedefs_.count(t.text) != 0 &&
           lookup(t.text) == kNoNode;
  }
  bool starts_type(const Token& t) const {
    if (t.kind == TokenKind::kKeyword) {
      return is_type_keyword(t.text) || is_qualifier_keyword(t.text);
    }
    return is_typedef_name(t) || (t.kind == TokenKind::kIdentifier &&
                                  (t.text == "__attribute__" || t.text == "__extension__"));
  }

  void skip_attribute() {
    // __attribute__((...)) with balanced parentheses.
    next();
    expect_punct("(");
    int depth = 1;
    while (depth > 0) {
      const Token& t = next();
      if (t.kind == TokenKind::kEnd) throw ParseError(t.pos, "')'", describe(t));
      if (t.is_punct("(")) ++depth;
      if (t.is_punct(")")) --depth;
    }
  }

  // ---- declarations ----
  struct DeclSpec {
    bool is_typedef = false;
    bool any = false;
  };

  // Parses specifiers; struct/enum definitions become nodes in `tags`.
  DeclSpec parse_decl_specifiers(std::vector<NodeId>& tags) {
    DeclSpec spec;
    bool saw_base = false;
    while (true) {
      const Token& t = cur();
      if (t.kind == TokenKind::kIdentifier &&
          (t.text == "__attribute__" || t.text == "__extension__")) {
        if (t.text == "__attribute__") {
          skip_attribute();
        } else {
          next();
        }
        continue;
      }
      if (t.kind == TokenKind::kKeyword && is_qualifier_keyword(t.text)) {
        if (t.text == "typedef") spec.is_typedef = true;
        next();
        spec.any = true;
        continue;
      }
      if (t.kind == TokenKind::kKeyword && (t.text == "struct" || t.text == "union")) {
        parse_record(tags);
        saw_base = spec.any = true;
        continue;
      }
      if (t.is_keyword("enum")) {
        parse_enum(tags);
        saw_base = spec.any = true;
        continue;
      }
      if (t.kind == TokenKind::kKeyword && is_type_keyword(t.text)) {
        next();
        saw_base = spec.any = true;
        continue;
      }
      if (!saw_base && is_typedef_name(t)) {
        next();
        saw_base = spec.any = true;
        continue;
      }
      break;
    }
    if (!spec.any) throw ParseError(cur().pos, "type specifier", describe(cur()));
    return spec;
  }

  void parse_record(std::vector<NodeId>& tags) {
    SourcePos pos = next().pos;  // struct | union
    std::string tag;
    if (cur().kind == TokenKind::kIdentifier) tag = next().text;
    if (!cur().is_punct("{")) return;
    next();
    NodeId rec = make(NodeKind::kRecordDecl, tag, pos);
    while (!accept_punct("}")) {
      std::vector<NodeId> inner;
      parse_decl_specifiers(inner);
      for (NodeId n : inner) add(rec, n);
      if (accept_punct(";")) continue;
      do {
        Declarator d = parse_declarator(false);
        if (cur().is_op(":")) throw UnsupportedConstruct(cur().pos, "bit-field");
        add(rec, make(NodeKind::kFieldDecl, d.name, d.pos));
      } while (accept_punct(","));
      expect_punct(";");
    }
    tags.push_back(rec);
  }

  void parse_enum(std::vector<NodeId>& tags) {
    SourcePos pos = next().pos;
    std::string tag;
    if (cur().kind == TokenKind::kIdentifier) tag = next().text;
    if (!cur().is_punct("{")) return;
    next();
    NodeId en = make(NodeKind::kEnumDecl, tag, pos);
    while (!accept_punct("}")) {
      SourcePos cpos = cur().pos;
      std::string name = expect_identifier();
      NodeId c = make(NodeKind::kEnumConstantDecl, name, cpos);
      if (accept_op("=")) add(c, parse_conditional());
      add(en, c);
      declare(name, c);
      if (!accept_punct(",")) {
        expect_punct("}");
        break;
      }
    }
    tags.push_back(en);
  }

  void skip_array_suffixes() {
    while (accept_punct("[")) {
      if (!cur().is_punct("]")) parse_assignment();  // size expression is dropped
      expect_punct("]");
    }
  }

  // Declarator: pointers, identifier (optional when abstract), then array or
  // parameter-list suffixes.
  Declarator parse_declarator(bool abstract_ok) {
    Declarator d;
    while (cur().is_op("*") || cur().is_keyword("const") || cur().is_keyword("volatile") ||
           cur().is_keyword("restrict") || cur().is_keyword("__restrict")) {
      next();
    }
    if (cur().is_punct("(") && peek(1).is_op("*")) {
      throw UnsupportedConstruct(cur().pos, "function pointer declarator");
    }
    d.pos = cur().pos;
    if (cur().kind == TokenKind::kIdentifier) {
      d.name = next().text;
    } else if (!abstract_ok) {
      throw ParseError(cur().pos, "identifier", describe(cur()));
    }
    if (cur().is_punct("(")) {
      next();
      d.is_function = true;
      parse_params(d);
    }
    skip_array_suffixes();
    while (cur().kind == TokenKind::kIdentifier && cur().text == "__attribute__") {
      skip_attribute();
    }
    return d;
  }

  void parse_params(Declarator& d) {
    if (accept_punct(")")) return;
    if (cur().is_keyword("void") && peek(1).is_punct(")")) {
      next();
      next();
      return;
    }
    while (true) {
      if (accept_op("...")) {
        expect_punct(")");
        return;
      }
      std::vector<NodeId> ignored;
      parse_decl_specifiers(ignored);
      Declarator p = parse_declarator(true);
      if (p.is_function) throw UnsupportedConstruct(p.pos, "function pointer declarator");
      d.params.push_back({p.name, p.pos});
      if (accept_punct(")")) return;
      expect_punct(",");
    }
  }

  NodeId parse_initializer() {
    if (cur().is_punct("{")) {
      SourcePos pos = next().pos;
      NodeId list = make(NodeKind::kInitListExpr, "", pos);
      while (!accept_punct("}")) {
        if (accept_op(".")) {
          expect_identifier();
          expect_op("=");
        }
        add(list, parse_initializer());
        if (!accept_punct(",")) {
          expect_punct("}");
          break;
        }
      }
      return list;
    }
    return parse_assignment();
  }

  void parse_external(NodeId tu) {
    if (accept_punct(";")) return;
    std::vector<NodeId> tags;
    DeclSpec spec = parse_decl_specifiers(tags);
    for (NodeId t : tags) add(tu, t);
    if (accept_punct(";")) return;
    while (true) {
      Declarator d = parse_declarator(false);
      if (spec.is_typedef) {
        add(tu, make(NodeKind::kTypedefDecl, d.name, d.pos));
        typedefs_.insert(d.name);
      } else if (d.is_function) {
        NodeId fn = make(NodeKind::kFunctionDecl, d.name, d.pos);
        add(tu, fn);
        if (cur().is_punct("{")) {
          scopes_.emplace_back();
          for (const auto& p : d.params) {
            NodeId pv = make(NodeKind::kParmVarDecl, p.name, p.pos);
            add(fn, pv);
            declare(p.name, pv);
          }
          add(fn, parse_compound());
          scopes_.pop_back();
          nodes_[fn].flags |= flags::kFunctionHasBody;
          return;
        }
        for (const auto& p : d.params) add(fn, make(NodeKind::kParmVarDecl, p.name, p.pos));
      } else {
        NodeId v = make(NodeKind::kVarDecl, d.name, d.pos);
        declare(d.name, v);
        if (accept_op("=")) add(v, parse_initializer());
        add(tu, v);
      }
      if (accept_punct(",")) continue;
      expect_punct(";");
      return;
    }
  }

  // Local declaration; returns a DeclStmt.
  NodeId parse_local_declaration() {
    SourcePos pos = cur().pos;
    NodeId ds = make(NodeKind::kDeclStmt, "", pos);
    std::vector<NodeId> tags;
    DeclSpec spec = parse_decl_specifiers(tags);
    for (NodeId t : tags) add(ds, t);
    if (accept_punct(";")) return ds;
    while (true) {
      Declarator d = parse_declarator(false);
      if (spec.is_typedef) {
        add(ds, make(NodeKind::kTypedefDecl, d.name, d.pos));
        typedefs_.insert(d.name);
      } else if (d.is_function) {
        add(ds, make(NodeKind::kFunctionDecl, d.name, d.pos));
      } else {
        NodeId v = make(NodeKind::kVarDecl, d.name, d.pos);
        declare(d.name, v);
        if (accept_op("=")) add(v, parse_initializer());
        add(ds, v);
      }
      if (accept_punct(",")) continue;
      expect_punct(";");
      return ds;
    }
  }

  // ---- statements ----
  NodeId parse_compound() {
    SourcePos pos = cur().pos;
    expect_punct("{");
    NodeId c = make(NodeKind::kCompoundStmt, "", pos);
    scopes_.emplace_back();
    while (!accept_punct("}")) {
      if (cur().kind == TokenKind::kEnd) throw ParseError(cur().pos, "'}'", describe(cur()));
      add(c, parse_statement());
    }
    scopes_.pop_back();
    return c;
  }

  NodeId parse_statement() {
    const Token& t = cur();
    SourcePos pos = t.pos;
    if (t.is_punct("{")) return parse_compound();
    if (t.is_punct(";")) {
      next();
      return make(NodeKind::kNullStmt, "", pos);
    }
    if (t.kind == TokenKind::kKeyword) {
      const std::string kw = t.text;
      if (kw == "if") {
        next();
        NodeId n = make(NodeKind::kIfStmt, "", pos);
        expect_punct("(");
        add(n, parse_expression());
        expect_punct(")");
        add(n, parse_statement());
        if (cur().is_keyword("else")) {
          next();
          add(n, parse_statement());
          nodes_[n].flags |= flags::kIfHasElse;
        }
        return n;
      }
      if (kw == "while") {
        next();
        NodeId n = make(NodeKind::kWhileStmt, "", pos);
        expect_punct("(");
        add(n, parse_expression());
        expect_punct(")");
        add(n, parse_statement());
        return n;
      }
      if (kw == "do") {
        next();
        NodeId n = make(NodeKind::kDoStmt, "", pos);
        add(n, parse_statement());
        if (!cur().is_keyword("while")) throw ParseError(cur().pos, "'while'", describe(cur()));
        next();
        expect_punct("(");
        add(n, parse_expression());
        expect_punct(")");
        expect_punct(";");
        return n;
      }
      if (kw == "for") return parse_for();
      if (kw == "switch") {
        next();
        NodeId n = make(NodeKind::kSwitchStmt, "", pos);
        expect_punct("(");
        add(n, parse_expression());
        expect_punct(")");
        add(n, parse_statement());
        return n;
      }
      if (kw == "case") {
        next();
        NodeId n = make(NodeKind::kCaseStmt, "", pos);
        add(n, parse_conditional());
        expect_op(":");
        add(n, parse_statement());
        return n;
      }
      if (kw == "default") {
        next();
        NodeId n = make(NodeKind::kDefaultStmt, "", pos);
        expect_op(":");
        add(n, parse_statement());
        return n;
      }
      if (kw == "return") {
        next();
        NodeId n = make(NodeKind::kReturnStmt, "", pos);
        if (!cur().is_punct(";")) add(n, parse_expression());
        expect_punct(";");
        return n;
      }
      if (kw == "break" || kw == "continue") {
        next();
        expect_punct(";");
        return make(kw == "break" ? NodeKind::kBreakStmt : NodeKind::kContinueStmt, "", pos);
      }
      if (kw == "goto") throw UnsupportedConstruct(pos, "goto");
      if (kw == "else") throw ParseError(pos, "statement", describe(t));
    }
    if (t.kind == TokenKind::kIdentifier && peek(1).is_op(":")) {
      std::string label = next().text;
      next();
      NodeId n = make(NodeKind::kLabelStmt, label, pos);
      add(n, parse_statement());
      return n;
    }
    if (starts_type(t)) return parse_local_declaration();
    NodeId e = parse_expression();
    expect_punct(";");
    return e;
  }

  NodeId parse_for() {
    SourcePos pos = next().pos;
    NodeId n = make(NodeKind::kForStmt, "", pos);
    scopes_.emplace_back();
    expect_punct("(");
    if (!accept_punct(";")) {
      if (starts_type(cur())) {
        add(n, parse_local_declaration());
      } else {
        add(n, parse_expression());
        expect_punct(";");
      }
      nodes_[n].flags |= flags::kForHasInit;
    }
    if (!accept_punct(";")) {
      add(n, parse_expression());
      expect_punct(";");
      nodes_[n].flags |= flags::kForHasCond;
    }
    if (!accept_punct(")")) {
      add(n, parse_expression());
      expect_punct(")");
      nodes_[n].flags |= flags::kForHasInc;
    }
    add(n, parse_statement());
    scopes_.pop_back();
    return n;
  }

  // ---- expressions ----
  NodeId parse_expression() {
    NodeId lhs = parse_assignment();
    while (cur().is_punct(",")) {
      SourcePos pos = next().pos;
      NodeId n = make(NodeKind::kBinaryOperator, ",", pos);
      add(n, lhs);
      add(n, parse_assignment());
      lhs = n;
    }
    return lhs;
  }

  NodeId parse_assignment() {
    NodeId lhs = parse_conditional();
    if (cur().kind == TokenKind::kOperator && is_assignment_op(cur().text)) {
      const Token& op = next();
      NodeId n = make(op.text == "=" ? NodeKind::kBinaryOperator
                                     : NodeKind::kCompoundAssignOperator,
                      op.text, op.pos);
      add(n, lhs);
      add(n, parse_assignment());
      return n;
    }
    return lhs;
  }

  NodeId parse_conditional() {
    NodeId c = parse_binary(1);
    if (cur().is_op("?")) {
      SourcePos pos = next().pos;
      NodeId n = make(NodeKind::kConditionalOperator, "?:", pos);
      add(n, c);
      add(n, parse_expression());
      expect_op(":");
      add(n, parse_conditional());
      return n;
    }
    return c;
  }

  NodeId parse_binary(int min_prec) {
    NodeId lhs = parse_unary();
    while (true) {
      int prec = binary_precedence(cur());
      if (prec < min_prec) return lhs;
      const Token& op = next();
      NodeId n = make(NodeKind::kBinaryOperator, op.text, op.pos);
      add(n, lhs);
      add(n, parse_binary(prec + 1));
      lhs = n;
    }
  }

  void parse_type_name() {
    std::vector<NodeId> ignored;
    parse_decl_specifiers(ignored);
    Declarator d = parse_declarator(true);
    if (!d.name.empty()) throw ParseError(d.pos, "type name", "identifier '" + d.name + "'");
  }

  NodeId parse_unary() {
    const Token& t = cur();
    SourcePos pos = t.pos;
    if (t.is_op("++") || t.is_op("--")) {
      std::string op = next().text;
      NodeId n = make(NodeKind::kUnaryOperator, op, pos);
      add(n, parse_unary());
      return n;
    }
    if (t.is_op("+") || t.is_op("-") || t.is_op("!") || t.is_op("~") || t.is_op("*") ||
        t.is_op("&")) {
      std::string op = next().text;
      NodeId n = make(NodeKind::kUnaryOperator, op, pos);
      add(n, parse_unary());
      return n;
    }
    if (t.is_keyword("sizeof")) {
      next();
      NodeId n = make(NodeKind::kUnaryExprOrTypeTraitExpr, "sizeof", pos);
      if (cur().is_punct("(") && starts_type(peek(1))) {
        next();
        parse_type_name();
        expect_punct(")");
      } else {
        add(n, parse_unary());
      }
      return n;
    }
    if (t.is_punct("(") && starts_type(peek(1))) {
      next();
      parse_type_name();
      expect_punct(")");
      if (cur().is_punct("{")) throw UnsupportedConstruct(cur().pos, "compound literal");
      NodeId n = make(NodeKind::kCStyleCastExpr, "", pos);
      add(n, parse_unary());
      return n;
    }
    return parse_postfix(parse_primary());
  }

  void parse_arguments(NodeId call) {
    if (accept_punct(")")) return;
    while (true) {
      add(call, parse_assignment());
      if (accept_punct(")")) return;
      expect_punct(",");
    }
  }

  NodeId parse_primary() {
    const Token& t = cur();
    SourcePos pos = t.pos;
    switch (t.kind) {
      case TokenKind::kIdentifier: {
        std::string name = next().text;
        if (cur().is_punct("(") && lookup(name) == kNoNode) {
          next();
          NodeId call = make(NodeKind::kCallExpr, name, pos);
          parse_arguments(call);
          return call;
        }
        NodeId ref = make(NodeKind::kDeclRefExpr, name, pos);
        nodes_[ref].decl = lookup(name);
        return ref;
      }
      case TokenKind::kIntLiteral:
        return make(NodeKind::kIntegerLiteral, next().text, pos);
      case TokenKind::kFloatLiteral:
        return make(NodeKind::kFloatingLiteral, next().text, pos);
      case TokenKind::kCharLiteral:
        return make(NodeKind::kCharacterLiteral, next().text, pos);
      case TokenKind::kStringLiteral: {
        std::string text = next().text;
        while (cur().kind == TokenKind::kStringLiteral) text += next().text;
        return make(NodeKind::kStringLiteral, text, pos);
      }
      case TokenKind::kPunct:
        if (t.is_punct("(")) {
          next();
          NodeId e = parse_expression();
          expect_punct(")");
          return e;
        }
        break;
      default:
        break;
    }
    throw ParseError(pos, "expression", describe(t));
  }

  NodeId parse_postfix(NodeId base) {
    while (true) {
      const Token& t = cur();
      SourcePos pos = t.pos;
      if (t.is_punct("(")) {
        next();
        NodeId call = make(NodeKind::kCallExpr, "", pos);
        nodes_[call].flags |= flags::kCallIndirect;
        add(call, base);
        parse_arguments(call);
        base = call;
      } else if (t.is_punct("[")) {
        next();
        NodeId n = make(NodeKind::kArraySubscriptExpr, "", pos);
        add(n, base);
        add(n, parse_expression());
        expect_punct("]");
        base = n;
      } else if (t.is_op(".") || t.is_op("->")) {
        bool arrow = next().text == "->";
        NodeId n = make(NodeKind::kMemberExpr, expect_identifier(), pos);
        if (arrow) nodes_[n].flags |= flags::kMemberArrow;
        add(n, base);
        base = n;
      } else if (t.is_op("++") || t.is_op("--")) {
        NodeId n = make(NodeKind::kUnaryOperator, next().text, pos);
        nodes_[n].flags |= flags::kUnaryPostfix;
        add(n, base);
        base = n;
      } else {
        return base;
      }
    }
  }

  // Renumbers reachable nodes in pre-order and fills parent links. Nodes
  // that were parsed but dropped (array sizes, cast types) disappear here.
  Ast finish(NodeId root) {
    std::vector<NodeId> order;
    std::vector<NodeId> stack{root};
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      order.push_back(n);
      const auto& ch = nodes_[n].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    std::vector<NodeId> remap(nodes_.size(), kNoNode);
    for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = static_cast<NodeId>(k);
    Ast ast;
    ast.root = 0;
    ast.nodes.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      AstNode n = std::move(nodes_[order[k]]);
      for (NodeId& c : n.children) c = remap[c];
      if (n.decl != kNoNode) n.decl = remap[n.decl];
      ast.nodes[k] = std::move(n);
    }
    for (std::size_t k = 0; k < ast.nodes.size(); ++k) {
      for (NodeId c : ast.nodes[k].children) ast.nodes[c].parent = static_cast<NodeId>(k);
    }
    return ast;
  }

  std::span<const Token> toks_;
  std::size_t i_ = 0;
  std::vector<AstNode> nodes_;
  std::vector<std::unordered_map<std::string, NodeId>> scopes_;
  std::unordered_set<std::string> typedefs_;
};

}  // namespace

Ast parse(std::span<const Token> tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::kEnd) {
    throw Error(ErrorCode::kInvalidArgument, "token stream must end with an end token");
  }
  return Parser(tokens).run();
}

Ast parse_source(std::string_view source) {
  auto tokens = tokenize(source);
  return parse(tokens);
}

}  // namespace vsel::frontend
