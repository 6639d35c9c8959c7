// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/ast.hpp"

#include <functional>

namespace ares {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Block: return "Block";
    case NodeKind::Decl: return "Decl";
    case NodeKind::Assign: return "Assign";
    case NodeKind::If: return "If";
    case NodeKind::While: return "While";
    case NodeKind::For: return "For";
    case NodeKind::Try: return "Try";
    case NodeKind::Catch: return "Catch";
    case NodeKind::Finally: return "Finally";
    case NodeKind::Return: return "Return";
    case NodeKind::Assert: return "Assert";
    case NodeKind::Throw: return "Throw";
    case NodeKind::Call: return "Call";
    case NodeKind::FieldAccess: return "FieldAccess";
    case NodeKind::Binary: return "Binary";
    case NodeKind::Unary: return "Unary";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::IntLit: return "IntLit";
    case NodeKind::BoolLit: return "BoolLit";
    case NodeKind::StringLit: return "StringLit";
    case NodeKind::TypeName: return "TypeName";
    case NodeKind::Empty: return "Empty";
    case NodeKind::WildcardStmt: return "WildcardStmt";
    case NodeKind::WildcardExpr: return "WildcardExpr";
    case NodeKind::UseStmt: return "UseStmt";
    case NodeKind::UseExpr: return "UseExpr";
    case NodeKind::Choice: return "Choice";
    case NodeKind::ChoiceCase: return "ChoiceCase";
    case NodeKind::Hole: return "Hole";
  }
  return "?";
}

bool is_leaf_kind(NodeKind k) {
  switch (k) {
    case NodeKind::Identifier:
    case NodeKind::IntLit:
    case NodeKind::BoolLit:
    case NodeKind::StringLit:
    case NodeKind::TypeName:
    case NodeKind::Empty:
    case NodeKind::WildcardStmt:
    case NodeKind::WildcardExpr:
    case NodeKind::UseStmt:
    case NodeKind::UseExpr:
    case NodeKind::Hole:
      return true;
    default:
      return false;
  }
}

bool is_annotation_kind(NodeKind k) {
  switch (k) {
    case NodeKind::WildcardStmt:
    case NodeKind::WildcardExpr:
    case NodeKind::UseStmt:
    case NodeKind::UseExpr:
    case NodeKind::Choice:
    case NodeKind::ChoiceCase:
    case NodeKind::Hole:
      return true;
    default:
      return false;
  }
}

int Tree::add(NodeKind kind, std::string label, int parent) {
  Node n;
  n.kind = kind;
  n.label = std::move(label);
  n.parent = parent;
  nodes.push_back(std::move(n));
  int id = static_cast<int>(nodes.size()) - 1;
  if (parent >= 0) nodes[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

void Tree::attach(int child, int parent) {
  nodes[static_cast<std::size_t>(child)].parent = parent;
  nodes[static_cast<std::size_t>(parent)].children.push_back(child);
}

std::vector<int> Tree::preorder(int from) const {
  std::vector<int> out;
  if (nodes.empty()) return out;
  if (from < 0) from = root();
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const auto& ch = at(id).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

int Tree::subtree_size(int id) const {
  int count = 0;
  for (int n : preorder(id)) {
    (void)n;
    ++count;
  }
  return count;
}

int Tree::last_preorder(int id) const {
  int cur = id;
  while (!at(cur).children.empty()) cur = at(cur).children.back();
  return cur;
}

bool Tree::is_statement(int id) const {
  int p = at(id).parent;
  if (p < 0) return false;
  NodeKind pk = at(p).kind;
  return pk == NodeKind::Block || pk == NodeKind::ChoiceCase;
}

int Tree::statement_of(int id) const {
  int cur = id;
  while (cur >= 0 && !is_statement(cur)) cur = at(cur).parent;
  return cur;
}

int Tree::enclosing_block(int id) const {
  int cur = at(id).parent;
  while (cur >= 0 && at(cur).kind != NodeKind::Block) cur = at(cur).parent;
  return cur;
}

bool Tree::is_ancestor(int anc, int id) const {
  int cur = at(id).parent;
  while (cur >= 0) {
    if (cur == anc) return true;
    cur = at(cur).parent;
  }
  return false;
}

std::vector<std::uint64_t> Tree::structural_hashes() const {
  std::vector<std::uint64_t> h(nodes.size(), 0);
  // children have larger ids than parents only in freshly parsed trees; walk
  // explicitly to stay correct for grafted trees
  std::function<std::uint64_t(int)> go = [&](int id) -> std::uint64_t {
    const Node& n = at(id);
    std::uint64_t v = 1469598103934665603ull;
    auto mix = [&v](std::uint64_t x) {
      v ^= x;
      v *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(n.kind) + 0x9e37);
    for (char c : n.label) mix(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    mix(0x2545F4914F6CDD1Dull);
    for (char c : n.anchor_lexeme) mix(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    mix(static_cast<std::uint64_t>(n.anchor_ordinal) + 0x51);
    for (int c : n.children) mix(go(c));
    h[static_cast<std::size_t>(id)] = v;
    return v;
  };
  if (!nodes.empty()) go(root());
  return h;
}

Tree Tree::copy_subtree(int id) const {
  Tree out;
  std::function<int(int, int)> go = [&](int src, int parent) -> int {
    const Node& n = at(src);
    int nid = out.add(n.kind, n.label, parent);
    out.at(nid).span = n.span;
    out.at(nid).anchor_lexeme = n.anchor_lexeme;
    out.at(nid).anchor_ordinal = n.anchor_ordinal;
    for (int c : n.children) go(c, nid);
    return nid;
  };
  go(id, -1);
  return out;
}

int Tree::graft(const Tree& src, int src_id, int parent) {
  std::function<int(int, int)> go = [&](int s, int p) -> int {
    const Node& n = src.at(s);
    int nid = add(n.kind, n.label, p);
    at(nid).span = n.span;
    at(nid).anchor_lexeme = n.anchor_lexeme;
    at(nid).anchor_ordinal = n.anchor_ordinal;
    for (int c : n.children) go(c, nid);
    return nid;
  };
  return go(src_id, parent);
}

bool structurally_equal(const Tree& a, int ida, const Tree& b, int idb) {
  const Node& na = a.at(ida);
  const Node& nb = b.at(idb);
  if (na.kind != nb.kind || na.label != nb.label) return false;
  if (na.anchor_lexeme != nb.anchor_lexeme || na.anchor_ordinal != nb.anchor_ordinal) return false;
  if (na.children.size() != nb.children.size()) return false;
  for (std::size_t i = 0; i < na.children.size(); ++i)
    if (!structurally_equal(a, na.children[i], b, nb.children[i])) return false;
  return true;
}

std::vector<int> preorder_nodes(const Tree& tree) { return tree.preorder(); }

TokenStream tokenize(const MethodBody& body) { return lex(body.source); }

int first_terminal(const Tree& tree, int id) {
  for (int n : tree.preorder(id))
    if (!tree.at(n).label.empty()) return n;
  return -1;
}

}  // namespace ares
