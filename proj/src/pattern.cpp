// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/pattern.hpp"

#include <set>

#include "ares/errors.hpp"

namespace ares {

int anchored_statement(const Tree& tree, int marker) {
  int parent = tree.at(marker).parent;
  if (parent < 0) return -1;
  const auto& siblings = tree.at(parent).children;
  bool seen = false;
  for (int s : siblings) {
    if (s == marker) {
      seen = true;
      continue;
    }
    if (!seen) continue;
    NodeKind k = tree.at(s).kind;
    if (k == NodeKind::WildcardExpr || k == NodeKind::UseExpr) continue;
    return s;
  }
  return -1;
}

int resolve_anchor(const Tree& tree, int marker) {
  int stmt = anchored_statement(tree, marker);
  if (stmt < 0) return -1;
  const Node& m = tree.at(marker);
  if (m.anchor_lexeme.empty() || m.anchor_ordinal < 1) return -1;
  // find the ordinal-th terminal with the anchor lexeme
  int seen = 0;
  int terminal = -1;
  for (int n : tree.preorder(stmt)) {
    if (tree.at(n).label == m.anchor_lexeme) {
      ++seen;
      if (seen == m.anchor_ordinal) {
        terminal = n;
        break;
      }
    }
  }
  if (terminal < 0) return -1;
  // highest ancestor below the statement whose first terminal is this node
  int best = terminal;
  int cur = tree.at(terminal).parent;
  while (cur >= 0 && cur != stmt) {
    if (first_terminal(tree, cur) != terminal) break;
    best = cur;
    cur = tree.at(cur).parent;
  }
  return best;
}

std::pair<std::string, int> anchor_for(const Tree& tree, int stmt, int expr) {
  int terminal = first_terminal(tree, expr);
  if (terminal < 0) return {"", 0};
  const std::string& lexeme = tree.at(terminal).label;
  int ordinal = 0;
  for (int n : tree.preorder(stmt)) {
    if (tree.at(n).label == lexeme) ++ordinal;
    if (n == terminal) break;
  }
  return {lexeme, ordinal};
}

namespace {

void collect_annotations(const Tree& t, std::vector<int>& wildcards, std::vector<int>& uses,
                         std::vector<int>& choices) {
  for (int n : t.preorder()) {
    switch (t.at(n).kind) {
      case NodeKind::WildcardStmt:
      case NodeKind::WildcardExpr:
        wildcards.push_back(n);
        break;
      case NodeKind::UseStmt:
      case NodeKind::UseExpr:
        uses.push_back(n);
        break;
      case NodeKind::Choice:
        choices.push_back(n);
        break;
      default:
        break;
    }
  }
}

}  // namespace

void validate_pattern(const Pattern& p) {
  std::vector<int> wildcards, uses, choices;
  collect_annotations(p.original, wildcards, uses, choices);
  if (!uses.empty() || !choices.empty())
    throw PatternSyntaxError("use/choice annotations are not allowed in the original part", 0);

  std::set<std::string> names;
  for (int w : wildcards) {
    const std::string& name = p.original.at(w).label;
    if (name.empty()) throw PatternSyntaxError("wildcard without a name", 0);
    if (!names.insert(name).second)
      throw PatternSyntaxError("duplicate wildcard name '" + name + "'", 0);
    if (p.original.at(w).kind == NodeKind::WildcardExpr && resolve_anchor(p.original, w) < 0)
      throw PatternSyntaxError("expr wildcard '" + name + "' anchor does not resolve", 0);
  }

  // boundary rule: the original part begins and ends with a concrete statement
  const auto& stmts = p.original.at(p.original.root()).children;
  if (stmts.empty()) throw PatternSyntaxError("empty original part", 0);
  if (p.original.at(stmts.front()).kind == NodeKind::WildcardStmt)
    throw PatternSyntaxError("original part starts with a stmt wildcard", 0);
  if (p.original.at(stmts.back()).kind == NodeKind::WildcardStmt)
    throw PatternSyntaxError("original part ends with a stmt wildcard", 0);

  std::vector<int> m_wildcards, m_uses, m_choices;
  collect_annotations(p.modified, m_wildcards, m_uses, m_choices);
  if (!m_wildcards.empty())
    throw PatternSyntaxError("wildcard annotations are not allowed in the modified part", 0);
  for (int u : m_uses) {
    const std::string& name = p.modified.at(u).label;
    if (name.empty()) throw PatternSyntaxError("use without a name", 0);
    if (!names.count(name)) throw PatternSyntaxError("unbound use '" + name + "'", 0);
    if (p.modified.at(u).kind == NodeKind::UseExpr && resolve_anchor(p.modified, u) < 0)
      throw PatternSyntaxError("expr use '" + name + "' anchor does not resolve", 0);
  }
}

int max_choice_cases(const Pattern& p) {
  int max = 0;
  for (int n : p.modified.preorder()) {
    if (p.modified.at(n).kind == NodeKind::Choice)
      max = std::max(max, static_cast<int>(p.modified.at(n).children.size()));
  }
  return max;
}

namespace {

// copy `src` rooted at id into `out` under parent, replacing annotations with
// Hole nodes; expr annotations hollow out their anchored expression instead
// of occupying a statement slot.
struct HoleCopier {
  const Tree& src;
  Tree& out;
  std::map<std::string, Tree>* choice_cases;
  std::map<int, std::string> expr_holes;  // anchored expr node -> hole label
  int choice_counter = 0;

  void prescan() {
    for (int n : src.preorder()) {
      NodeKind k = src.at(n).kind;
      if (k == NodeKind::WildcardExpr || k == NodeKind::UseExpr) {
        int anchored = resolve_anchor(src, n);
        if (anchored >= 0) expr_holes[anchored] = "W:" + src.at(n).label;
      }
    }
  }

  int copy(int id, int parent) {
    const Node& n = src.at(id);
    auto hole_it = expr_holes.find(id);
    if (hole_it != expr_holes.end()) {
      return out.add(NodeKind::Hole, hole_it->second, parent);
    }
    switch (n.kind) {
      case NodeKind::WildcardStmt:
      case NodeKind::UseStmt:
        return out.add(NodeKind::Hole, "W:" + n.label, parent);
      case NodeKind::WildcardExpr:
      case NodeKind::UseExpr:
        return -1;  // marker line disappears; the anchored expr carries the hole
      case NodeKind::Choice: {
        std::string key = "C:" + std::to_string(choice_counter++);
        if (choice_cases) (*choice_cases)[key] = src.copy_subtree(id);
        return out.add(NodeKind::Hole, key, parent);
      }
      default:
        break;
    }
    int nid = out.add(n.kind, n.label, parent);
    out.at(nid).span = n.span;
    for (int c : n.children) copy(c, nid);
    return nid;
  }
};

}  // namespace

PatternAsChange pattern_as_change(const Pattern& p) {
  PatternAsChange out;
  out.id = "<pattern>";
  {
    HoleCopier copier{p.original, out.original.tree, nullptr, {}, 0};
    copier.prescan();
    copier.copy(p.original.root(), -1);
    out.original.source = pretty_print(out.original.tree);
  }
  {
    HoleCopier copier{p.modified, out.modified.tree, &out.choice_cases, {}, 0};
    copier.prescan();
    copier.copy(p.modified.root(), -1);
    out.modified.source = pretty_print(out.modified.tree);
  }
  return out;
}

}  // namespace ares
