// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/search.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>

namespace ares {

namespace {

// one entry of the serialized pattern node list
struct PEntry {
  int node = -1;        // pattern tree node (annotation marker for wildcards)
  bool wildcard = false;
  bool expr = false;    // expr wildcard (anchored); else statement wildcard
  int anchor_parent = -1;  // pattern parent of the anchored expression
  int anchor_slot = -1;    // child index of the anchored expression
};

struct PatternList {
  std::vector<PEntry> entries;
  const Tree* tree = nullptr;
};

PatternList serialize_pattern(const Pattern& p) {
  PatternList out;
  out.tree = &p.original;
  const Tree& t = p.original;

  // anchored expression subtrees collapse into their wildcard's entry
  std::map<int, int> anchored;  // expr root -> marker node
  for (int n : t.preorder()) {
    if (t.at(n).kind == NodeKind::WildcardExpr) {
      int e = resolve_anchor(t, n);
      if (e >= 0) anchored[e] = n;
    }
  }

  std::function<void(int)> walk = [&](int id) {
    const Node& n = t.at(id);
    if (n.kind == NodeKind::WildcardExpr) return;  // markers sit at their anchor
    auto it = anchored.find(id);
    if (it != anchored.end()) {
      PEntry e;
      e.node = it->second;
      e.wildcard = true;
      e.expr = true;
      e.anchor_parent = t.at(id).parent;
      const auto& ch = t.at(e.anchor_parent).children;
      e.anchor_slot = static_cast<int>(std::find(ch.begin(), ch.end(), id) - ch.begin());
      out.entries.push_back(e);
      return;  // skip the placeholder subtree
    }
    if (n.kind == NodeKind::WildcardStmt) {
      PEntry e;
      e.node = id;
      e.wildcard = true;
      out.entries.push_back(e);
      return;
    }
    PEntry e;
    e.node = id;
    out.entries.push_back(e);
    for (int c : n.children) walk(c);
  };
  for (int stmt : t.at(t.root()).children) walk(stmt);
  return out;
}

int first_code_node(const Pattern& p) {
  PatternList pl = serialize_pattern(p);
  for (const PEntry& e : pl.entries)
    if (!e.wildcard) return e.node;
  return -1;
}

bool is_match(const Tree& code, int ncl, const Tree& pat, int np, const Pattern& p) {
  const Node& c = code.at(ncl);
  const Node& q = pat.at(np);
  if (c.kind != q.kind) return false;
  switch (q.kind) {
    case NodeKind::Identifier:
    case NodeKind::FieldAccess:
      return p.has_match_identifier(q.label) || c.label == q.label;
    case NodeKind::BoolLit:
      return c.label == q.label;  // booleans make a large difference
    case NodeKind::IntLit:
    case NodeKind::StringLit:
      return true;  // other constant values are not compared
    case NodeKind::Binary:
    case NodeKind::Unary:
    case NodeKind::TypeName:
      return c.label == q.label;
    default:
      return true;
  }
}

struct SearchState {
  int pos_cl = 0;
  int pos_p = 0;
  std::vector<std::pair<int, int>> matches;
  std::set<int> visited;  // wildcard marker nodes
};

}  // namespace

std::vector<int> find_start_nodes(const MethodBody& body, const Pattern& p) {
  int first = first_code_node(p);
  std::vector<int> out;
  if (first < 0) return out;
  NodeKind kind = p.original.at(first).kind;
  for (int n : body.tree.preorder())
    if (body.tree.at(n).kind == kind) out.push_back(n);
  return out;
}

std::optional<MatchResult> search(int start_node, const MethodBody& body, const Pattern& p) {
  const Tree& code = body.tree;
  PatternList pl = serialize_pattern(p);
  if (pl.entries.empty()) return std::nullopt;

  std::vector<int> code_list = code.preorder();
  // suffix starting at start_node
  auto start_it = std::find(code_list.begin(), code_list.end(), start_node);
  if (start_it == code_list.end()) return std::nullopt;
  code_list.erase(code_list.begin(), start_it);

  const int ncl_len = static_cast<int>(code_list.size());
  const int np_len = static_cast<int>(pl.entries.size());

  SearchState st;
  std::vector<SearchState> resets;

  auto lookup_code = [&](const std::vector<std::pair<int, int>>& matches, int pattern_node) {
    for (auto it = matches.rbegin(); it != matches.rend(); ++it)
      if (it->second == pattern_node) return it->first;
    return -1;
  };

  // block containing the match start, used as scope for wildcards whose
  // pattern parent is the pattern root
  int start_stmt = code.statement_of(start_node);
  int start_block = start_stmt >= 0 ? code.at(start_stmt).parent : code.enclosing_block(start_node);

  auto scope_block = [&](const PEntry& w, const SearchState& s) -> int {
    int pb = p.original.at(w.node).parent;
    if (pb == p.original.root()) return start_block;
    return lookup_code(s.matches, pb);
  };

  auto allowed_node_stmt = [&](const PEntry& w, int ncl, const SearchState& s) {
    int b = scope_block(w, s);
    if (b < 0) return false;
    return ncl == b ? false : (code.is_ancestor(b, ncl));
  };
  auto allowed_reset_stmt = [&](const PEntry& w, int ncl, const SearchState& s) {
    int b = scope_block(w, s);
    if (b < 0) return false;
    // complete statements only: the last node of a direct child of the block
    int stmt = code.statement_of(ncl);
    while (stmt >= 0 && code.at(stmt).parent != b) stmt = code.statement_of(code.at(stmt).parent);
    if (stmt < 0) return false;
    return code.last_preorder(stmt) == ncl;
  };
  auto scope_roots_expr = [&](const PEntry& w, const SearchState& s, std::vector<int>& roots) {
    int cp = lookup_code(s.matches, w.anchor_parent);
    if (cp < 0) return false;
    const auto& ch = code.at(cp).children;
    for (std::size_t i = static_cast<std::size_t>(w.anchor_slot); i < ch.size(); ++i)
      roots.push_back(ch[i]);
    return true;
  };
  auto allowed_node_expr = [&](const PEntry& w, int ncl, const SearchState& s) {
    std::vector<int> roots;
    if (!scope_roots_expr(w, s, roots)) return false;
    for (int r : roots)
      if (r == ncl || code.is_ancestor(r, ncl)) return true;
    return false;
  };
  auto allowed_reset_expr = [&](const PEntry& w, int ncl, const SearchState& s) {
    std::vector<int> roots;
    if (!scope_roots_expr(w, s, roots)) return false;
    for (int r : roots)
      if (code.last_preorder(r) == ncl) return true;
    return false;
  };

  while (true) {
    if (st.pos_p >= np_len) break;  // full pattern covered
    bool step_failed = false;
    if (st.pos_cl >= ncl_len) {
      step_failed = true;  // code exhausted with pattern pending
    } else {
      int ncl = code_list[static_cast<std::size_t>(st.pos_cl)];
      const PEntry& np = pl.entries[static_cast<std::size_t>(st.pos_p)];
      if (!np.wildcard) {
        if (is_match(code, ncl, p.original, np.node, p)) {
          st.matches.emplace_back(ncl, np.node);
          ++st.pos_cl;
          ++st.pos_p;
          continue;
        }
        step_failed = true;
      } else {
        if (!st.visited.count(np.node)) {
          SearchState empty = st;
          ++empty.pos_p;  // the wildcard matches nothing at this spot
          resets.push_back(std::move(empty));
          st.visited.insert(np.node);
        }
        bool ok = np.expr ? allowed_node_expr(np, ncl, st) : allowed_node_stmt(np, ncl, st);
        if (ok) {
          st.matches.emplace_back(ncl, np.node);
          bool reset_ok =
              np.expr ? allowed_reset_expr(np, ncl, st) : allowed_reset_stmt(np, ncl, st);
          if (reset_ok) {
            SearchState cont = st;
            ++cont.pos_cl;
            ++cont.pos_p;
            resets.push_back(std::move(cont));
          }
          ++st.pos_cl;
          continue;
        }
        step_failed = true;
      }
    }
    if (step_failed) {
      if (resets.empty()) return std::nullopt;
      st = std::move(resets.back());
      resets.pop_back();
    }
  }

  // assemble the result
  MatchResult res;
  res.start_node = start_node;
  res.matches = st.matches;
  for (const auto& [ncl, np] : st.matches) {
    NodeKind k = p.original.at(np).kind;
    if (k == NodeKind::WildcardStmt || k == NodeKind::WildcardExpr) {
      // captured roots: consumed nodes whose parent is outside the capture
      const std::string& name = p.original.at(np).label;
      auto& roots = res.captures[name];
      int parent = code.at(ncl).parent;
      bool parent_captured = false;
      for (const auto& [other, np2] : st.matches) {
        if (np2 == np && other == parent) {
          parent_captured = true;
          break;
        }
      }
      if (!parent_captured) roots.push_back(ncl);
    } else {
      res.pattern_to_code[np] = ncl;
      const Node& q = p.original.at(np);
      if ((q.kind == NodeKind::Identifier || q.kind == NodeKind::FieldAccess) &&
          p.has_match_identifier(q.label) && !res.bindings.count(q.label)) {
        res.bindings[q.label] = code.at(ncl).label;
      }
    }
  }
  // make sure every named wildcard has a (possibly empty) capture list
  for (int n : p.original.preorder()) {
    NodeKind k = p.original.at(n).kind;
    if (k == NodeKind::WildcardStmt || k == NodeKind::WildcardExpr)
      res.captures.try_emplace(p.original.at(n).label);
  }

  // matched region: top-level statements from the start statement to the
  // statement containing the last consumed code node
  int start_stmt2 = code.statement_of(start_node);
  res.region_begin = start_stmt2;
  if (start_stmt2 >= 0 && !st.matches.empty()) {
    int last_code = st.matches.back().first;  // consumption follows preorder
    int block = code.at(start_stmt2).parent;
    int end_stmt = start_stmt2;
    bool in_region = false;
    for (int c : code.at(block).children) {
      if (c == start_stmt2) in_region = true;
      if (!in_region) continue;
      if (c == last_code || code.is_ancestor(c, last_code)) {
        end_stmt = c;
        break;
      }
    }
    res.region_end = end_stmt;
  }
  return res;
}

std::vector<MatchResult> search_codebase(const Pattern& p,
                                         const std::vector<std::pair<std::string, MethodBody>>& files,
                                         const SearchOptions& opts) {
  auto search_file = [&](const std::pair<std::string, MethodBody>& file) {
    std::vector<MatchResult> found;
    for (int start : find_start_nodes(file.second, p)) {
      if (!file.second.tree.is_statement(start)) continue;  // regions are statement-anchored
      auto m = search(start, file.second, p);
      if (m) {
        m->file = file.first;
        found.push_back(std::move(*m));
      }
    }
    // overlapping matches keep the earliest start node
    std::vector<MatchResult> kept;
    for (MatchResult& m : found) {
      bool overlaps = false;
      for (const MatchResult& k : kept) {
        if (m.region_begin <= k.region_end && k.region_begin <= m.region_end) {
          overlaps = true;
          break;
        }
      }
      if (!overlaps) kept.push_back(std::move(m));
    }
    return kept;
  };

  std::vector<MatchResult> all;
  if (opts.parallelism > 1 && files.size() > 1) {
    std::vector<std::future<std::vector<MatchResult>>> futures;
    futures.reserve(files.size());
    for (const auto& f : files)
      futures.push_back(std::async(std::launch::async, search_file, std::cref(f)));
    for (auto& fu : futures) {
      auto part = fu.get();
      all.insert(all.end(), part.begin(), part.end());
    }
  } else {
    for (const auto& f : files) {
      auto part = search_file(f);
      all.insert(all.end(), part.begin(), part.end());
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const MatchResult& a, const MatchResult& b) {
    if (a.file != b.file) return a.file < b.file;
    return a.start_node < b.start_node;
  });
  return all;
}

}  // namespace ares
