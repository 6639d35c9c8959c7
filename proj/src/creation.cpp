// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/creation.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "ares/recommend.hpp"
#include "ares/search.hpp"

namespace ares {

namespace {

// ---------------------------------------------------------------- isolation

// lowest node dominating every edit-op subject on one side of a change
int change_root_side(const Tree& tree, const std::vector<int>& touched) {
  if (touched.empty()) return tree.root();
  // walk parents of the first node; pick the deepest ancestor containing all
  std::vector<int> chain;
  for (int cur = touched[0]; cur >= 0; cur = tree.at(cur).parent) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());  // root..node
  int best = tree.root();
  for (int cand : chain) {
    bool covers_all = true;
    for (int n : touched) {
      if (n != cand && !tree.is_ancestor(cand, n)) {
        covers_all = false;
        break;
      }
    }
    if (covers_all) best = cand;
    else break;
  }
  return best;
}

struct ChangeRoots {
  int root_o = -1, root_m = -1;
};

ChangeRoots within_change_roots(const MethodBody& o, const MethodBody& m) {
  NodeMapping map = compute_mapping(o.tree, m.tree);
  std::vector<EditOp> ops = ops_from_mapping(o.tree, m.tree, map);
  std::vector<int> touched_o, touched_m;
  // an op affects both trees: the subject on its own side, and on the other
  // side the (mapped) parent of the position it vacates or fills
  auto other_side_o = [&](int dst_node) {
    int pd = m.tree.at(dst_node).parent;
    if (pd >= 0 && map.matched_dst(pd)) touched_o.push_back(map.src_of(pd));
  };
  auto other_side_m = [&](int src_node) {
    int ps = o.tree.at(src_node).parent;
    if (ps >= 0 && map.matched_src(ps)) touched_m.push_back(map.dst_of(ps));
  };
  for (const EditOp& op : ops) {
    switch (op.kind) {
      case OpKind::Delete: {
        touched_o.push_back(op.node);
        int ps = o.tree.at(op.node).parent;
        if (ps >= 0) touched_o.push_back(ps);
        other_side_m(op.node);
        break;
      }
      case OpKind::Update:
        touched_o.push_back(op.node);
        if (map.matched_src(op.node)) touched_m.push_back(map.dst_of(op.node));
        break;
      case OpKind::Move: {
        touched_o.push_back(op.node);
        int ps = o.tree.at(op.node).parent;
        if (ps >= 0) touched_o.push_back(ps);
        if (map.matched_src(op.node)) {
          int d = map.dst_of(op.node);
          touched_m.push_back(d);
          int pd = m.tree.at(d).parent;
          if (pd >= 0) touched_m.push_back(pd);
        }
        break;
      }
      case OpKind::Insert: {
        touched_m.push_back(op.node);
        int pd = m.tree.at(op.node).parent;
        if (pd >= 0) touched_m.push_back(pd);
        other_side_o(op.node);
        break;
      }
    }
  }
  ChangeRoots roots;
  roots.root_o = change_root_side(o.tree, touched_o);
  roots.root_m = change_root_side(m.tree, touched_m);
  // keep the pair consistent: prefer mapped counterpart when available
  if (!touched_o.empty() && map.matched_src(roots.root_o)) {
    int mapped = map.dst_of(roots.root_o);
    if (mapped >= 0 && (roots.root_m == m.tree.root() || m.tree.is_ancestor(mapped, roots.root_m) ||
                        mapped == roots.root_m))
      roots.root_m = mapped;
  }
  // change roots are blocks or statements; normalize expression-level roots up
  auto normalize = [](const Tree& t, int id) {
    int cur = id;
    while (cur >= 0 && t.at(cur).kind != NodeKind::Block && !t.is_statement(cur))
      cur = t.at(cur).parent;
    return cur < 0 ? t.root() : cur;
  };
  roots.root_o = normalize(o.tree, roots.root_o);
  roots.root_m = normalize(m.tree, roots.root_m);
  return roots;
}

// statement-list containers at the given depth below a change root
std::vector<int> candidate_containers(const Tree& t, int root, int depth_levels) {
  std::vector<int> out;
  std::function<void(int, int)> walk = [&](int node, int depth) {
    if (t.at(node).kind == NodeKind::Block && depth > 0) out.push_back(node);
    if (depth >= depth_levels) return;
    for (int c : t.at(node).children) walk(c, depth + 1);
  };
  if (t.at(root).kind == NodeKind::Block) out.push_back(root);
  walk(root, 0);
  // dedupe, keep order
  std::vector<int> uniq;
  for (int b : out)
    if (std::find(uniq.begin(), uniq.end(), b) == uniq.end()) uniq.push_back(b);
  return uniq;
}

// mapped statement pairs between the children of two blocks
int mapped_statement_pairs(const Tree& to, int bo, const Tree& tt, int bt, const NodeMapping& m) {
  int count = 0;
  for (int c : to.at(bo).children) {
    if (!m.matched_src(c)) continue;
    int d = m.dst_of(c);
    if (tt.at(d).parent == bt) ++count;
  }
  return count;
}

}  // namespace

IsolationResult isolate_change(const ChangeExample& c1, const ChangeExample& c2) {
  IsolationResult res;
  ChangeRoots r1 = within_change_roots(c1.original, c1.modified);
  ChangeRoots r2 = within_change_roots(c2.original, c2.modified);
  res.root_o1 = r1.root_o;
  res.root_m1 = r1.root_m;
  res.root_o2 = r2.root_o;
  res.root_m2 = r2.root_m;

  const Tree& o1 = c1.original.tree;
  const Tree& o2 = c2.original.tree;
  if (o1.at(res.root_o1).kind == o2.at(res.root_o2).kind) {
    res.succeeded = true;
    return res;
  }

  // phase 2: heuristics over D(o1,o2)-paired statements
  res.used_heuristic = true;
  NodeMapping cross = compute_mapping(o1, o2);
  NodeMapping cross_m = compute_mapping(c1.modified.tree, c2.modified.tree);
  NodeMapping dom1 = compute_mapping(o1, c1.modified.tree);
  NodeMapping dom2 = compute_mapping(o2, c2.modified.tree);

  auto try_levels = [&](int levels) -> bool {
    auto blocks1 = candidate_containers(o1, res.root_o1, levels);
    auto blocks2 = candidate_containers(o2, res.root_o2, levels);
    int best_pairs = 0, best_b1 = -1, best_b2 = -1;
    for (int b1 : blocks1) {
      for (int b2 : blocks2) {
        int pairs = mapped_statement_pairs(o1, b1, o2, b2, cross);
        if (pairs > best_pairs) {
          best_pairs = pairs;
          best_b1 = b1;
          best_b2 = b2;
        }
      }
    }
    if (best_pairs == 0) return false;
    // the m-side roots must have matching nodes through the within-change diffs
    int m1_root = dom1.matched_src(best_b1) ? dom1.dst_of(best_b1) : -1;
    int m2_root = dom2.matched_src(best_b2) ? dom2.dst_of(best_b2) : -1;
    if (m1_root < 0 || m2_root < 0) return false;
    res.root_o1 = best_b1;
    res.root_o2 = best_b2;
    res.root_m1 = m1_root;
    res.root_m2 = m2_root;
    res.succeeded = true;
    return true;
  };
  (void)cross_m;
  // (a) children, (b) is symmetric here because we scan both sides' container
  // lists, (c) grandchildren
  if (try_levels(1)) return res;
  if (try_levels(2)) return res;
  res.succeeded = false;
  return res;
}

// ------------------------------------------------------------- adjustment

namespace {

bool is_assignment_like(const Tree& t, int id) {
  NodeKind k = t.at(id).kind;
  return k == NodeKind::Assign || k == NodeKind::Decl;
}

// left/right sub-expression slots for rule 48
bool sides_of(const Tree& t, int id, int& left, int& right) {
  const Node& n = t.at(id);
  if (n.kind == NodeKind::Assign) {
    left = n.children[0];
    right = n.children[1];
    return true;
  }
  if (n.kind == NodeKind::Decl && n.children.size() == 3) {
    left = n.children[1];
    right = n.children[2];
    return true;
  }
  return false;
}

bool subtree_all(const Tree& t, int root, const std::function<bool(int)>& pred) {
  for (int n : t.preorder(root))
    if (!pred(n)) return false;
  return true;
}

void unmap_subtree_pair(const Tree& src, int s, NodeMapping& m) {
  for (int n : src.preorder(s)) m.unset_src(n);
}

int prev_mapped_sibling(const Tree& t, int stmt, const NodeMapping& m, bool src_side) {
  int parent = t.at(stmt).parent;
  if (parent < 0) return -1;
  int prev = -1;
  for (int c : t.at(parent).children) {
    if (c == stmt) break;
    bool mapped = src_side ? m.matched_src(c) : m.matched_dst(c);
    if (mapped) prev = c;
  }
  return prev;
}

std::vector<EditOp> subsumed_ops(const Tree& src, const Tree& dst, const NodeMapping& m,
                                 const std::set<int>& suppressed, bool subsume) {
  std::vector<EditOp> out;
  auto deleted = [&](int s) { return !m.matched_src(s); };
  auto inserted = [&](int d) { return !m.matched_dst(d); };

  // delete roots (maximal unmatched source regions), source preorder
  for (int s : src.preorder()) {
    if (!deleted(s)) continue;
    int parent = src.at(s).parent;
    if (parent >= 0 && deleted(parent)) continue;
    EditOp op;
    op.kind = OpKind::Delete;
    op.node = s;
    op.whole_stmt = src.is_statement(s);
    if (op.whole_stmt && suppressed.count(s)) continue;
    out.push_back(op);
  }
  // insert roots, target preorder
  for (int d : dst.preorder()) {
    if (!inserted(d)) continue;
    int parent = dst.at(d).parent;
    if (parent >= 0 && inserted(parent)) continue;
    EditOp op;
    op.kind = OpKind::Insert;
    op.node = d;
    op.whole_stmt = dst.is_statement(d);
    op.ins_kind = dst.at(d).kind;
    op.ins_label = dst.at(d).label;
    out.push_back(op);
  }
  // moves and updates from the node-granular view
  std::vector<EditOp> base = ops_from_mapping(src, dst, m);
  for (const EditOp& op : base) {
    if (op.kind == OpKind::Move || op.kind == OpKind::Update) out.push_back(op);
  }
  (void)subsume;
  return out;
}

}  // namespace

AdjScript adjust_edit_script(const Tree& src, const Tree& dst, const NodeMapping& m0,
                             const RuleSet& rules) {
  AdjScript adj;
  adj.map = m0;

  auto src_hashes = src.structural_hashes();
  auto dst_hashes = dst.structural_hashes();

  for (int pass = 0; pass < 10; ++pass) {
    bool changed = false;

    // rules 13-19: identical statements re-paired positionally
    if (rules.repair_identical) {
      std::map<std::uint64_t, std::pair<std::vector<int>, std::vector<int>>> groups;
      for (int s : src.preorder())
        if (src.is_statement(s)) groups[src_hashes[static_cast<std::size_t>(s)]].first.push_back(s);
      for (int d : dst.preorder())
        if (dst.is_statement(d)) groups[dst_hashes[static_cast<std::size_t>(d)]].second.push_back(d);
      for (auto& [hash, group] : groups) {
        auto& [S, D] = group;
        if (S.empty() || D.empty()) continue;
        std::size_t k = std::min(S.size(), D.size());
        bool deviates = false;
        for (std::size_t i = 0; i < k; ++i) {
          if (adj.map.dst_of(S[i]) != D[i]) {
            deviates = true;
            break;
          }
        }
        if (!deviates) continue;
        // drop current pairings touching the group, then re-pair in order
        for (int s : S) unmap_subtree_pair(src, s, adj.map);
        for (int d : D) {
          int s_cur = adj.map.src_of(d);
          if (s_cur >= 0) unmap_subtree_pair(src, s_cur, adj.map);
        }
        for (std::size_t i = 0; i < k; ++i) {
          std::function<void(int, int)> lock = [&](int s, int d) {
            adj.map.set(s, d);
            const auto& cs = src.at(s).children;
            const auto& cd = dst.at(d).children;
            for (std::size_t j = 0; j < cs.size(); ++j) lock(cs[j], cd[j]);
          };
          lock(S[i], D[i]);
        }
        changed = true;
      }
    }

    // rule 31: moves across nested blocks become delete-at-source + insert
    if (rules.cross_block) {
      std::vector<int> demote;
      for (int s : src.preorder()) {
        if (!adj.map.matched_src(s)) continue;
        int d = adj.map.dst_of(s);
        int ps = src.at(s).parent;
        int pd = dst.at(d).parent;
        if (ps < 0 || pd < 0) continue;
        bool is_move_root = !adj.map.matched_src(ps) || adj.map.dst_of(ps) != pd;
        if (!is_move_root) continue;
        int bs = src.at(s).kind == NodeKind::Block ? src.enclosing_block(s) : src.enclosing_block(s);
        int bd = dst.enclosing_block(d);
        if (bs < 0 || bd < 0) continue;
        bool same_block = adj.map.matched_src(bs) && adj.map.dst_of(bs) == bd;
        if (!same_block) demote.push_back(s);
      }
      for (int s : demote) {
        unmap_subtree_pair(src, s, adj.map);
        changed = true;
      }
    }

    // rule 48: assignment-like statements whose both sides are delete+insert
    if (rules.stmt_collapse) {
      // mapped pairs
      for (int s : src.preorder()) {
        if (!src.is_statement(s) || !is_assignment_like(src, s)) continue;
        if (!adj.map.matched_src(s)) continue;
        int d = adj.map.dst_of(s);
        if (!is_assignment_like(dst, d)) continue;
        int l1, r1, l2, r2;
        if (!sides_of(src, s, l1, r1) || !sides_of(dst, d, l2, r2)) continue;
        bool left_replaced =
            subtree_all(src, l1, [&](int n) { return !adj.map.matched_src(n); }) &&
            subtree_all(dst, l2, [&](int n) { return !adj.map.matched_dst(n); });
        bool right_replaced =
            subtree_all(src, r1, [&](int n) { return !adj.map.matched_src(n); }) &&
            subtree_all(dst, r2, [&](int n) { return !adj.map.matched_dst(n); });
        if (left_replaced && right_replaced) {
          unmap_subtree_pair(src, s, adj.map);
          adj.suppressed_deletes.insert(s);
          changed = true;
        }
      }
      // aligned unmapped pairs
      for (int s : src.preorder()) {
        if (!src.is_statement(s) || !is_assignment_like(src, s)) continue;
        if (adj.map.matched_src(s) || adj.suppressed_deletes.count(s)) continue;
        if (!subtree_all(src, s, [&](int n) { return !adj.map.matched_src(n); })) continue;
        int bs = src.at(s).parent;
        if (bs < 0 || !adj.map.matched_src(bs)) continue;
        int bd = adj.map.dst_of(bs);
        int prev = prev_mapped_sibling(src, s, adj.map, true);
        int prev_dst = prev >= 0 ? adj.map.dst_of(prev) : -1;
        for (int d : dst.at(bd).children) {
          if (!is_assignment_like(dst, d)) continue;
          if (!subtree_all(dst, d, [&](int n) { return !adj.map.matched_dst(n); })) continue;
          int dprev = prev_mapped_sibling(dst, d, adj.map, false);
          int dprev_src = dprev >= 0 ? adj.map.src_of(dprev) : -1;
          bool aligned = (prev < 0 && dprev < 0) || (prev >= 0 && dprev_src == prev) ||
                         (dprev >= 0 && prev_dst == dprev);
          if (aligned) {
            adj.suppressed_deletes.insert(s);
            changed = true;
            break;
          }
        }
      }
    }

    if (!changed) break;
  }

  adj.ops = subsumed_ops(src, dst, adj.map, adj.suppressed_deletes, rules.subsumption);
  return adj;
}

std::vector<std::string> insert_match_identifiers(const Tree& o1, const Tree& o2, AdjScript& doo,
                                                  const Tree& m1, const Tree& m2, AdjScript& dmm,
                                                  const RuleSet& rules) {
  auto is_identifier_like = [](NodeKind k) {
    return k == NodeKind::Identifier || k == NodeKind::FieldAccess;
  };

  // collect rename pairs from D(o1,o2), dedupe, order by first dst occurrence
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> identifiers;
  {
    std::vector<std::pair<int, std::pair<std::string, std::string>>> found;
    for (const EditOp& op : doo.ops) {
      if (op.kind != OpKind::Update) continue;
      int s = op.node;
      if (!is_identifier_like(o1.at(s).kind)) continue;
      int d = doo.map.dst_of(s);
      found.push_back({d, {o1.at(s).label, o2.at(d).label}});
    }
    std::sort(found.begin(), found.end());
    for (auto& [d, pr] : found) {
      (void)d;
      if (std::find(pairs.begin(), pairs.end(), pr) == pairs.end()) {
        pairs.push_back(pr);
        if (std::find(identifiers.begin(), identifiers.end(), pr.second) == identifiers.end())
          identifiers.push_back(pr.second);
      }
    }
  }

  auto scrub = [&](const Tree& src, const Tree& dst, AdjScript& adj) {
    bool mutated = false;
    for (const EditOp& op : adj.ops) {
      if (op.kind != OpKind::Update) continue;
      int s = op.node;
      int d = adj.map.dst_of(s);
      NodeKind k = src.at(s).kind;
      // non-boolean constants are never compared during the search and the
      // location's value survives into the recommendation, so a differing
      // literal needs no annotation; the pattern keeps the second example's
      // lexeme
      if (k == NodeKind::IntLit || k == NodeKind::StringLit) continue;
      std::pair<std::string, std::string> pr{src.at(s).label, dst.at(d).label};
      bool recorded = is_identifier_like(k) &&
                      std::find(pairs.begin(), pairs.end(), pr) != pairs.end();
      if (recorded) continue;  // handled by the match annotation
      adj.map.unset_src(s);    // demote to delete+insert
      mutated = true;
    }
    if (mutated) {
      AdjScript redone = adjust_edit_script(src, dst, adj.map, rules);
      redone.suppressed_deletes.insert(adj.suppressed_deletes.begin(),
                                       adj.suppressed_deletes.end());
      redone.ops = subsumed_ops(src, dst, redone.map, redone.suppressed_deletes, true);
      adj = std::move(redone);
    }
    // drop the recorded updates from the op view
    adj.ops.erase(std::remove_if(adj.ops.begin(), adj.ops.end(),
                                 [&](const EditOp& op) { return op.kind == OpKind::Update; }),
                  adj.ops.end());
  };
  scrub(o1, o2, doo);
  scrub(m1, m2, dmm);
  return identifiers;
}

// ---------------------------------------------------- annotation insertion

namespace {

struct AnnInfo {
  int node = -1;  // annotation node in the annotated tree
  std::vector<int> origin_inserts;  // dst-tree roots the annotation replaced/covers
  std::vector<int> origin_deletes;  // src-tree roots whose deletion landed here
};

struct AnnotatedPart {
  Tree tree;
  std::vector<AnnInfo> anns;
};

struct AnnotationPlan {
  // dst statement id -> origin inserts (statement replaced by stmt annotation)
  std::map<int, std::vector<int>> replace;
  // dst statement id -> origin deletes merged into its replacement
  std::map<int, std::vector<int>> replace_deletes;
  // spot annotations: (dst block, after dst child id or -1) -> origin deletes
  std::map<std::pair<int, int>, std::vector<int>> spots;
  // expr markers: dst statement id -> list of (anchor expr root, origins)
  std::map<int, std::vector<std::pair<int, std::vector<int>>>> expr_markers;
  std::vector<std::string> warnings;
};

AnnotationPlan plan_annotations(const Tree& src, const Tree& dst, const AdjScript& adj) {
  AnnotationPlan plan;

  auto spot_for_delete = [&](int s_root) -> std::optional<std::pair<int, int>> {
    int parent = src.at(s_root).parent;
    if (parent < 0) return std::nullopt;
    int prev = prev_mapped_sibling(src, s_root, adj.map, true);
    if (prev >= 0) {
      int prev_dst = adj.map.dst_of(prev);
      int blk = dst.at(prev_dst).parent;
      if (blk >= 0) return std::make_pair(blk, prev_dst);
    }
    if (adj.map.matched_src(parent)) return std::make_pair(adj.map.dst_of(parent), -1);
    return std::nullopt;
  };

  for (const EditOp& op : adj.ops) {
    switch (op.kind) {
      case OpKind::Insert: {
        if (op.whole_stmt) {
          plan.replace[op.node].push_back(op.node);
        } else {
          int stmt = dst.statement_of(op.node);
          if (stmt < 0) {
            plan.warnings.push_back("insert outside any statement ignored");
            break;
          }
          if (plan.replace.count(stmt)) break;  // already wildcarded whole
          plan.expr_markers[stmt].push_back({op.node, {op.node}});
        }
        break;
      }
      case OpKind::Delete: {
        if (op.whole_stmt) {
          auto spot = spot_for_delete(op.node);
          if (spot) {
            // a delete landing right before a replaced statement merges into it
            plan.spots[*spot].push_back(op.node);
          } else {
            plan.warnings.push_back("no corresponding spot for a deleted statement");
          }
        } else {
          // expression-level delete: no anchor remains; generalize the whole
          // statement pair, with the statements themselves as origins so the
          // name linking and choice cases stay statement-granular
          int s_stmt = src.statement_of(op.node);
          int d_stmt = s_stmt >= 0 && adj.map.matched_src(s_stmt) ? adj.map.dst_of(s_stmt) : -1;
          if (d_stmt >= 0 && dst.is_statement(d_stmt)) {
            auto& ins = plan.replace[d_stmt];
            if (std::find(ins.begin(), ins.end(), d_stmt) == ins.end()) ins.push_back(d_stmt);
            auto& dels = plan.replace_deletes[d_stmt];
            if (std::find(dels.begin(), dels.end(), s_stmt) == dels.end()) dels.push_back(s_stmt);
            plan.warnings.push_back("expression delete promoted to statement wildcard");
          } else {
            plan.warnings.push_back("expression delete without a mapped statement ignored");
          }
        }
        break;
      }
      case OpKind::Move: {
        // surviving moves expand to delete+insert for annotation purposes
        int s = op.node;
        int d = adj.map.dst_of(s);
        if (src.is_statement(s) && dst.is_statement(d)) {
          plan.replace[d].push_back(d);
          auto spot = spot_for_delete(s);
          if (spot) plan.spots[*spot].push_back(s);
        } else {
          int stmt = dst.statement_of(d);
          if (stmt >= 0 && !plan.replace.count(stmt))
            plan.expr_markers[stmt].push_back({d, {d}});
        }
        break;
      }
      case OpKind::Update:
        plan.warnings.push_back("update op survived adjustment");
        break;
    }
  }

  // a replaced statement absorbs spot annotations pointing directly at it:
  // merging happens later positionally, nothing to do here

  // merge expr markers on the same statement anchored inside the same parent
  // run of adjacent children
  for (auto& [stmt, markers] : plan.expr_markers) {
    std::sort(markers.begin(), markers.end());
    std::vector<std::pair<int, std::vector<int>>> merged;
    for (auto& mk : markers) {
      if (!merged.empty()) {
        int prev_root = merged.back().first;
        int a = prev_root, b = mk.first;
        if (dst.at(a).parent == dst.at(b).parent) {
          // adjacent children of the same parent merge into one marker
          const auto& ch = dst.at(dst.at(a).parent).children;
          auto ia = std::find(ch.begin(), ch.end(), a);
          auto ib = std::find(ch.begin(), ch.end(), b);
          if (ia != ch.end() && ib != ch.end() && ib - ia == 1) {
            merged.back().second.insert(merged.back().second.end(), mk.second.begin(),
                                        mk.second.end());
            continue;
          }
        }
      }
      merged.push_back(mk);
    }
    markers = std::move(merged);
  }
  return plan;
}

// merges adjacent statement annotations of `kind`; when `group_of` is given,
// two neighbors merge only if they belong to the same group
void merge_adjacent_anns(AnnotatedPart& part, NodeKind kind,
                         const std::function<int(const AnnInfo&)>* group_of) {
  for (int b : part.tree.preorder()) {
    if (part.tree.at(b).kind != NodeKind::Block) continue;
    auto& ch = part.tree.at(b).children;
    std::vector<int> merged;
    for (int c : ch) {
      if (!merged.empty() && part.tree.at(c).kind == kind &&
          part.tree.at(merged.back()).kind == kind) {
        AnnInfo* target = nullptr;
        AnnInfo* victim = nullptr;
        for (auto& a : part.anns) {
          if (a.node == merged.back()) target = &a;
          if (a.node == c) victim = &a;
        }
        bool same_group =
            !group_of || (target && victim && (*group_of)(*target) == (*group_of)(*victim));
        if (target && victim && same_group) {
          target->origin_inserts.insert(target->origin_inserts.end(),
                                        victim->origin_inserts.begin(),
                                        victim->origin_inserts.end());
          target->origin_deletes.insert(target->origin_deletes.end(),
                                        victim->origin_deletes.begin(),
                                        victim->origin_deletes.end());
          victim->node = -1;
          continue;
        }
      }
      merged.push_back(c);
    }
    ch = std::move(merged);
  }
  part.anns.erase(std::remove_if(part.anns.begin(), part.anns.end(),
                                 [](const AnnInfo& a) { return a.node < 0; }),
                  part.anns.end());
}

// builds the annotated tree from the dst tree plus a plan; statement
// annotations merge with their neighbor only when merge_adjacent allows it
// (uses may only merge when they serve the same wildcard, decided later)
AnnotatedPart build_annotated(const Tree& dst, const AnnotationPlan& plan, bool original_side,
                              bool merge_adjacent = true) {
  AnnotatedPart part;
  NodeKind stmt_kind = original_side ? NodeKind::WildcardStmt : NodeKind::UseStmt;
  NodeKind expr_kind = original_side ? NodeKind::WildcardExpr : NodeKind::UseExpr;

  std::function<int(int, int)> copy = [&](int id, int parent) -> int {
    const Node& n = dst.at(id);
    int nid = part.tree.add(n.kind, n.label, parent);
    part.tree.at(nid).span = n.span;
    part.tree.at(nid).anchor_lexeme = n.anchor_lexeme;
    part.tree.at(nid).anchor_ordinal = n.anchor_ordinal;
    if (n.kind == NodeKind::Block) {
      // statement lists get annotations woven in; one annotation per delete
      // origin so differently-linked material never fuses before linking
      auto emit_spot = [&](int after) {
        auto it = plan.spots.find({id, after});
        if (it == plan.spots.end()) return;
        for (int origin : it->second) {
          AnnInfo info;
          info.node = part.tree.add(stmt_kind, "", nid);
          info.origin_deletes = {origin};
          part.anns.push_back(info);
        }
      };
      emit_spot(-1);
      for (int c : n.children) {
        auto rep = plan.replace.find(c);
        if (rep != plan.replace.end()) {
          AnnInfo info;
          info.node = part.tree.add(stmt_kind, "", nid);
          info.origin_inserts = rep->second;
          auto extra = plan.replace_deletes.find(c);
          if (extra != plan.replace_deletes.end()) info.origin_deletes = extra->second;
          part.anns.push_back(info);
        } else {
          auto mks = plan.expr_markers.find(c);
          if (mks != plan.expr_markers.end()) {
            for (const auto& mk : mks->second) {
              AnnInfo info;
              info.node = part.tree.add(expr_kind, "", nid);
              auto anchor = anchor_for(dst, c, mk.first);
              part.tree.at(info.node).anchor_lexeme = anchor.first;
              part.tree.at(info.node).anchor_ordinal = anchor.second;
              info.origin_inserts = mk.second;
              part.anns.push_back(info);
            }
          }
          copy(c, nid);
        }
        emit_spot(c);
      }
    } else {
      for (int c : n.children) copy(c, nid);
    }
    return nid;
  };
  copy(dst.root(), -1);

  if (merge_adjacent) merge_adjacent_anns(part, stmt_kind, nullptr);
  return part;
}

bool covers(const Tree& t, const std::vector<int>& roots, int node) {
  for (int r : roots) {
    if (r == node || t.is_ancestor(r, node)) return true;
  }
  return false;
}

}  // namespace

// ------------------------------------------------------------ whole pipeline

namespace {

struct PipelineCtx {
  RuleSet rules;
  std::map<std::string, Tree> hole_choices;
  std::vector<std::string> previous_match_ids;
};

CreateResult run_pipeline(const ChangeExample& c1, const ChangeExample& c2,
                          const PipelineCtx& ctx) {
  CreateResult result;

  IsolationResult iso = isolate_change(c1, c2);
  if (!iso.succeeded) {
    result.abort_reason = "change isolation failed: no similar statements at children or "
                          "grandchildren depth";
    return result;
  }

  Tree o1 = c1.original.tree.copy_subtree(iso.root_o1);
  Tree o2 = c2.original.tree.copy_subtree(iso.root_o2);
  Tree m1 = c1.modified.tree.copy_subtree(iso.root_m1);
  Tree m2 = c2.modified.tree.copy_subtree(iso.root_m2);
  // isolated roots may be statements; patterns need Block roots
  auto ensure_block = [](Tree t) {
    if (!t.empty() && t.at(t.root()).kind == NodeKind::Block) return t;
    Tree wrapped;
    wrapped.add(NodeKind::Block, "", -1);
    wrapped.graft(t, t.root(), wrapped.root());
    return wrapped;
  };
  o1 = ensure_block(std::move(o1));
  o2 = ensure_block(std::move(o2));
  m1 = ensure_block(std::move(m1));
  m2 = ensure_block(std::move(m2));

  AdjScript doo = adjust_edit_script(o1, o2, compute_mapping(o1, o2), ctx.rules);
  AdjScript dmm = adjust_edit_script(m1, m2, compute_mapping(m1, m2), ctx.rules);
  std::vector<std::string> match_ids =
      insert_match_identifiers(o1, o2, doo, m1, m2, dmm, ctx.rules);

  NodeMapping dom1 = compute_mapping(o1, m1);
  NodeMapping dom2 = compute_mapping(o2, m2);

  AnnotationPlan plan_o = plan_annotations(o1, o2, doo);
  AnnotationPlan plan_m = plan_annotations(m1, m2, dmm);
  for (auto& w : plan_o.warnings) result.trace.warnings.push_back("original: " + w);
  for (auto& w : plan_m.warnings) result.trace.warnings.push_back("modified: " + w);

  AnnotatedPart orig = build_annotated(o2, plan_o, /*original_side=*/true);
  AnnotatedPart mod = build_annotated(m2, plan_m, /*original_side=*/false,
                                      /*merge_adjacent=*/false);

  // ---- link each use to the wildcard whose counterpart nodes it covers
  auto link_of_use = [&](const AnnInfo& u) -> int {
    for (std::size_t wi = 0; wi < orig.anns.size(); ++wi) {
      const AnnInfo& w = orig.anns[wi];
      if (w.node < 0) continue;
      for (int n2 : w.origin_inserts) {
        // origin_inserts live in o2, the source side of dom2 = D(o2,m2)
        int nm2 = dom2.matched_src(n2) ? dom2.dst_of(n2) : -1;
        if (nm2 >= 0 && covers(m2, u.origin_inserts, nm2)) return static_cast<int>(wi);
      }
      for (int n1 : w.origin_deletes) {
        int nm1 = dom1.matched_src(n1) ? dom1.dst_of(n1) : -1;
        if (nm1 >= 0 && covers(m1, u.origin_deletes, nm1)) return static_cast<int>(wi);
      }
    }
    return -1;
  };
  std::unordered_map<int, int> use_links;  // use ann node -> orig ann index
  for (const AnnInfo& u : mod.anns)
    if (u.node >= 0) use_links[u.node] = link_of_use(u);

  // uses merge only when they serve the same wildcard; merging a linked use
  // with divergent additions would silently drop choice material. Within one
  // annotation run the linked uses keep their order and the unlinked ones
  // gather at the end, so divergent additions form a single choice spot.
  for (int b : mod.tree.preorder()) {
    if (mod.tree.at(b).kind != NodeKind::Block) continue;
    auto& ch = mod.tree.at(b).children;
    std::size_t i = 0;
    while (i < ch.size()) {
      if (mod.tree.at(ch[i]).kind != NodeKind::UseStmt) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < ch.size() && mod.tree.at(ch[j]).kind == NodeKind::UseStmt) ++j;
      std::stable_partition(ch.begin() + static_cast<long>(i), ch.begin() + static_cast<long>(j),
                            [&](int node) {
                              auto it = use_links.find(node);
                              return it != use_links.end() && it->second >= 0;
                            });
      i = j;
    }
  }
  std::function<int(const AnnInfo&)> group = [&](const AnnInfo& a) {
    auto it = use_links.find(a.node);
    return it == use_links.end() ? -1 : it->second;
  };
  merge_adjacent_anns(mod, NodeKind::UseStmt, &group);

  // ---- wildcard name assignment (names in original-part preorder)
  {
    std::unordered_map<int, int> ann_by_node;  // annotated node -> ann index
    for (std::size_t i = 0; i < orig.anns.size(); ++i)
      ann_by_node[orig.anns[i].node] = static_cast<int>(i);
    int counter = 0;
    for (int n : orig.tree.preorder()) {
      auto it = ann_by_node.find(n);
      if (it == ann_by_node.end()) continue;
      int ai = it->second;
      AnnInfo& w = orig.anns[static_cast<std::size_t>(ai)];
      std::string name = "A" + std::to_string(counter++);
      orig.tree.at(n).label = name;
      for (const AnnInfo& u : mod.anns) {
        if (u.node < 0) continue;
        auto lk = use_links.find(u.node);
        if (lk == use_links.end() || lk->second != ai) continue;
        if (mod.tree.at(u.node).label.empty()) {
          mod.tree.at(u.node).label = name;
        } else if (mod.tree.at(u.node).label != name) {
          result.trace.warnings.push_back("use already linked to " + mod.tree.at(u.node).label +
                                          ", skipping " + name);
        }
      }
      std::vector<std::string>& tr = result.trace.annotation_origins[name];
      for (int o : w.origin_inserts) tr.push_back("insert@o2:" + std::to_string(o));
      for (int o : w.origin_deletes) tr.push_back("delete@o1:" + std::to_string(o));
    }
    for (const AnnInfo& u : mod.anns) {
      if (u.node < 0) continue;
      std::string name = mod.tree.at(u.node).label;
      std::vector<std::string>& tr =
          result.trace.annotation_origins[name.empty() ? "<unnamed use>" : name];
      for (int n : u.origin_inserts) tr.push_back("insert@m2:" + std::to_string(n));
      for (int n : u.origin_deletes) tr.push_back("delete@m1:" + std::to_string(n));
    }
  }

  // ---- boundary rule
  {
    auto strip = [&](bool leading) {
      auto& stmts = orig.tree.at(orig.tree.root()).children;
      while (!stmts.empty()) {
        int edge = leading ? stmts.front() : stmts.back();
        if (orig.tree.at(edge).kind != NodeKind::WildcardStmt) break;
        std::string name = orig.tree.at(edge).label;
        if (leading) {
          stmts.erase(stmts.begin());
          result.trace.removed_leading.push_back(name);
        } else {
          stmts.pop_back();
          result.trace.removed_trailing.push_back(name);
        }
        // partner use: removed when itself at the pattern edge, else unnamed
        auto& mstmts = mod.tree.at(mod.tree.root()).children;
        for (std::size_t i = 0; i < mstmts.size(); ++i) {
          int u = mstmts[i];
          if (mod.tree.at(u).kind != NodeKind::UseStmt || mod.tree.at(u).label != name) continue;
          if (i == 0 || i + 1 == mstmts.size()) {
            mstmts.erase(mstmts.begin() + static_cast<long>(i));
          } else {
            mod.tree.at(u).label.clear();
          }
          break;
        }
      }
    };
    strip(true);
    strip(false);
  }

  // ---- choice insertion for unnamed uses
  {
    struct Replacement {
      int use_node;
      std::vector<std::vector<int>> case_roots_m1;  // statement roots in m1
      std::vector<int> case_roots_m2;
    };
    for (AnnInfo& u : mod.anns) {
      if (u.node < 0) continue;
      // node ids remain valid: boundary removal only detaches top-level uses
      bool detached = true;
      int parent = mod.tree.at(u.node).parent;
      if (parent >= 0) {
        const auto& ch = mod.tree.at(parent).children;
        detached = std::find(ch.begin(), ch.end(), u.node) == ch.end();
      }
      if (detached) continue;
      NodeKind k = mod.tree.at(u.node).kind;
      if (!mod.tree.at(u.node).label.empty()) continue;
      if (k == NodeKind::UseExpr) {
        // no statement-level content to offer; drop the marker
        auto& ch = mod.tree.at(parent).children;
        ch.erase(std::remove(ch.begin(), ch.end(), u.node), ch.end());
        result.trace.warnings.push_back("unnamed expr use dropped");
        continue;
      }
      if (k != NodeKind::UseStmt) continue;

      // gather case contents
      std::vector<Tree> cases;
      auto add_case = [&](const Tree& src_tree, const std::vector<int>& roots) {
        std::vector<int> stmt_roots;
        for (int r : roots)
          if (src_tree.is_statement(r) || r == src_tree.root()) stmt_roots.push_back(r);
        if (stmt_roots.empty()) return;
        std::sort(stmt_roots.begin(), stmt_roots.end());
        // holes standing for an earlier choice splice that choice's cases
        bool spliced = false;
        for (int r : stmt_roots) {
          if (src_tree.at(r).kind == NodeKind::Hole) {
            const std::string& label = src_tree.at(r).label;
            auto it = ctx.hole_choices.find(label);
            if (it != ctx.hole_choices.end()) {
              for (int case_node : it->second.at(it->second.root()).children) {
                Tree one;
                one.add(NodeKind::ChoiceCase, "", -1);
                for (int s : it->second.at(case_node).children)
                  one.graft(it->second, s, one.root());
                cases.push_back(std::move(one));
              }
              spliced = true;
            }
          }
        }
        std::vector<int> real_roots;
        for (int r : stmt_roots)
          if (src_tree.at(r).kind != NodeKind::Hole) real_roots.push_back(r);
        if (!real_roots.empty()) {
          Tree one;
          one.add(NodeKind::ChoiceCase, "", -1);
          for (int r : real_roots) one.graft(src_tree, r, one.root());
          cases.push_back(std::move(one));
        }
        (void)spliced;
      };
      add_case(m1, u.origin_deletes);
      add_case(m2, u.origin_inserts);

      // dedupe structurally identical cases
      std::vector<Tree> unique_cases;
      for (Tree& c : cases) {
        bool dup = false;
        for (const Tree& seen : unique_cases)
          if (structurally_equal(seen, c)) {
            dup = true;
            break;
          }
        if (!dup) unique_cases.push_back(std::move(c));
      }

      if (unique_cases.empty()) {
        auto& ch = mod.tree.at(parent).children;
        ch.erase(std::find(ch.begin(), ch.end(), u.node));
        result.trace.warnings.push_back("empty unnamed use dropped");
        continue;
      }
      int choice = mod.tree.add(NodeKind::Choice, "", -1);
      for (const Tree& c : unique_cases) {
        int case_node = mod.tree.add(NodeKind::ChoiceCase, "", choice);
        for (int s : c.at(c.root()).children) mod.tree.graft(c, s, case_node);
      }
      // put the choice where the use sat; node storage may have been
      // reallocated by the grafts, so re-acquire the child list
      auto& ch = mod.tree.at(parent).children;
      auto pos = std::find(ch.begin(), ch.end(), u.node);
      *pos = choice;
      mod.tree.at(choice).parent = parent;
    }
  }

  Pattern p;
  p.original = std::move(orig.tree);
  p.modified = std::move(mod.tree);
  p.match_identifiers = std::move(match_ids);
  // carried-over placeholders that still occur as identifiers stay valid
  for (const std::string& prev : ctx.previous_match_ids) {
    if (p.has_match_identifier(prev)) continue;
    bool present = false;
    for (int n : p.original.preorder()) {
      NodeKind k = p.original.at(n).kind;
      if ((k == NodeKind::Identifier || k == NodeKind::FieldAccess) &&
          p.original.at(n).label == prev) {
        present = true;
        break;
      }
    }
    if (present) p.match_identifiers.push_back(prev);
  }

  validate_pattern(p);
  result.pattern = std::move(p);
  return result;
}

}  // namespace

CreateResult create_pattern(const ChangeExample& c1, const ChangeExample& c2,
                            const RuleSet& rules) {
  PipelineCtx ctx;
  ctx.rules = rules;
  return run_pipeline(c1, c2, ctx);
}

CreateResult refine_pattern(const Pattern& p, const ChangeExample& c, const RuleSet& rules) {
  // short-circuit: the pattern already reproduces this example
  SearchOptions opts;
  std::vector<MatchResult> matches = search_codebase(p, {{std::string("refine"), c.original}}, opts);
  for (const MatchResult& m : matches) {
    Recommendation rec = create_recommendation(p, m, c.original);
    for (const auto& variant : rec.variants) {
      if (tokenize(variant).same_lexemes(tokenize(c.modified))) {
        CreateResult result;
        result.pattern = p;
        return result;
      }
    }
  }

  PatternAsChange pc = pattern_as_change(p);
  ChangeExample as_change{pc.id, pc.original, pc.modified};
  PipelineCtx ctx;
  ctx.rules = rules;
  ctx.hole_choices = pc.choice_cases;
  ctx.previous_match_ids = p.match_identifiers;
  return run_pipeline(as_change, c, ctx);
}

}  // namespace ares
