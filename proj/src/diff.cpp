// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/diff.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "ares/errors.hpp"

namespace ares {

namespace {

std::string node_key(const Node& n) {
  std::string k = kind_name(n.kind);
  k += '\x1f';
  k += n.label;
  if (!n.anchor_lexeme.empty()) {
    k += '\x1f';
    k += n.anchor_lexeme;
    k += ':';
    k += std::to_string(n.anchor_ordinal);
  }
  return k;
}

// multiset over descendants that are still unclaimed by earlier phases;
// material already matched elsewhere must not make two statements look alike
std::map<std::string, int> unclaimed_multiset(const Tree& t, int id,
                                              const std::function<bool(int)>& claimed,
                                              int& size_out) {
  std::map<std::string, int> m;
  size_out = 0;
  for (int n : t.preorder(id)) {
    if (claimed(n)) continue;
    ++m[node_key(t.at(n))];
    ++size_out;
  }
  return m;
}

double dice(const std::map<std::string, int>& a, int size_a, const std::map<std::string, int>& b,
            int size_b) {
  int common = 0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    if (it != b.end()) common += std::min(c, it->second);
  }
  return 2.0 * common / (size_a + size_b);
}

void match_lockstep(const Tree& src, int s, const Tree& dst, int d, NodeMapping& m) {
  m.set(s, d);
  const auto& cs = src.at(s).children;
  const auto& cd = dst.at(d).children;
  for (std::size_t i = 0; i < cs.size(); ++i) match_lockstep(src, cs[i], dst, cd[i], m);
}

// longest increasing subsequence; returns kept positions
std::vector<bool> lis_keep(const std::vector<int>& seq) {
  std::size_t n = seq.size();
  std::vector<bool> keep(n, false);
  if (n == 0) return keep;
  std::vector<int> tail_idx;
  std::vector<int> prev(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::lower_bound(tail_idx.begin(), tail_idx.end(), seq[i],
                               [&](int idx, int v) { return seq[static_cast<std::size_t>(idx)] < v; });
    if (it != tail_idx.begin()) prev[i] = *(it - 1);
    if (it == tail_idx.end())
      tail_idx.push_back(static_cast<int>(i));
    else
      *it = static_cast<int>(i);
  }
  int cur = tail_idx.empty() ? -1 : tail_idx.back();
  while (cur >= 0) {
    keep[static_cast<std::size_t>(cur)] = true;
    cur = prev[static_cast<std::size_t>(cur)];
  }
  return keep;
}

class Matcher {
 public:
  Matcher(const Tree& src, const Tree& dst)
      : src_(src), dst_(dst), m_(src.size(), dst.size()) {}

  NodeMapping run() {
    phase1_identical();
    phase2_statements();
    phase3_alignment();
    return std::move(m_);
  }

 private:
  const Tree& src_;
  const Tree& dst_;
  NodeMapping m_;
  std::vector<int> p1_pairs_;  // src roots matched in phase 1 (whole subtrees)

  void phase1_identical() {
    auto hs = src_.structural_hashes();
    auto hd = dst_.structural_hashes();
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    for (int d : dst_.preorder()) buckets[hd[static_cast<std::size_t>(d)]].push_back(d);

    struct Cand {
      int size;
      int order;
      int id;
    };
    std::vector<Cand> cands;
    int order = 0;
    for (int s : src_.preorder()) {
      if (!src_.at(s).children.empty())
        cands.push_back({src_.subtree_size(s), order, s});
      ++order;
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.size != b.size) return a.size > b.size;
      return a.order < b.order;
    });
    for (const Cand& c : cands) {
      if (m_.matched_src(c.id)) continue;
      auto it = buckets.find(hs[static_cast<std::size_t>(c.id)]);
      if (it == buckets.end()) continue;
      for (int d : it->second) {
        if (m_.matched_dst(d)) continue;
        if (!structurally_equal(src_, c.id, dst_, d)) continue;
        match_lockstep(src_, c.id, dst_, d, m_);
        p1_pairs_.push_back(c.id);
        break;
      }
    }
  }

  // discounted similarity between a source and target statement
  double stmt_dice(int s, int d) {
    int size_s = 0, size_d = 0;
    auto ms = unclaimed_multiset(src_, s, [&](int n) { return m_.matched_src(n); }, size_s);
    auto md = unclaimed_multiset(dst_, d, [&](int n) { return m_.matched_dst(n); }, size_d);
    if (size_s + size_d == 0) return 0.0;
    return dice(ms, size_s, md, size_d);
  }

  void phase2_statements() {
    std::vector<int> ss, ds;
    for (int s : src_.preorder())
      if (src_.is_statement(s) && !m_.matched_src(s)) ss.push_back(s);
    for (int d : dst_.preorder())
      if (dst_.is_statement(d) && !m_.matched_dst(d)) ds.push_back(d);

    std::unordered_map<int, std::map<std::string, int>> msets_s, msets_d;
    std::unordered_map<int, int> size_s, size_d;
    for (int s : ss) {
      int size = 0;
      msets_s[s] = unclaimed_multiset(src_, s, [&](int n) { return m_.matched_src(n); }, size);
      size_s[s] = size;
    }
    for (int d : ds) {
      int size = 0;
      msets_d[d] = unclaimed_multiset(dst_, d, [&](int n) { return m_.matched_dst(n); }, size);
      size_d[d] = size;
    }

    struct Cand {
      double score;
      int s_order, d_order;
      int s, d;
    };
    std::vector<Cand> cands;
    std::unordered_map<int, int> order_s, order_d;
    {
      int i = 0;
      for (int s : src_.preorder()) order_s[s] = i++;
      i = 0;
      for (int d : dst_.preorder()) order_d[d] = i++;
    }
    for (int s : ss) {
      for (int d : ds) {
        if (src_.at(s).kind != dst_.at(d).kind) continue;
        if (size_s[s] + size_d[d] == 0) continue;
        double score = dice(msets_s[s], size_s[s], msets_d[d], size_d[d]);
        if (score >= 0.5) cands.push_back({score, order_s[s], order_d[d], s, d});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.s_order != b.s_order) return a.s_order < b.s_order;
      return a.d_order < b.d_order;
    });
    for (const Cand& c : cands) {
      if (m_.matched_src(c.s) || m_.matched_dst(c.d)) continue;
      m_.set(c.s, c.d);
    }
  }

  void phase3_alignment() {
    if (!src_.empty() && !dst_.empty() && !m_.matched_src(src_.root()) &&
        !m_.matched_dst(dst_.root()) && src_.at(src_.root()).kind == dst_.at(dst_.root()).kind) {
      m_.set(src_.root(), dst_.root());
    }
    std::vector<bool> lockstep(static_cast<std::size_t>(src_.size()), false);
    for (int root : p1_pairs_)
      for (int n : src_.preorder(root)) lockstep[static_cast<std::size_t>(n)] = true;

    // worklist in src preorder; newly matched pairs are appended
    std::vector<int> work;
    std::vector<bool> queued(static_cast<std::size_t>(src_.size()), false);
    for (int s : src_.preorder()) {
      if (m_.matched_src(s) && !lockstep[static_cast<std::size_t>(s)]) {
        work.push_back(s);
        queued[static_cast<std::size_t>(s)] = true;
      }
    }
    for (std::size_t wi = 0; wi < work.size(); ++wi) {
      int s = work[wi];
      int d = m_.dst_of(s);
      align_children(s, d, work, queued);
    }
  }

  void align_children(int s, int d, std::vector<int>& work, std::vector<bool>& queued) {
    std::vector<int> cs, cd;
    for (int c : src_.at(s).children)
      if (!m_.matched_src(c)) cs.push_back(c);
    for (int c : dst_.at(d).children)
      if (!m_.matched_dst(c)) cd.push_back(c);
    if (cs.empty() && cd.empty()) return;

    // LCS over exact (kind,label,anchor) keys; statements must also clear the
    // similarity threshold so unrelated calls never pair on a bare kind
    std::size_t n1 = cs.size(), n2 = cd.size();
    std::vector<std::vector<int>> dp(n1 + 1, std::vector<int>(n2 + 1, 0));
    auto eq = [&](int a, int b) {
      if (node_key(src_.at(a)) != node_key(dst_.at(b))) return false;
      if (src_.is_statement(a) || dst_.is_statement(b)) return stmt_dice(a, b) >= 0.5;
      return true;
    };
    for (std::size_t i = n1; i-- > 0;) {
      for (std::size_t j = n2; j-- > 0;) {
        dp[i][j] = eq(cs[i], cd[j]) ? dp[i + 1][j + 1] + 1
                                    : std::max(dp[i + 1][j], dp[i][j + 1]);
      }
    }
    std::vector<int> rest_s, rest_d;
    std::size_t i = 0, j = 0;
    auto take = [&](int a, int b) {
      m_.set(a, b);
      if (!queued[static_cast<std::size_t>(a)]) {
        work.push_back(a);
        queued[static_cast<std::size_t>(a)] = true;
      }
    };
    while (i < n1 && j < n2) {
      if (eq(cs[i], cd[j]) && dp[i][j] == dp[i + 1][j + 1] + 1) {
        take(cs[i], cd[j]);
        ++i;
        ++j;
      } else if (dp[i + 1][j] >= dp[i][j + 1]) {
        rest_s.push_back(cs[i++]);
      } else {
        rest_d.push_back(cd[j++]);
      }
    }
    for (; i < n1; ++i) rest_s.push_back(cs[i]);
    for (; j < n2; ++j) rest_d.push_back(cd[j]);

    // positional fallback: only when the leftover kind sequences agree exactly
    if (!rest_s.empty() && rest_s.size() == rest_d.size()) {
      bool kinds_agree = true;
      for (std::size_t k = 0; k < rest_s.size(); ++k) {
        if (src_.at(rest_s[k]).kind != dst_.at(rest_d[k]).kind) {
          kinds_agree = false;
          break;
        }
      }
      if (kinds_agree) {
        for (std::size_t k = 0; k < rest_s.size(); ++k) {
          if ((src_.is_statement(rest_s[k]) || dst_.is_statement(rest_d[k])) &&
              stmt_dice(rest_s[k], rest_d[k]) < 0.5)
            continue;
          take(rest_s[k], rest_d[k]);
        }
      }
    }
  }
};

}  // namespace

NodeMapping compute_mapping(const Tree& src, const Tree& dst) {
  if (src.empty() || dst.empty()) return NodeMapping(src.size(), dst.size());
  Matcher m(src, dst);
  return m.run();
}

std::vector<EditOp> ops_from_mapping(const Tree& src, const Tree& dst, const NodeMapping& m) {
  std::vector<EditOp> ops;

  // deletes, post-order
  {
    std::function<void(int)> post = [&](int id) {
      for (int c : src.at(id).children) post(c);
      if (!m.matched_src(id)) {
        EditOp op;
        op.kind = OpKind::Delete;
        op.node = id;
        ops.push_back(op);
      }
    };
    if (!src.empty()) post(src.root());
  }

  // move detection: parent mismatch, or sibling order outside LIS
  std::vector<bool> moved(static_cast<std::size_t>(src.size()), false);
  for (int d : dst.preorder()) {
    if (!m.matched_dst(d)) continue;
    int s = m.src_of(d);
    int ps = src.at(s).parent;
    int pd = dst.at(d).parent;
    if (ps < 0 || pd < 0) continue;
    if (!m.matched_src(ps) || m.dst_of(ps) != pd) moved[static_cast<std::size_t>(s)] = true;
  }
  // order check per matched parent pair
  for (int ps : src.preorder()) {
    if (!m.matched_src(ps)) continue;
    int pd = m.dst_of(ps);
    std::vector<std::pair<int, int>> pairs;  // (src child, dst index)
    std::unordered_map<int, int> dst_index;
    const auto& cd = dst.at(pd).children;
    for (std::size_t j = 0; j < cd.size(); ++j) dst_index[cd[j]] = static_cast<int>(j);
    for (int c : src.at(ps).children) {
      if (!m.matched_src(c) || moved[static_cast<std::size_t>(c)]) continue;
      int dchild = m.dst_of(c);
      auto it = dst_index.find(dchild);
      if (it == dst_index.end()) continue;  // crossing move, already flagged
      pairs.emplace_back(c, it->second);
    }
    std::vector<int> seq;
    seq.reserve(pairs.size());
    for (auto& p : pairs) seq.push_back(p.second);
    auto keep = lis_keep(seq);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (!keep[k]) moved[static_cast<std::size_t>(pairs[k].first)] = true;
  }

  // placement ops in target preorder
  for (int d : dst.preorder()) {
    int pd = dst.at(d).parent;
    if (pd < 0) continue;  // root is never placed
    int index = -1;
    {
      const auto& cd = dst.at(pd).children;
      for (std::size_t j = 0; j < cd.size(); ++j)
        if (cd[j] == d) index = static_cast<int>(j);
    }
    auto parent_ref = [&](EditOp& op) {
      if (m.matched_dst(pd))
        op.parent_src = m.src_of(pd);
      else
        op.parent_tgt = pd;
    };
    if (!m.matched_dst(d)) {
      EditOp op;
      op.kind = OpKind::Insert;
      op.node = d;
      op.index = index;
      op.ins_kind = dst.at(d).kind;
      op.ins_label = dst.at(d).label;
      op.ins_anchor_lexeme = dst.at(d).anchor_lexeme;
      op.ins_anchor_ordinal = dst.at(d).anchor_ordinal;
      parent_ref(op);
      ops.push_back(op);
    } else {
      int s = m.src_of(d);
      if (moved[static_cast<std::size_t>(s)]) {
        EditOp op;
        op.kind = OpKind::Move;
        op.node = s;
        op.index = index;
        parent_ref(op);
        ops.push_back(op);
      }
    }
  }

  // updates
  for (int s : src.preorder()) {
    if (!m.matched_src(s)) continue;
    int d = m.dst_of(s);
    if (src.at(s).label != dst.at(d).label) {
      EditOp op;
      op.kind = OpKind::Update;
      op.node = s;
      op.new_label = dst.at(d).label;
      ops.push_back(op);
    }
  }
  return ops;
}

EditScript diff(const Tree& src, const Tree& dst) {
  NodeMapping m = compute_mapping(src, dst);
  EditScript script;
  script.ops = ops_from_mapping(src, dst, m);
  for (int s = 0; s < src.size(); ++s)
    if (m.matched_src(s)) script.mapping.emplace_back(s, m.dst_of(s));
  return script;
}

namespace {

// result tree under construction for apply_script
struct Builder {
  struct BNode {
    NodeKind kind;
    std::string label;
    std::string anchor_lexeme;
    int anchor_ordinal = 0;
    SourceSpan span;
    std::vector<int> children;  // builder ids
    bool deleted = false;
    bool detached = false;
  };
  std::vector<BNode> nodes;
};

}  // namespace

Tree apply_script(const Tree& source, const EditScript& script) {
  Builder b;
  b.nodes.reserve(static_cast<std::size_t>(source.size()));
  for (const Node& n : source.nodes) {
    Builder::BNode bn;
    bn.kind = n.kind;
    bn.label = n.label;
    bn.anchor_lexeme = n.anchor_lexeme;
    bn.anchor_ordinal = n.anchor_ordinal;
    bn.span = n.span;
    bn.children = n.children;
    b.nodes.push_back(std::move(bn));
  }
  auto check_src = [&](int id) {
    if (id < 0 || id >= static_cast<int>(b.nodes.size()))
      throw InvalidScript("op references missing node " + std::to_string(id));
  };

  std::unordered_map<int, int> inserted;  // target id -> builder id

  // 1. create insert payloads detached
  for (const EditOp& op : script.ops) {
    if (op.kind != OpKind::Insert) continue;
    Builder::BNode bn;
    bn.kind = op.ins_kind;
    bn.label = op.ins_label;
    bn.anchor_lexeme = op.ins_anchor_lexeme;
    bn.anchor_ordinal = op.ins_anchor_ordinal;
    b.nodes.push_back(std::move(bn));
    inserted[op.node] = static_cast<int>(b.nodes.size()) - 1;
  }

  // 2. detach move subjects and deleted nodes from their original parents
  std::vector<bool> detach(static_cast<std::size_t>(source.size()), false);
  std::vector<bool> subtree_del(static_cast<std::size_t>(source.size()), false);
  for (const EditOp& op : script.ops) {
    if (op.kind == OpKind::Insert && op.whole_stmt)
      throw InvalidScript("whole-statement inserts cannot be applied");
    if (op.kind == OpKind::Move || op.kind == OpKind::Delete) {
      check_src(op.node);
      detach[static_cast<std::size_t>(op.node)] = true;
      if (op.kind == OpKind::Delete) {
        b.nodes[static_cast<std::size_t>(op.node)].deleted = true;
        if (op.whole_stmt) subtree_del[static_cast<std::size_t>(op.node)] = true;
      }
    }
  }
  for (int s = 0; s < source.size(); ++s) {
    auto& ch = b.nodes[static_cast<std::size_t>(s)].children;
    ch.erase(std::remove_if(ch.begin(), ch.end(),
                            [&](int c) { return detach[static_cast<std::size_t>(c)]; }),
             ch.end());
  }
  // node-granular deletes must be childless once deleted/moved children are
  // gone; anything left would be orphaned
  for (int s = 0; s < source.size(); ++s) {
    if (b.nodes[static_cast<std::size_t>(s)].deleted && !subtree_del[static_cast<std::size_t>(s)] &&
        !b.nodes[static_cast<std::size_t>(s)].children.empty())
      throw InvalidScript("delete of node with surviving children");
  }

  // 3. placement: moves and inserts carry final indices; survivors keep order
  struct Placement {
    int builder_id;
    int index;
  };
  std::unordered_map<int, std::vector<Placement>> placements;  // builder parent -> items
  auto resolve_parent = [&](const EditOp& op) -> int {
    if (op.parent_src >= 0) {
      check_src(op.parent_src);
      return op.parent_src;
    }
    auto it = inserted.find(op.parent_tgt);
    if (it == inserted.end()) throw InvalidScript("placement under unknown inserted node");
    return it->second;
  };
  for (const EditOp& op : script.ops) {
    if (op.kind == OpKind::Move) {
      int p = resolve_parent(op);
      placements[p].push_back({op.node, op.index});
    } else if (op.kind == OpKind::Insert) {
      int p = resolve_parent(op);
      placements[p].push_back({inserted[op.node], op.index});
    }
  }
  for (auto& [parent, items] : placements) {
    auto& survivors = b.nodes[static_cast<std::size_t>(parent)].children;
    std::size_t total = survivors.size() + items.size();
    std::vector<int> result(total, -1);
    for (const Placement& pl : items) {
      if (pl.index < 0 || pl.index >= static_cast<int>(total))
        throw InvalidScript("placement index out of range");
      if (result[static_cast<std::size_t>(pl.index)] != -1)
        throw InvalidScript("conflicting placement index");
      result[static_cast<std::size_t>(pl.index)] = pl.builder_id;
    }
    std::size_t si = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (result[i] == -1) result[i] = survivors[si++];
    }
    if (si != survivors.size()) throw InvalidScript("placement leaves stray children");
    survivors = std::move(result);
  }

  // 4. updates
  for (const EditOp& op : script.ops) {
    if (op.kind != OpKind::Update) continue;
    check_src(op.node);
    b.nodes[static_cast<std::size_t>(op.node)].label = op.new_label;
    b.nodes[static_cast<std::size_t>(op.node)].span = SourceSpan{};
  }

  // 5. materialize from the source root
  if (source.empty()) return Tree{};
  int root = source.root();
  if (b.nodes[static_cast<std::size_t>(root)].deleted) throw InvalidScript("root deleted");
  Tree out;
  std::function<int(int, int)> emit = [&](int bid, int parent) -> int {
    const Builder::BNode& bn = b.nodes[static_cast<std::size_t>(bid)];
    if (bn.deleted) throw InvalidScript("deleted node still reachable");
    int nid = out.add(bn.kind, bn.label, parent);
    out.at(nid).anchor_lexeme = bn.anchor_lexeme;
    out.at(nid).anchor_ordinal = bn.anchor_ordinal;
    out.at(nid).span = bn.span;
    for (int c : bn.children) emit(c, nid);
    return nid;
  };
  emit(root, -1);
  return out;
}

int edit_op_count(const Tree& a, const Tree& b) {
  return static_cast<int>(diff(a, b).ops.size());
}

}  // namespace ares
