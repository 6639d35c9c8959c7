// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ares/ast.hpp"

namespace ares {

enum class OpKind { Delete, Insert, Move, Update };

// Node-granular edit operation. Delete/Update reference source nodes; Move
// moves a complete source subtree; Insert materializes one target node.
// Placement (Insert/Move) names the parent either as an existing source node
// (parent_src) or as a previously inserted target node (parent_tgt), plus the
// final child index. whole_stmt marks statement-level ops produced by the
// edit-script adjustment; the raw differ never sets it.
struct EditOp {
  OpKind kind;
  int node = -1;
  int parent_src = -1;
  int parent_tgt = -1;
  int index = -1;
  std::string new_label;
  // payload for Insert (so scripts are self-contained)
  NodeKind ins_kind = NodeKind::Empty;
  std::string ins_label;
  std::string ins_anchor_lexeme;
  int ins_anchor_ordinal = 0;
  bool whole_stmt = false;
};

struct NodeMapping {
  std::vector<int> src_to_dst;
  std::vector<int> dst_to_src;

  NodeMapping() = default;
  NodeMapping(int nsrc, int ndst) : src_to_dst(nsrc, -1), dst_to_src(ndst, -1) {}
  bool matched_src(int s) const { return src_to_dst[static_cast<std::size_t>(s)] >= 0; }
  bool matched_dst(int d) const { return dst_to_src[static_cast<std::size_t>(d)] >= 0; }
  int dst_of(int s) const { return src_to_dst[static_cast<std::size_t>(s)]; }
  int src_of(int d) const { return dst_to_src[static_cast<std::size_t>(d)]; }
  void set(int s, int d) {
    src_to_dst[static_cast<std::size_t>(s)] = d;
    dst_to_src[static_cast<std::size_t>(d)] = s;
  }
  void unset_src(int s) {
    int d = src_to_dst[static_cast<std::size_t>(s)];
    if (d >= 0) dst_to_src[static_cast<std::size_t>(d)] = -1;
    src_to_dst[static_cast<std::size_t>(s)] = -1;
  }
};

struct EditScript {
  std::vector<EditOp> ops;
  std::vector<std::pair<int, int>> mapping;  // (srcNodeId, dstNodeId)
};

// Heuristic move-aware matching: identical-subtree phase, statement container
// phase (Dice >= 0.5 over (kind,label) multisets), and recovery alignment.
NodeMapping compute_mapping(const Tree& src, const Tree& dst);

// Ops implied by a mapping: deletes (post-order), moves+inserts (target
// pre-order, final indices), updates.
std::vector<EditOp> ops_from_mapping(const Tree& src, const Tree& dst, const NodeMapping& m);

EditScript diff(const Tree& src, const Tree& dst);

// Applies `script` to a copy of `source`; throws InvalidScript on dangling
// references. Ops may be statement-collapsed (whole_stmt).
Tree apply_script(const Tree& source, const EditScript& script);

// |diff(a,b).ops| convenience used by the input ordering.
int edit_op_count(const Tree& a, const Tree& b);

}  // namespace ares
