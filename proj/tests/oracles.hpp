// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

// Independent brute-force oracles. These deliberately re-implement the specs
// from scratch (different algorithmic shape) so they can check the real
// implementations without sharing code paths.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "ares/ast.hpp"
#include "ares/pattern.hpp"

namespace test_oracles {

// ---- Levenshtein: top-down memoized recursion (the library uses a DP row)
inline std::size_t lev_rec(const std::string& a, const std::string& b, std::size_t i,
                           std::size_t j, std::vector<int>& memo, std::size_t stride) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  int& slot = memo[i * stride + j];
  if (slot >= 0) return static_cast<std::size_t>(slot);
  std::size_t best;
  if (a[i] == b[j]) {
    best = lev_rec(a, b, i + 1, j + 1, memo, stride);
  } else {
    std::size_t del = lev_rec(a, b, i + 1, j, memo, stride);
    std::size_t ins = lev_rec(a, b, i, j + 1, memo, stride);
    std::size_t sub = lev_rec(a, b, i + 1, j + 1, memo, stride);
    best = 1 + std::min(std::min(del, ins), sub);
  }
  slot = static_cast<int>(best);
  return best;
}

inline std::size_t lev_oracle(const std::string& a, const std::string& b) {
  std::size_t stride = b.size() + 1;
  std::vector<int> memo((a.size() + 1) * stride, -1);
  return lev_rec(a, b, 0, 0, memo, stride);
}

// ---- wildcard segmentation oracle over statement sequences
//
// A pattern is a list of items: concrete statements or stmt-wildcards. A body
// matches starting at statement i0 when some assignment of consecutive
// statement runs to wildcards covers the pattern. Node comparison mirrors the
// isMatch contract: identifiers by name-or-placeholder, booleans strictly,
// other literals ignored, operators and member names strictly.

struct OracleItem {
  bool wildcard = false;
  // for concrete items: the statement subtree (own tree, root = statement)
  ares::Tree stmt;
};

inline bool node_matches(const ares::Tree& code, int nc, const ares::Tree& pat, int np,
                         const std::vector<std::string>& placeholders) {
  const ares::Node& c = code.at(nc);
  const ares::Node& p = pat.at(np);
  if (c.kind != p.kind) return false;
  switch (p.kind) {
    case ares::NodeKind::Identifier:
    case ares::NodeKind::FieldAccess: {
      bool is_placeholder = false;
      for (const auto& m : placeholders)
        if (m == p.label) is_placeholder = true;
      if (!is_placeholder && c.label != p.label) return false;
      break;
    }
    case ares::NodeKind::BoolLit:
      if (c.label != p.label) return false;
      break;
    case ares::NodeKind::IntLit:
    case ares::NodeKind::StringLit:
      break;  // values not compared
    case ares::NodeKind::Binary:
    case ares::NodeKind::Unary:
    case ares::NodeKind::TypeName:
      if (c.label != p.label) return false;
      break;
    default:
      break;
  }
  if (c.children.size() != p.children.size()) return false;
  for (std::size_t k = 0; k < c.children.size(); ++k)
    if (!node_matches(code, c.children[k], pat, p.children[k], placeholders)) return false;
  return true;
}

inline bool seg_match(const std::vector<OracleItem>& items, std::size_t pi,
                      const ares::Tree& body, const std::vector<int>& stmts, std::size_t bi,
                      const std::vector<std::string>& placeholders) {
  if (pi == items.size()) return true;  // trailing body statements are fine
  const OracleItem& item = items[pi];
  if (item.wildcard) {
    for (std::size_t k = 0; bi + k <= stmts.size(); ++k) {
      if (seg_match(items, pi + 1, body, stmts, bi + k, placeholders)) return true;
      if (bi + k == stmts.size()) break;
    }
    return false;
  }
  if (bi >= stmts.size()) return false;
  if (!node_matches(body, stmts[bi], item.stmt, item.stmt.root(), placeholders)) return false;
  return seg_match(items, pi + 1, body, stmts, bi + 1, placeholders);
}

// the pattern may match the statement list of any block, at any offset
inline bool oracle_matches_anywhere(const std::vector<OracleItem>& items, const ares::Tree& body,
                                    const std::vector<std::string>& placeholders) {
  for (int b : body.preorder()) {
    if (body.at(b).kind != ares::NodeKind::Block) continue;
    const auto& stmts = body.at(b).children;
    std::vector<int> stmt_list(stmts.begin(), stmts.end());
    for (std::size_t i0 = 0; i0 < stmt_list.size(); ++i0) {
      if (seg_match(items, 0, body, stmt_list, i0, placeholders)) return true;
    }
  }
  return false;
}

}  // namespace test_oracles
