// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ares/ast.hpp"

namespace ares {

// A generalized change pattern: an annotated original part, an annotated
// modified part, and the identifiers the match annotation leaves open.
// Annotations are tree nodes (WildcardStmt/WildcardExpr/UseStmt/UseExpr/
// Choice) at statement positions; expr annotations anchor into the following
// statement via (lexeme, occurrence).
struct Pattern {
  Tree original;
  Tree modified;
  std::vector<std::string> match_identifiers;

  bool has_match_identifier(const std::string& name) const {
    for (const auto& m : match_identifiers)
      if (m == name) return true;
    return false;
  }
};

// Resolves the expression an expr annotation (marker at statement position
// `marker`) anchors inside the following statement. Returns -1 if the anchor
// does not resolve.
int resolve_anchor(const Tree& tree, int marker);

// The statement an expr annotation refers to (next code sibling), -1 if none.
int anchored_statement(const Tree& tree, int marker);

// Computes the (lexeme, ordinal) anchor for expression `expr` inside
// statement `stmt`: the expression's first terminal label and its 1-based
// occurrence among the statement's terminals.
std::pair<std::string, int> anchor_for(const Tree& tree, int stmt, int expr);

// Highest-severity structural problems throw PatternSyntaxError: duplicate
// wildcard names, unbound uses, stmt-wildcards at the original part's
// boundary, unresolvable anchors.
void validate_pattern(const Pattern& p);

int max_choice_cases(const Pattern& p);

// Pattern rendered as a plain change example for distance computation and
// refinement: every annotation becomes a Hole node that matches nothing.
// Hole labels keep the annotation identity; choice_cases maps choice hole
// labels to copies of their Choice subtree so refinement can extend cases.
struct PatternAsChange {
  std::string id;
  MethodBody original;
  MethodBody modified;
  std::map<std::string, Tree> choice_cases;
};

PatternAsChange pattern_as_change(const Pattern& p);

}  // namespace ares
