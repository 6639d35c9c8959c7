// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ares/diff.hpp"
#include "ares/ordering.hpp"
#include "ares/pattern.hpp"

namespace ares {

// Edit-script adjustment rule families; each can be toggled off.
struct RuleSet {
  bool subsumption = true;      // statement-level collapse of covered node ops
  bool repair_identical = true; // positional re-pairing of identical statements
  bool cross_block = true;      // demote moves across nested blocks
  bool stmt_collapse = true;    // whole-statement insert for assignment-likes
};

struct IsolationResult {
  int root_o1 = -1, root_o2 = -1, root_m1 = -1, root_m2 = -1;
  bool succeeded = false;
  bool used_heuristic = false;  // phase 2 had to run
};

IsolationResult isolate_change(const ChangeExample& c1, const ChangeExample& c2);

// Adjusted cross-example script: a mapping plus a derived op view in which
// covered node ops are collapsed to statement level and some statement
// deletes are suppressed (rule 48 replaces delete+insert with one insert).
struct AdjScript {
  NodeMapping map;
  std::set<int> suppressed_deletes;  // src statement roots
  std::vector<EditOp> ops;
};

AdjScript adjust_edit_script(const Tree& src, const Tree& dst, const NodeMapping& m,
                             const RuleSet& rules);

// Extracts rename pairs from identifier updates of doo (placeholder = the dst
// lexeme, first-occurrence order), removes matching updates from both
// scripts, and demotes every remaining update to delete+insert.
std::vector<std::string> insert_match_identifiers(const Tree& o1, const Tree& o2, AdjScript& doo,
                                                  const Tree& m1, const Tree& m2, AdjScript& dmm,
                                                  const RuleSet& rules);

struct CreationTrace {
  std::map<std::string, std::vector<std::string>> annotation_origins;
  std::vector<std::string> removed_leading;
  std::vector<std::string> removed_trailing;
  std::vector<std::string> warnings;
};

struct CreateResult {
  std::optional<Pattern> pattern;
  std::string abort_reason;
  CreationTrace trace;
};

CreateResult create_pattern(const ChangeExample& c1, const ChangeExample& c2,
                            const RuleSet& rules = {});

// Treats the working pattern as a change example (annotations as Hole nodes)
// and merges one more example into it. Returns the pattern unchanged when it
// already reproduces the example.
CreateResult refine_pattern(const Pattern& p, const ChangeExample& c, const RuleSet& rules = {});

}  // namespace ares
