// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ares/pattern.hpp"

namespace ares {

struct MatchResult {
  std::string file;
  int start_node = -1;
  int region_begin = -1;  // first matched top-level statement (code node)
  int region_end = -1;    // last matched top-level statement (code node)
  // every (code node, pattern node) pair, wildcard entries use the marker node
  std::vector<std::pair<int, int>> matches;
  // concrete pattern node -> code node
  std::map<int, int> pattern_to_code;
  // wildcard name -> captured code roots, in code order
  std::map<std::string, std::vector<int>> captures;
  // placeholder identifier -> concrete lexeme at the location
  std::map<std::string, std::string> bindings;
};

struct SearchOptions {
  int parallelism = 1;
};

// all AST nodes of the body with the same kind as the first pattern code
// node, in preorder
std::vector<int> find_start_nodes(const MethodBody& body, const Pattern& p);

// backtracking match of the serialized pattern node list against the node
// list starting at start_node
std::optional<MatchResult> search(int start_node, const MethodBody& body, const Pattern& p);

// all matches over a codebase; overlapping matches inside one method keep the
// earliest start node
std::vector<MatchResult> search_codebase(const Pattern& p,
                                         const std::vector<std::pair<std::string, MethodBody>>& files,
                                         const SearchOptions& opts);

}  // namespace ares
