// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ares/ast.hpp"
#include "ares/pattern.hpp"

namespace ares {

// One systematic-edit instance: a method body before and after the change.
struct ChangeExample {
  std::string id;
  MethodBody original;
  MethodBody modified;
};

struct DistanceMatrix {
  std::vector<std::vector<int>> entries;  // dense n*n, zero diagonal
  int n() const { return static_cast<int>(entries.size()); }
  std::vector<long> column_sums() const;
};

// edit ops to turn a.original into b.original plus ops for the modified sides
int change_distance(const ChangeExample& a, const ChangeExample& b);

DistanceMatrix build_distance_matrix(const std::vector<ChangeExample>& examples);

// the two distinct indices with the smallest column sums; ties pick the
// lower index
std::pair<int, int> select_initial_pair(const DistanceMatrix& m);

// index into `remaining` of the example closest to the working pattern;
// distance ties pick the lexicographically smallest id
int next_closest(const Pattern& working, const std::vector<ChangeExample>& remaining);

}  // namespace ares
