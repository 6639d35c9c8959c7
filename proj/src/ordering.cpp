// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/ordering.hpp"

#include "ares/diff.hpp"
#include "ares/errors.hpp"

namespace ares {

std::vector<long> DistanceMatrix::column_sums() const {
  std::vector<long> sums(static_cast<std::size_t>(n()), 0);
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) sums[static_cast<std::size_t>(j)] += entries[i][j];
  return sums;
}

int change_distance(const ChangeExample& a, const ChangeExample& b) {
  return edit_op_count(a.original.tree, b.original.tree) +
         edit_op_count(a.modified.tree, b.modified.tree);
}

DistanceMatrix build_distance_matrix(const std::vector<ChangeExample>& examples) {
  int n = static_cast<int>(examples.size());
  if (n < 2) throw TooFewExamples("need at least two change examples, got " + std::to_string(n));
  DistanceMatrix m;
  m.entries.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          change_distance(examples[static_cast<std::size_t>(i)],
                          examples[static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

std::pair<int, int> select_initial_pair(const DistanceMatrix& m) {
  auto sums = m.column_sums();
  int best = 0, second = 1;
  if (sums[1] < sums[0]) {
    best = 1;
    second = 0;
  }
  for (int j = 2; j < m.n(); ++j) {
    long s = sums[static_cast<std::size_t>(j)];
    if (s < sums[static_cast<std::size_t>(best)]) {
      second = best;
      best = j;
    } else if (s < sums[static_cast<std::size_t>(second)]) {
      second = j;
    }
  }
  if (best > second) std::swap(best, second);
  return {best, second};
}

int next_closest(const Pattern& working, const std::vector<ChangeExample>& remaining) {
  PatternAsChange pc = pattern_as_change(working);
  ChangeExample as_change{pc.id, pc.original, pc.modified};
  int best = -1;
  int best_dist = 0;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    int d = change_distance(as_change, remaining[i]);
    if (best < 0 || d < best_dist ||
        (d == best_dist && remaining[i].id < remaining[static_cast<std::size_t>(best)].id)) {
      best = static_cast<int>(i);
      best_dist = d;
    }
  }
  return best;
}

}  // namespace ares
