// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ares/ast.hpp"

namespace ares {

// unit-cost insert/delete/substitute edit distance over any equality-
// comparable sequence
template <typename Seq, typename Eq>
std::size_t levenshtein(const Seq& a, const Seq& b, Eq eq) {
  std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t save = row[j];
      if (eq(a[i - 1], b[j - 1]))
        row[j] = diag;
      else
        row[j] = 1 + std::min(std::min(row[j - 1], row[j]), diag);
      diag = save;
    }
  }
  return row[m];
}

std::size_t levenshtein_str(const std::string& a, const std::string& b);
std::size_t levenshtein_tokens(const TokenStream& a, const TokenStream& b);

// A_T = 100 * (1 - LD_T / max(|r|,|m|)) over token streams; comments excluded
double token_accuracy(const MethodBody& rec, const MethodBody& truth);

// A_C over raw characters, comments and whitespace included
double char_accuracy(const std::string& rec_text, const std::string& truth_text);

struct RecommendationScore {
  std::string file;
  std::string method;
  bool correct = false;
  double at_min = 0, at_max = 0, ac_min = 0, ac_max = 0;
};

struct GroupEvaluation {
  int m = 0;          // available locations
  int generated = 0;  // recommendations produced
  int correct = 0;    // generated at a ground-truth location
  double at_min = 0, at_max = 0;  // mean over correct recommendations
  double ac_min = 0, ac_max = 0;
  double precision = 0;  // 100 * correct/generated
  double recall = 0;     // 100 * correct/m
  bool empty = false;    // no recommendations were generated
  std::vector<RecommendationScore> per_recommendation;
};

struct ScoredRecommendation {
  std::string file;
  std::string method;
  std::vector<MethodBody> variants;
};

struct TruthEntry {
  std::string file;
  std::string method;
  MethodBody after;   // expected modified body
  bool has_after = false;
};

GroupEvaluation evaluate_group(const std::vector<ScoredRecommendation>& recs,
                               const std::vector<TruthEntry>& truth, int available_locations);

}  // namespace ares
