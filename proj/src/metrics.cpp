// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/metrics.hpp"

#include <algorithm>

namespace ares {

std::size_t levenshtein_str(const std::string& a, const std::string& b) {
  return levenshtein(a, b, [](char x, char y) { return x == y; });
}

std::size_t levenshtein_tokens(const TokenStream& a, const TokenStream& b) {
  return levenshtein(a.tokens, b.tokens, [](const Token& x, const Token& y) {
    return x.kind == y.kind && x.text == y.text;
  });
}

double token_accuracy(const MethodBody& rec, const MethodBody& truth) {
  TokenStream r = tokenize(rec);
  TokenStream m = tokenize(truth);
  std::size_t longest = std::max(r.size(), m.size());
  if (longest == 0) return 100.0;
  std::size_t ld = levenshtein_tokens(r, m);
  return 100.0 * (1.0 - static_cast<double>(ld) / static_cast<double>(longest));
}

double char_accuracy(const std::string& rec_text, const std::string& truth_text) {
  std::size_t longest = std::max(rec_text.size(), truth_text.size());
  if (longest == 0) return 100.0;
  std::size_t ld = levenshtein_str(rec_text, truth_text);
  return 100.0 * (1.0 - static_cast<double>(ld) / static_cast<double>(longest));
}

GroupEvaluation evaluate_group(const std::vector<ScoredRecommendation>& recs,
                               const std::vector<TruthEntry>& truth, int available_locations) {
  GroupEvaluation ev;
  ev.m = available_locations;
  ev.generated = static_cast<int>(recs.size());

  double at_min_sum = 0, at_max_sum = 0, ac_min_sum = 0, ac_max_sum = 0;
  for (const ScoredRecommendation& rec : recs) {
    RecommendationScore score;
    score.file = rec.file;
    score.method = rec.method;
    const TruthEntry* entry = nullptr;
    for (const TruthEntry& t : truth) {
      if (t.file == rec.file && (t.method.empty() || rec.method.empty() || t.method == rec.method)) {
        entry = &t;
        break;
      }
    }
    if (entry) {
      score.correct = true;
      ++ev.correct;
      if (entry->has_after && !rec.variants.empty()) {
        double at_min = 101, at_max = -1, ac_min = 101, ac_max = -1;
        for (const MethodBody& v : rec.variants) {
          double at = token_accuracy(v, entry->after);
          double ac = char_accuracy(v.source, entry->after.source);
          at_min = std::min(at_min, at);
          at_max = std::max(at_max, at);
          ac_min = std::min(ac_min, ac);
          ac_max = std::max(ac_max, ac);
        }
        score.at_min = at_min;
        score.at_max = at_max;
        score.ac_min = ac_min;
        score.ac_max = ac_max;
        at_min_sum += at_min;
        at_max_sum += at_max;
        ac_min_sum += ac_min;
        ac_max_sum += ac_max;
      }
    }
    ev.per_recommendation.push_back(std::move(score));
  }

  if (ev.correct > 0) {
    ev.at_min = at_min_sum / ev.correct;
    ev.at_max = at_max_sum / ev.correct;
    ev.ac_min = ac_min_sum / ev.correct;
    ev.ac_max = ac_max_sum / ev.correct;
  }
  if (ev.generated == 0) {
    ev.empty = true;  // reported as zero rather than a -100 sentinel
    ev.precision = 0;
  } else {
    ev.precision = 100.0 * ev.correct / ev.generated;
  }
  ev.recall = ev.m > 0 ? 100.0 * ev.correct / ev.m : 0;
  return ev;
}

}  // namespace ares
