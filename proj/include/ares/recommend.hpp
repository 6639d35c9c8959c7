// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ares/pattern.hpp"
#include "ares/search.hpp"

namespace ares {

// A transformed copy of one matched code location. Until expand_choices runs,
// region_template still carries Choice placeholder nodes and variants is
// empty; afterwards variants holds the max+1 copies (or exactly one when the
// pattern has no choice).
struct Recommendation {
  std::string file;
  MatchResult match;
  SourceSpan region_span;             // replaced character range of the location
  Tree region_template;               // Block of transformed statements
  std::vector<bool> template_intact;  // per template node: original span reusable
  std::vector<MethodBody> variants;
  std::vector<std::string> warnings;
  std::string location_source;
  int region_indent = 1;
};

Recommendation create_recommendation(const Pattern& p, const MatchResult& match,
                                     const MethodBody& location);

// max+1 rule: with up to `max` cases over all choices, variant n carries the
// n-th case of each choice (omitting a choice with fewer than n cases); the
// last variant carries no choice code at all.
Recommendation expand_choices(Recommendation rec, const Pattern& p);

inline Recommendation recommend(const Pattern& p, const MatchResult& match,
                                const MethodBody& location) {
  return expand_choices(create_recommendation(p, match, location), p);
}

}  // namespace ares
