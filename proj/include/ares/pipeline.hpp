// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ares/creation.hpp"
#include "ares/ordering.hpp"
#include "ares/pattern.hpp"

namespace ares {

struct LearnResult {
  std::optional<Pattern> pattern;
  std::vector<std::string> order;  // example ids in processing order
  std::string abort_reason;
  std::vector<std::string> warnings;
};

// Input order determination plus the create/refine loop: initial pair by
// lowest distance-matrix column sums, then repeatedly the example closest to
// the working pattern.
LearnResult learn_pattern(const std::vector<ChangeExample>& examples, const RuleSet& rules = {},
                          int max_examples = 0 /* 0 = all */);

// <dir>/<id>/before.java + after.java, ordered by id
std::vector<ChangeExample> load_examples(const std::string& dir);

// every .java file under dir (recursive), keyed by relative path, ordered
std::vector<std::pair<std::string, MethodBody>> load_codebase(const std::string& dir);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ares
