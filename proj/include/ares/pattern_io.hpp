// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "ares/pattern.hpp"

namespace ares {

// Serializes a pattern to the textual .ares format (docs/pattern-format.md).
// read_pattern(write_pattern(p)) reproduces p structurally.
std::string write_pattern(const Pattern& p);

// Parses the textual format; throws PatternSyntaxError with a line number on
// malformed input, duplicate names, unbound uses, or boundary violations.
Pattern read_pattern(const std::string& text);

}  // namespace ares
