// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ares {

// Raised by the lexer/parser on input outside the Java-subset grammar.
struct SyntaxError : std::runtime_error {
  int line;
  int col;
  SyntaxError(std::string msg, int line, int col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line), col(col) {}
};

// Raised by readPattern on malformed pattern files.
struct PatternSyntaxError : std::runtime_error {
  int line;
  PatternSyntaxError(std::string msg, int line)
      : std::runtime_error(msg + " at line " + std::to_string(line)), line(line) {}
};

// Raised by applyScript when an op references a missing node.
struct InvalidScript : std::runtime_error {
  explicit InvalidScript(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooFewExamples : std::runtime_error {
  explicit TooFewExamples(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ares
