// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ares/errors.hpp"
#include "ares/pattern_io.hpp"
#include "support.hpp"

using namespace ares;

namespace {

bool patterns_equal(const Pattern& a, const Pattern& b) {
  return structurally_equal(a.original, b.original) &&
         structurally_equal(a.modified, b.modified) &&
         a.match_identifiers == b.match_identifiers;
}

}  // namespace

TEST_CASE("plain pattern with no annotations round-trips") {
  const char* text =
      "//# match (original) {\n"
      "run(a);\n"
      "stop();\n"
      "//# } modified {\n"
      "halt(a);\n"
      "//# }\n";
  Pattern p = read_pattern(text);
  CHECK(p.match_identifiers.empty());
  CHECK(write_pattern(p) == text);
  CHECK(patterns_equal(read_pattern(write_pattern(p)), p));
}

TEST_CASE("golden pattern file parses and round-trips byte-exactly") {
  std::string text = test_support::read_file(test_support::fixture_path("golden/loop_rewrite.ares"));
  Pattern p = read_pattern(text);
  CHECK(p.match_identifiers == std::vector<std::string>{"k"});
  CHECK(write_pattern(p) == text);

  // annotation inventory of the golden pattern
  int wild_stmt = 0, wild_expr = 0, use_stmt = 0, use_expr = 0, choice = 0;
  for (int n : p.original.preorder()) {
    if (p.original.at(n).kind == NodeKind::WildcardStmt) ++wild_stmt;
    if (p.original.at(n).kind == NodeKind::WildcardExpr) {
      ++wild_expr;
      CHECK(p.original.at(n).anchor_lexeme == "verbose");
      CHECK(p.original.at(n).anchor_ordinal == 1);
    }
  }
  for (int n : p.modified.preorder()) {
    NodeKind k = p.modified.at(n).kind;
    if (k == NodeKind::UseStmt) ++use_stmt;
    if (k == NodeKind::UseExpr) ++use_expr;
    if (k == NodeKind::Choice) {
      ++choice;
      CHECK(p.modified.at(n).children.size() == 2);
    }
  }
  CHECK(wild_stmt == 2);
  CHECK(wild_expr == 1);
  CHECK(use_stmt == 2);
  CHECK(use_expr == 1);
  CHECK(choice == 1);
}

TEST_CASE("unbound use is rejected") {
  const char* text =
      "//# match (original) {\n"
      "run(a);\n"
      "//# } modified {\n"
      "//# use A7;\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(text), PatternSyntaxError);
}

TEST_CASE("duplicate wildcard names are rejected") {
  const char* text =
      "//# match (original) {\n"
      "run(a);\n"
      "//# wildcard stmt A0;\n"
      "//# wildcard stmt A0;\n"
      "stop();\n"
      "//# } modified {\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(text), PatternSyntaxError);
}

TEST_CASE("leading or trailing stmt wildcards are rejected") {
  const char* leading =
      "//# match (original) {\n"
      "//# wildcard stmt A0;\n"
      "run(a);\n"
      "//# } modified {\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(leading), PatternSyntaxError);
  const char* trailing =
      "//# match (original) {\n"
      "run(a);\n"
      "//# wildcard stmt A0;\n"
      "//# } modified {\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(trailing), PatternSyntaxError);
}

TEST_CASE("unresolvable expr anchor is rejected") {
  const char* text =
      "//# match (original) {\n"
      "//# wildcard expr A0 (missing, 1);\n"
      "run(a);\n"
      "//# } modified {\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(text), PatternSyntaxError);
}

TEST_CASE("malformed pattern code reports a location") {
  const char* text =
      "//# match (original) {\n"
      "run(a)\n"
      "//# } modified {\n"
      "run(a);\n"
      "//# }\n";
  CHECK_THROWS_AS(read_pattern(text), PatternSyntaxError);
}
