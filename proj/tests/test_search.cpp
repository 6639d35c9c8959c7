// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "ares/errors.hpp"
#include "ares/pattern_io.hpp"
#include "ares/pipeline.hpp"
#include "ares/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ares;
using test_support::fixture_path;

namespace {

Pattern loop_rewrite_pattern() {
  auto examples = load_examples(fixture_path("groups/loop_rewrite"));
  LearnResult lr = learn_pattern(examples);
  REQUIRE(lr.pattern.has_value());
  return *lr.pattern;
}

}  // namespace

TEST_CASE("findStartNodes lists every node of the first pattern node's kind") {
  Pattern p = loop_rewrite_pattern();
  MethodBody loc = test_support::parse_fixture("corpus/loop_rewrite/location1.java");
  auto starts = find_start_nodes(loc, p);
  // the pattern starts with a call; location1 has five calls
  int calls = 0;
  for (int n : loc.tree.preorder())
    if (loc.tree.at(n).kind == NodeKind::Call) ++calls;
  CHECK(calls == 5);
  CHECK(static_cast<int>(starts.size()) == calls);

  // a body without any call offers no start nodes
  MethodBody no_calls = parse("{ int x = 1; }");
  CHECK(find_start_nodes(no_calls, p).empty());
}

TEST_CASE("pattern matches its own code with identity bindings") {
  Pattern p = loop_rewrite_pattern();
  // location3 is the pattern's concrete code with all wildcard regions empty
  MethodBody self = test_support::parse_fixture("corpus/loop_rewrite/location3.java");
  auto starts = find_start_nodes(self, p);
  REQUIRE(!starts.empty());
  auto m = search(starts.front(), self, p);
  REQUIRE(m.has_value());
  CHECK(m->bindings.at("k") == "k");
  CHECK(m->captures.at("A1").empty());
  CHECK(m->captures.at("A2").empty());
  CHECK(m->captures.at("A3").empty());
}

TEST_CASE("the planted loop-rewrite location matches with k bound to c") {
  Pattern p = loop_rewrite_pattern();
  MethodBody loc = test_support::parse_fixture("corpus/loop_rewrite/location1.java");
  SearchOptions opts;
  auto ms = search_codebase(p, {{"location1.java", loc}}, opts);
  REQUIRE(ms.size() == 1);
  const MatchResult& m = ms[0];
  CHECK(m.bindings.at("k") == "c");
  // init's arguments are bound to the expr wildcard's region
  REQUIRE(m.captures.at("A1").size() == 2);
  CHECK(loc.tree.at(m.captures.at("A1")[0]).label == "cfg");
  CHECK(loc.tree.at(m.captures.at("A1")[1]).label == "99");
  // the assert region captured two statements
  CHECK(m.captures.at("A2").size() == 2);
  // the post-loop statement captured by A3
  REQUIRE(m.captures.at("A3").size() == 1);
  CHECK(loc.tree.at(m.captures.at("A3")[0]).kind == NodeKind::Call);
}

TEST_CASE("boolean literals are strict, other literals are not") {
  auto examples = load_examples(fixture_path("groups/bool_guard"));
  LearnResult lr = learn_pattern(examples);
  REQUIRE(lr.pattern.has_value());
  const Pattern& p = *lr.pattern;

  MethodBody match_true = parse("{ cfg.set(debug, true); boot(svc); }");
  MethodBody match_false = parse("{ cfg.set(debug, false); boot(svc); }");
  SearchOptions opts;
  CHECK(search_codebase(p, {{"t", match_true}}, opts).size() == 1);
  CHECK(search_codebase(p, {{"f", match_false}}, opts).empty());

  // int literals never decide a match
  Pattern p3 = loop_rewrite_pattern();
  MethodBody other_int = parse(
      "{ init(); int total = 0; int q = 0; while (q < 7777) { total = total + q; q = q + 1; } "
      "foo.close(); }");
  CHECK(search_codebase(p3, {{"i", other_int}}, opts).size() == 1);
}

TEST_CASE("planted corpus yields exactly the three planted locations") {
  Pattern p = loop_rewrite_pattern();
  auto files = load_codebase(fixture_path("corpus/loop_rewrite"));
  REQUIRE(files.size() == 8);
  SearchOptions opts;
  auto ms = search_codebase(p, files, opts);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].file == "location1.java");
  CHECK(ms[1].file == "location2.java");
  CHECK(ms[2].file == "location3.java");
}

TEST_CASE("parallel and sequential search produce identical results") {
  Pattern p = loop_rewrite_pattern();
  auto files = load_codebase(fixture_path("corpus/loop_rewrite"));
  SearchOptions seq{1};
  SearchOptions par{4};
  auto a = search_codebase(p, files, seq);
  auto b = search_codebase(p, files, par);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].file == b[i].file);
    CHECK(a[i].start_node == b[i].start_node);
    CHECK(a[i].bindings == b[i].bindings);
  }
}

TEST_CASE("wildcard-suffix ambiguity backtracks to a full match") {
  // stmt wildcard followed by a statement that appears twice
  const char* text =
      "//# match (original) {\n"
      "begin();\n"
      "//# wildcard stmt A0;\n"
      "mark();\n"
      "tail();\n"
      "//# } modified {\n"
      "begin();\n"
      "//# }\n";
  Pattern p = read_pattern(text);
  MethodBody body = parse("{ begin(); mark(); other(); mark(); tail(); }");
  SearchOptions opts;
  auto ms = search_codebase(p, {{"b", body}}, opts);
  REQUIRE(ms.size() == 1);
  // the wildcard had to cover [mark(); other();] so the second mark() lines up
  CHECK(ms[0].captures.at("A0").size() == 2);
}

namespace {

// random (pattern, body) generation for the segmentation-oracle property
struct GeneratedPair {
  Pattern pattern;
  std::vector<test_oracles::OracleItem> items;
  MethodBody body;
};

GeneratedPair generate(std::uint64_t seed) {
  test_support::BodyGen gen(seed);
  GeneratedPair out;
  // base body of 1..8 statements
  int n = gen.pick(1, 8);
  std::vector<std::string> stmts;
  for (int i = 0; i < n; ++i) stmts.push_back(gen.statement(1));
  std::string body_src = "{\n";
  for (const auto& s : stmts) body_src += "    " + s + "\n";
  body_src += "}";
  out.body = parse(body_src);

  // pattern: pick a sub-range of the body's statements, mutate some, and
  // replace up to two interior runs with wildcards
  int lo = gen.pick(0, n - 1);
  int hi = gen.pick(lo, n - 1);
  std::vector<std::string> pat;
  for (int i = lo; i <= hi; ++i) {
    std::string s = stmts[static_cast<std::size_t>(i)];
    if (gen.pick(0, 4) == 0) s = gen.statement(1);  // mutation: maybe a non-match
    pat.push_back(s);
  }
  int wildcards = gen.pick(0, 2);
  std::ostringstream ptext;
  ptext << "//# match (original) {\n";
  bool emitted_concrete = false;
  std::string rendered;
  int wild_count = 0;
  for (std::size_t i = 0; i < pat.size(); ++i) {
    bool interior = i > 0 && i + 1 < pat.size();
    if (interior && wild_count < wildcards && gen.pick(0, 2) == 0) {
      rendered += "//# wildcard stmt A" + std::to_string(wild_count++) + ";\n";
      test_oracles::OracleItem item;
      item.wildcard = true;
      out.items.push_back(item);
      continue;  // the wildcard replaces this statement
    }
    rendered += pat[i] + "\n";
    emitted_concrete = true;
    test_oracles::OracleItem item;
    MethodBody one = parse("{ " + pat[i] + " }");
    item.stmt = one.tree.copy_subtree(one.tree.at(one.tree.root()).children[0]);
    out.items.push_back(item);
  }
  if (!emitted_concrete || out.items.empty()) {
    rendered += "noop();\n";
    test_oracles::OracleItem item;
    MethodBody one = parse("{ noop(); }");
    item.stmt = one.tree.copy_subtree(one.tree.at(one.tree.root()).children[0]);
    out.items.push_back(item);
  }
  ptext << rendered;
  ptext << "//# } modified {\n" << rendered << "//# }\n";
  out.pattern = read_pattern(ptext.str());
  return out;
}

}  // namespace

TEST_CASE("search agrees with the brute-force segmentation oracle") {
  int agreements = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    GeneratedPair g;
    try {
      g = generate(seed);
    } catch (const PatternSyntaxError&) {
      continue;  // generated pattern hit a boundary rule; skip
    }
    CAPTURE(seed);
    CAPTURE(g.body.source);
    SearchOptions opts;
    bool found = !search_codebase(g.pattern, {{"f", g.body}}, opts).empty();
    bool oracle = test_oracles::oracle_matches_anywhere(g.items, g.body.tree, {});
    CHECK(found == oracle);
    ++agreements;
  }
  CHECK(agreements > 400);  // most seeds produce valid patterns
}
