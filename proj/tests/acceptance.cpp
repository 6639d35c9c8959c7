// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one check per shipping criterion, each printed as a
// PASS/FAIL line. The process exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ares/creation.hpp"
#include "ares/diff.hpp"
#include "ares/errors.hpp"
#include "ares/metrics.hpp"
#include "ares/ordering.hpp"
#include "ares/pattern_io.hpp"
#include "ares/pipeline.hpp"
#include "ares/recommend.hpp"
#include "ares/search.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ares;
using test_support::fixture_path;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& run) {
  std::string detail;
  auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("[%s] %2d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

Pattern learned(const std::string& group) {
  auto examples = load_examples(fixture_path("groups/" + group));
  LearnResult lr = learn_pattern(examples);
  if (!lr.pattern) throw std::runtime_error("learning aborted: " + lr.abort_reason);
  return *lr.pattern;
}

bool token_equal(const MethodBody& a, const MethodBody& b) {
  return tokenize(a).same_lexemes(tokenize(b));
}

}  // namespace

int main() {
  // 1. moved-statement group end to end
  criterion(1, "moved-statement group end-to-end matches the expected recommendation, < 1 s",
            [](std::string& detail) {
              auto t0 = Clock::now();
              Pattern p = learned("move_guard");
              MethodBody loc = test_support::parse_fixture("corpus/move_guard/location.java");
              SearchOptions opts;
              auto ms = search_codebase(p, {{"location.java", loc}}, opts);
              if (ms.size() != 1) {
                detail = "expected one match";
                return false;
              }
              Recommendation rec = recommend(p, ms[0], loc);
              double secs = std::chrono::duration<double>(Clock::now() - t0).count();
              MethodBody expected = test_support::parse_fixture("golden/move_guard_expected.java");
              if (rec.variants.size() != 1 || !token_equal(rec.variants[0], expected)) {
                detail = "recommendation differs from the golden body";
                return false;
              }
              if (secs >= 1.0) {
                detail = "took " + std::to_string(secs) + "s";
                return false;
              }
              return true;
            });

  // 2. golden pattern learned from the loop-rewrite group
  criterion(2, "loop-rewrite pattern: structure and checked-in golden .ares file",
            [](std::string& detail) {
              auto examples = load_examples(fixture_path("groups/loop_rewrite"));
              CreateResult res = create_pattern(examples[0], examples[1]);
              if (!res.pattern) {
                detail = "pattern creation aborted";
                return false;
              }
              const Pattern& p = *res.pattern;
              if (p.match_identifiers != std::vector<std::string>{"k"}) {
                detail = "matchIdentifiers != [k]";
                return false;
              }
              int wild_stmt = 0, wild_expr = 0, choice_cases = -1;
              bool anchor_ok = false;
              for (int n : p.original.preorder()) {
                if (p.original.at(n).kind == NodeKind::WildcardStmt) ++wild_stmt;
                if (p.original.at(n).kind == NodeKind::WildcardExpr) {
                  ++wild_expr;
                  anchor_ok = p.original.at(n).anchor_lexeme == "verbose" &&
                              p.original.at(n).anchor_ordinal == 1;
                }
              }
              bool use_in_loop = false;
              for (int n : p.modified.preorder()) {
                if (p.modified.at(n).kind == NodeKind::Choice)
                  choice_cases = static_cast<int>(p.modified.at(n).children.size());
                if (p.modified.at(n).kind == NodeKind::UseStmt) {
                  int blk = p.modified.at(n).parent;
                  if (blk >= 0 && p.modified.at(blk).parent >= 0 &&
                      p.modified.at(p.modified.at(blk).parent).kind == NodeKind::For)
                    use_in_loop = true;  // the movement use sits inside the for
                }
              }
              if (wild_expr != 1 || !anchor_ok) {
                detail = "expr wildcard/anchor wrong";
                return false;
              }
              if (wild_stmt != 2) {
                detail = "stmt wildcard count " + std::to_string(wild_stmt);
                return false;
              }
              if (!use_in_loop) {
                detail = "movement use not inside the loop";
                return false;
              }
              if (choice_cases != 2) {
                detail = "choice cases " + std::to_string(choice_cases);
                return false;
              }
              std::string golden =
                  test_support::read_file(fixture_path("golden/loop_rewrite.ares"));
              if (write_pattern(p) != golden) {
                detail = "golden .ares differs";
                return false;
              }
              Pattern reread = read_pattern(golden);
              return structurally_equal(p.original, reread.original) &&
                     structurally_equal(p.modified, reread.modified);
            });

  // 3. preservation at the planted location
  criterion(3, "preservation: c and 99 survive, while rewritten to for, token-exact",
            [](std::string& detail) {
              Pattern p = learned("loop_rewrite");
              MethodBody loc = test_support::parse_fixture("corpus/loop_rewrite/location1.java");
              SearchOptions opts;
              auto ms = search_codebase(p, {{"location1.java", loc}}, opts);
              if (ms.size() != 1 || ms[0].bindings.at("k") != "c") {
                detail = "match or binding wrong";
                return false;
              }
              Recommendation rec = recommend(p, ms[0], loc);
              MethodBody expected = test_support::parse_fixture("golden/loop_rewrite_expected.java");
              if (rec.variants.empty() || !token_equal(rec.variants[0], expected)) {
                detail = "variant 1 does not match the golden body";
                return false;
              }
              const std::string& out = rec.variants[0].source;
              return out.find("c < 99") != std::string::npos &&
                     out.find("for (int c = 0;") != std::string::npos;
            });

  // 4. input order determination
  criterion(4, "distance matrix: column sums 15/8/9/10, initial pair (c2, c3)", [](std::string& detail) {
    auto examples = load_examples(fixture_path("distance_matrix"));
    DistanceMatrix m = build_distance_matrix(examples);
    auto sums = m.column_sums();
    if (!(sums[0] == 15 && sums[1] == 8 && sums[2] == 9 && sums[3] == 10)) {
      std::ostringstream ss;
      ss << "sums " << sums[0] << "/" << sums[1] << "/" << sums[2] << "/" << sums[3];
      detail = ss.str();
      return false;
    }
    return select_initial_pair(m) == std::pair<int, int>(1, 2);
  });

  // 5. choice expansion law
  criterion(5, "Choice expansion: max+1 copies with the dictated contents", [](std::string& detail) {
    Pattern p = learned("loop_rewrite");
    MethodBody loc = test_support::parse_fixture("corpus/loop_rewrite/location3.java");
    SearchOptions opts;
    auto ms = search_codebase(p, {{"l", loc}}, opts);
    if (ms.size() != 1) {
      detail = "no match";
      return false;
    }
    Recommendation rec = recommend(p, ms[0], loc);
    if (rec.variants.size() != 3) {
      detail = "expected 3 variants, got " + std::to_string(rec.variants.size());
      return false;
    }
    // property over random case counts up to 5
    test_support::BodyGen gen(424242);
    for (int round = 0; round < 40; ++round) {
      int cases1 = gen.pick(1, 5);
      int cases2 = gen.pick(1, 5);
      std::ostringstream ptext;
      ptext << "//# match (original) {\nstart();\nend();\n//# } modified {\nstart();\n";
      for (int which = 0; which < 2; ++which) {
        int cases = which == 0 ? cases1 : cases2;
        const char* stem = which == 0 ? "alpha" : "beta";
        ptext << "//# choice {\n";
        for (int c = 1; c <= cases; ++c) ptext << "//# case {\n" << stem << c << "();\n//# }\n";
        ptext << "//# }\n";
      }
      ptext << "end();\n//# }\n";
      Pattern rp = read_pattern(ptext.str());
      MethodBody body = parse("{ start(); end(); }");
      auto rm = search_codebase(rp, {{"b", body}}, opts);
      if (rm.size() != 1) {
        detail = "property: no match";
        return false;
      }
      Recommendation rr = recommend(rp, rm[0], body);
      int max_cases = std::max(cases1, cases2);
      if (static_cast<int>(rr.variants.size()) != max_cases + 1) {
        detail = "property: wrong variant count";
        return false;
      }
      for (int v = 1; v <= max_cases + 1; ++v) {
        std::string expected = "{ start(); ";
        if (v <= cases1) expected += "alpha" + std::to_string(v) + "(); ";
        if (v <= cases2) expected += "beta" + std::to_string(v) + "(); ";
        expected += "end(); }";
        if (!token_equal(rr.variants[static_cast<std::size_t>(v - 1)], parse(expected))) {
          detail = "property: variant " + std::to_string(v) + " content";
          return false;
        }
      }
    }
    return true;
  });

  // 6. self-application across all bundled groups
  criterion(6, "Self-application: A_T = 100 on training data for every bundled group",
            [](std::string& detail) {
              const char* groups[] = {"move_guard", "loop_rewrite",        "guard_null", "api_migrate",
                                      "try_wrap",  "return_early", "swap_order", "accumulate",
                                      "expr_args", "delete_deprecated", "bool_guard", "loop_hide"};
              int group_count = 0;
              for (const char* name : groups) {
                ++group_count;
                auto examples = load_examples(fixture_path(std::string("groups/") + name));
                LearnResult lr = learn_pattern(examples);
                if (!lr.pattern) {
                  detail = std::string(name) + ": aborted";
                  return false;
                }
                for (const ChangeExample& ex : examples) {
                  SearchOptions opts;
                  auto ms = search_codebase(*lr.pattern, {{ex.id, ex.original}}, opts);
                  if (ms.empty()) {
                    detail = std::string(name) + "/" + ex.id + ": no match";
                    return false;
                  }
                  Recommendation rec = recommend(*lr.pattern, ms[0], ex.original);
                  bool reproduced = false;
                  for (const MethodBody& v : rec.variants) {
                    if (token_equal(v, ex.modified)) {
                      reproduced = true;
                      break;
                    }
                  }
                  if (!reproduced) {
                    detail = std::string(name) + "/" + ex.id + ": A_T < 100";
                    return false;
                  }
                }
              }
              if (group_count < 10) {
                detail = "fewer than 10 groups bundled";
                return false;
              }
              return true;
            });

  // 7. search vs brute-force segmentation oracle
  criterion(7, "Search oracle equivalence on 500 random (pattern, body) pairs, < 30 s",
            [](std::string& detail) {
              auto t0 = Clock::now();
              int disagreements = 0, valid = 0;
              for (std::uint64_t seed = 1000; seed < 1500; ++seed) {
                test_support::BodyGen gen(seed);
                int n = gen.pick(1, 8);
                std::vector<std::string> stmts;
                for (int i = 0; i < n; ++i) stmts.push_back(gen.statement(1));
                std::string body_src = "{\n";
                for (const auto& s : stmts) body_src += "    " + s + "\n";
                body_src += "}";
                MethodBody body = parse(body_src);

                int lo = gen.pick(0, n - 1);
                int hi = gen.pick(lo, n - 1);
                std::vector<std::string> pat;
                for (int i = lo; i <= hi; ++i) {
                  std::string s = stmts[static_cast<std::size_t>(i)];
                  if (gen.pick(0, 4) == 0) s = gen.statement(1);
                  pat.push_back(s);
                }
                std::string rendered;
                std::vector<test_oracles::OracleItem> items;
                int wild = 0, max_wild = gen.pick(0, 2);
                for (std::size_t i = 0; i < pat.size(); ++i) {
                  bool interior = i > 0 && i + 1 < pat.size();
                  if (interior && wild < max_wild && gen.pick(0, 2) == 0) {
                    rendered += "//# wildcard stmt A" + std::to_string(wild++) + ";\n";
                    items.push_back({true, {}});
                    continue;
                  }
                  rendered += pat[i] + "\n";
                  MethodBody one = parse("{ " + pat[i] + " }");
                  test_oracles::OracleItem item;
                  item.wildcard = false;
                  item.stmt = one.tree.copy_subtree(one.tree.at(one.tree.root()).children[0]);
                  items.push_back(std::move(item));
                }
                if (items.empty() || items.front().wildcard || items.back().wildcard) continue;
                Pattern p;
                try {
                  p = read_pattern("//# match (original) {\n" + rendered + "//# } modified {\n" +
                                   rendered + "//# }\n");
                } catch (const PatternSyntaxError&) {
                  continue;
                }
                ++valid;
                SearchOptions opts;
                bool found = !search_codebase(p, {{"b", body}}, opts).empty();
                bool oracle = test_oracles::oracle_matches_anywhere(items, body.tree, {});
                if (found != oracle) ++disagreements;
              }
              double secs = std::chrono::duration<double>(Clock::now() - t0).count();
              if (disagreements > 0) {
                detail = std::to_string(disagreements) + " disagreements";
                return false;
              }
              if (secs >= 30.0) {
                detail = "took " + std::to_string(secs) + "s";
                return false;
              }
              detail = std::to_string(valid) + " valid pairs";
              return true;
            });

  // 8. edit-script validity
  criterion(8, "applyScript(a, diff(a,b)) == b on 1000 random tree pairs, < 10 s",
            [](std::string& detail) {
              auto t0 = Clock::now();
              for (std::uint64_t seed = 0; seed < 800; ++seed) {
                auto pair = test_support::random_related_pair(seed);
                EditScript s = diff(pair.a.tree, pair.b.tree);
                if (!structurally_equal(apply_script(pair.a.tree, s), pair.b.tree)) {
                  detail = "related pair seed " + std::to_string(seed);
                  return false;
                }
              }
              test_support::BodyGen gen(31337);
              for (int i = 0; i < 200; ++i) {
                MethodBody a = parse(gen.body(6));
                MethodBody b = parse(gen.body(6));
                EditScript s = diff(a.tree, b.tree);
                if (!structurally_equal(apply_script(a.tree, s), b.tree)) {
                  detail = "unrelated pair " + std::to_string(i);
                  return false;
                }
              }
              double secs = std::chrono::duration<double>(Clock::now() - t0).count();
              if (secs >= 10.0) {
                detail = "took " + std::to_string(secs) + "s";
                return false;
              }
              return true;
            });

  // 9. metric correctness
  criterion(9, "Levenshtein oracle (all pairs len <= 6 over 3 symbols), A_T/A_C fixtures",
            [](std::string& detail) {
              std::vector<std::string> all;
              all.emplace_back();
              std::size_t begin = 0;
              for (int len = 1; len <= 6; ++len) {
                std::size_t end = all.size();
                for (std::size_t i = begin; i < end; ++i)
                  for (char c : {'a', 'b', 'c'}) all.push_back(all[i] + c);
                begin = end;
              }
              for (const auto& a : all) {
                for (const auto& b : all) {
                  if (levenshtein_str(a, b) != test_oracles::lev_oracle(a, b)) {
                    detail = "mismatch on (" + a + ", " + b + ")";
                    return false;
                  }
                }
              }
              MethodBody truth = parse("{ a(); b(); }");
              MethodBody rec = parse("{ a(); c(); }");
              if (tokenize(truth).size() != 10 || token_accuracy(rec, truth) != 90.0) {
                detail = "A_T fixture";
                return false;
              }
              MethodBody comment_only = parse("{ a(); b(); // note\n }");
              if (token_accuracy(truth, comment_only) != 100.0) {
                detail = "comment invariance";
                return false;
              }
              std::string t(100, 'x');
              std::string r = t;
              for (int i = 0; i < 5; ++i) r[static_cast<std::size_t>(3 + 9 * i)] = 'y';
              if (char_accuracy(r, t) != 95.0) {
                detail = "A_C fixture";
                return false;
              }
              return true;
            });

  // 10. precision/recall arithmetic
  criterion(10, "evaluateGroup reproduces P=100, R=50 for (generated=2, correct=2, m=4)",
            [](std::string& detail) {
              auto mk = [](const std::string& f, const char* src) {
                ScoredRecommendation r;
                r.file = f;
                r.method = "m1";
                r.variants.push_back(parse(src));
                return r;
              };
              auto tr = [](const std::string& f, const char* src) {
                TruthEntry t;
                t.file = f;
                t.method = "m1";
                t.after = parse(src);
                t.has_after = true;
                return t;
              };
              GroupEvaluation ev = evaluate_group(
                  {mk("f1", "{ a(); }"), mk("f2", "{ b(); }")},
                  {tr("f1", "{ a(); }"), tr("f2", "{ b(); }"), tr("f3", "{ c(); }"),
                   tr("f4", "{ d(); }")},
                  4);
              if (ev.precision != 100.0 || ev.recall != 50.0) {
                detail = "P=" + std::to_string(ev.precision) + " R=" + std::to_string(ev.recall);
                return false;
              }
              return true;
            });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              failures);
  return failures;
}
