// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

// Test-only helpers: fixture loading, hand tree construction, random tree and
// method-body generators, and independent brute-force oracles. Everything in
// here stays independent of the implementation paths it checks.

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ares/ast.hpp"

namespace test_support {

inline std::string fixture_path(const std::string& rel) {
  return std::string(ARES_FIXTURE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open fixture: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ares::MethodBody parse_fixture(const std::string& rel) {
  return ares::parse(read_file(fixture_path(rel)));
}

// small hand-construction helper for expected trees
class TreeBuilder {
 public:
  int node(ares::NodeKind k, const std::string& label, int parent) {
    return tree.add(k, label, parent);
  }
  ares::Tree tree;
};

// Deterministic random statement-body source generator. Bodies stay within
// the Java subset and small enough for brute-force oracles.
class BodyGen {
 public:
  explicit BodyGen(std::uint64_t seed) : rng_(seed) {}

  std::string body(int max_stmts) {
    std::ostringstream out;
    out << "{\n";
    int n = pick(0, max_stmts);
    for (int i = 0; i < n; ++i) out << "    " << statement(2) << "\n";
    out << "}";
    return out.str();
  }

  std::string statement(int depth) {
    int choice = pick(0, depth > 0 ? 6 : 3);
    switch (choice) {
      case 0: return call_stmt();
      case 1: return decl_stmt();
      case 2: return assign_stmt();
      case 3: return "assert " + expr(1) + ";";
      case 4: return "if (" + expr(1) + ") { " + statement(depth - 1) + " }";
      case 5: return "while (" + expr(1) + ") { " + statement(depth - 1) + " }";
      default: return "return " + expr(1) + ";";
    }
  }

  std::string call_stmt() { return callee() + "(" + args() + ");"; }
  std::string decl_stmt() { return type() + " " + ident() + " = " + expr(1) + ";"; }
  std::string assign_stmt() { return ident() + " = " + expr(1) + ";"; }

  std::string expr(int depth) {
    int choice = pick(0, depth > 0 ? 5 : 3);
    switch (choice) {
      case 0: return ident();
      case 1: return std::to_string(pick(0, 99));
      case 2: return pick(0, 1) ? "true" : "false";
      case 3: return callee() + "(" + args() + ")";
      case 4: return expr(depth - 1) + " " + op() + " " + expr(depth - 1);
      default: return ident() + "." + ident();
    }
  }

  int pick(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::string ident() {
    static const char* names[] = {"a", "b", "data", "count", "value", "tmp", "buf", "flag"};
    return names[pick(0, 7)];
  }
  std::string callee() {
    static const char* names[] = {"run", "load", "store", "check", "emit", "log"};
    std::string c = names[pick(0, 5)];
    if (pick(0, 2) == 0) c = ident() + "." + c;
    return c;
  }
  std::string type() {
    static const char* names[] = {"int", "String", "boolean"};
    return names[pick(0, 2)];
  }
  std::string args() {
    int n = pick(0, 2);
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i) out += ", ";
      out += expr(0);
    }
    return out;
  }
  std::string op() {
    static const char* ops[] = {"+", "-", "*", "<", "==", "&&"};
    return ops[pick(0, 5)];
  }

  std::mt19937_64 rng_;
};

// random tree pair with substantial overlap: mutate a copy of a random body
struct TreePair {
  ares::MethodBody a, b;
};

inline TreePair random_related_pair(std::uint64_t seed) {
  BodyGen gen(seed);
  std::string base = gen.body(6);
  ares::MethodBody a = ares::parse(base);
  // re-generate a sibling body sharing the prefix, then mutate statements
  BodyGen gen2(seed ^ 0x9e3779b97f4a7c15ull);
  std::ostringstream out;
  out << "{\n";
  ares::MethodBody parsed = ares::parse(base);
  const auto& stmts = parsed.tree.at(parsed.tree.root()).children;
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    int roll = gen2.pick(0, 9);
    if (roll < 6) {
      const ares::SourceSpan& sp = parsed.tree.at(stmts[i]).span;
      out << "    " << base.substr(static_cast<std::size_t>(sp.begin),
                                   static_cast<std::size_t>(sp.end - sp.begin))
          << "\n";
    } else if (roll < 8) {
      out << "    " << gen2.statement(1) << "\n";  // replaced
    }  // else dropped
    if (gen2.pick(0, 9) == 0) out << "    " << gen2.statement(1) << "\n";  // inserted
  }
  out << "}";
  TreePair pair;
  pair.a = std::move(a);
  pair.b = ares::parse(out.str());
  return pair;
}

}  // namespace test_support
