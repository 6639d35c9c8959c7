// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/pattern_io.hpp"

#include <functional>
#include <sstream>
#include <vector>

#include "ares/errors.hpp"

namespace ares {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

struct AnnDesc {
  enum Kind { WildStmt, WildExpr, UseStmt, UseExpr, ChoiceOpen, CaseOpen, GroupClose } kind;
  std::string name;
  std::string anchor_lexeme;
  int anchor_ordinal = 0;
  int line = 0;
};

// `//# name (lexeme, ordinal);` suffix parser for expr annotations
void parse_anchor(const std::string& rest, AnnDesc& d, int line) {
  std::size_t open = rest.find('(');
  std::size_t comma = rest.find(',', open);
  std::size_t close = rest.find(')', comma == std::string::npos ? open : comma);
  if (open == std::string::npos || comma == std::string::npos || close == std::string::npos)
    throw PatternSyntaxError("malformed anchor, expected (LEXEME, OCCURRENCE)", line);
  d.name = trim(rest.substr(0, open));
  d.anchor_lexeme = trim(rest.substr(open + 1, comma - open - 1));
  std::string ord = trim(rest.substr(comma + 1, close - comma - 1));
  try {
    d.anchor_ordinal = std::stoi(ord);
  } catch (...) {
    throw PatternSyntaxError("anchor occurrence must be a number", line);
  }
  if (d.name.empty() || d.anchor_lexeme.empty())
    throw PatternSyntaxError("anchor needs a name and a lexeme", line);
}

AnnDesc parse_annotation_line(const std::string& body, int line) {
  AnnDesc d;
  d.line = line;
  std::string s = trim(body);
  auto strip_semi = [&](std::string v) {
    v = trim(v);
    if (!v.empty() && v.back() == ';') v.pop_back();
    return trim(v);
  };
  if (starts_with(s, "wildcard stmt ")) {
    d.kind = AnnDesc::WildStmt;
    d.name = strip_semi(s.substr(14));
    if (d.name.empty()) throw PatternSyntaxError("wildcard needs a name", line);
    return d;
  }
  if (starts_with(s, "wildcard expr ")) {
    d.kind = AnnDesc::WildExpr;
    parse_anchor(strip_semi(s.substr(14)), d, line);
    return d;
  }
  if (starts_with(s, "use expr ")) {
    d.kind = AnnDesc::UseExpr;
    parse_anchor(strip_semi(s.substr(9)), d, line);
    return d;
  }
  if (starts_with(s, "use ")) {
    d.kind = AnnDesc::UseStmt;
    d.name = strip_semi(s.substr(4));
    if (d.name.empty()) throw PatternSyntaxError("use needs a name", line);
    return d;
  }
  if (s == "choice {") {
    d.kind = AnnDesc::ChoiceOpen;
    return d;
  }
  if (s == "case {") {
    d.kind = AnnDesc::CaseOpen;
    return d;
  }
  if (s == "}") {
    d.kind = AnnDesc::GroupClose;
    return d;
  }
  throw PatternSyntaxError("unknown annotation '" + s + "'", line);
}

// One part (original or modified): lines are either annotation lines or code.
// Annotation lines are replaced by sentinel calls so the code parser runs
// unchanged, then sentinels are rewritten into annotation nodes.
Tree parse_part(const std::vector<std::pair<int, std::string>>& lines) {
  std::vector<AnnDesc> anns;
  std::ostringstream text;
  text << "{\n";
  for (const auto& [lineno, raw] : lines) {
    std::string t = trim(raw);
    if (starts_with(t, "//#")) {
      AnnDesc d = parse_annotation_line(t.substr(3), lineno);
      anns.push_back(d);
      text << "__ares_ann_" << (anns.size() - 1) << "();\n";
    } else {
      text << raw << "\n";
    }
  }
  text << "}";

  MethodBody parsed;
  try {
    parsed = parse(text.str());
  } catch (const SyntaxError& e) {
    throw PatternSyntaxError(std::string("pattern code does not parse: ") + e.what(), e.line);
  }

  // rebuild the tree, folding sentinel statements into annotation nodes
  Tree out;
  const Tree& in = parsed.tree;
  std::function<void(int, int)> copy_children;
  auto sentinel_index = [&](int id) -> int {
    const Node& n = in.at(id);
    if (n.kind != NodeKind::Call || n.children.size() != 1) return -1;
    const Node& callee = in.at(n.children[0]);
    if (callee.kind != NodeKind::Identifier) return -1;
    if (!starts_with(callee.label, "__ares_ann_")) return -1;
    return std::stoi(callee.label.substr(11));
  };
  copy_children = [&](int src_parent, int dst_parent) {
    // stack of open choice/case groups inside this child list
    std::vector<int> group_stack;  // node ids in `out` (Choice or ChoiceCase)
    auto current_parent = [&]() { return group_stack.empty() ? dst_parent : group_stack.back(); };
    for (int c : in.at(src_parent).children) {
      int ann = sentinel_index(c);
      if (ann < 0) {
        const Node& n = in.at(c);
        int nid = out.add(n.kind, n.label, current_parent());
        out.at(nid).span = n.span;
        copy_children(c, nid);
        continue;
      }
      const AnnDesc& d = anns[static_cast<std::size_t>(ann)];
      switch (d.kind) {
        case AnnDesc::WildStmt:
          out.add(NodeKind::WildcardStmt, d.name, current_parent());
          break;
        case AnnDesc::UseStmt:
          out.add(NodeKind::UseStmt, d.name, current_parent());
          break;
        case AnnDesc::WildExpr:
        case AnnDesc::UseExpr: {
          int nid = out.add(
              d.kind == AnnDesc::WildExpr ? NodeKind::WildcardExpr : NodeKind::UseExpr, d.name,
              current_parent());
          out.at(nid).anchor_lexeme = d.anchor_lexeme;
          out.at(nid).anchor_ordinal = d.anchor_ordinal;
          break;
        }
        case AnnDesc::ChoiceOpen: {
          int nid = out.add(NodeKind::Choice, "", current_parent());
          group_stack.push_back(nid);
          break;
        }
        case AnnDesc::CaseOpen: {
          if (group_stack.empty() || out.at(group_stack.back()).kind != NodeKind::Choice)
            throw PatternSyntaxError("case outside of a choice", d.line);
          int nid = out.add(NodeKind::ChoiceCase, "", group_stack.back());
          group_stack.push_back(nid);
          break;
        }
        case AnnDesc::GroupClose: {
          if (group_stack.empty()) throw PatternSyntaxError("unmatched //# }", d.line);
          group_stack.pop_back();
          break;
        }
      }
    }
    if (!group_stack.empty())
      throw PatternSyntaxError("unterminated choice/case group", 0);
  };
  int root = out.add(NodeKind::Block, "", -1);
  copy_children(in.root(), root);
  return out;
}

}  // namespace

std::string write_pattern(const Pattern& p) {
  std::ostringstream out;
  out << "//# match (original";
  if (!p.match_identifiers.empty()) {
    out << ": ";
    for (std::size_t i = 0; i < p.match_identifiers.size(); ++i) {
      if (i) out << ", ";
      out << p.match_identifiers[i];
    }
  }
  out << ") {\n";
  out << print_statement_list(p.original, p.original.root(), 0);
  out << "//# } modified {\n";
  out << print_statement_list(p.modified, p.modified.root(), 0);
  out << "//# }\n";
  return out.str();
}

Pattern read_pattern(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  Pattern p;
  int state = 0;  // 0: before match, 1: original, 2: modified, 3: done
  int depth = 0;  // open //# choice { / //# case { groups within a part
  std::vector<std::pair<int, std::string>> original_lines, modified_lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    int lineno = static_cast<int>(i) + 1;
    std::string t = trim(lines[i]);
    if (state == 0) {
      if (t.empty()) continue;
      if (!starts_with(t, "//# match (original"))
        throw PatternSyntaxError("pattern must start with //# match (original...) {", lineno);
      std::string rest = t.substr(19);
      std::size_t close = rest.find(')');
      if (close == std::string::npos || rest.substr(close).find('{') == std::string::npos)
        throw PatternSyntaxError("malformed match annotation", lineno);
      std::string ids = rest.substr(0, close);
      if (!ids.empty()) {
        if (ids[0] != ':') throw PatternSyntaxError("malformed identifier list", lineno);
        std::istringstream is(ids.substr(1));
        std::string id;
        while (std::getline(is, id, ',')) {
          id = trim(id);
          if (!id.empty()) p.match_identifiers.push_back(id);
        }
      }
      state = 1;
      continue;
    }
    if (starts_with(t, "//# choice {") || starts_with(t, "//# case {")) ++depth;
    if (depth == 0 && state == 1 && starts_with(t, "//# } modified {")) {
      state = 2;
      continue;
    }
    if (depth == 0 && state == 2 && t == "//# }") {
      state = 3;
      continue;
    }
    if (t == "//# }" && depth > 0) --depth;
    if (state == 1) original_lines.emplace_back(lineno, lines[i]);
    else if (state == 2) modified_lines.emplace_back(lineno, lines[i]);
    else if (state == 3 && !t.empty())
      throw PatternSyntaxError("content after pattern end", lineno);
  }
  if (state != 3) throw PatternSyntaxError("unterminated pattern", static_cast<int>(lines.size()));
  p.original = parse_part(original_lines);
  p.modified = parse_part(modified_lines);
  validate_pattern(p);
  return p;
}

}  // namespace ares
