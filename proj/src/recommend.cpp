// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/recommend.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ares/diff.hpp"

namespace ares {

namespace {

struct RegionBuilder {
  const Pattern& p;
  const MatchResult& match;
  const Tree& code;
  const NodeMapping& rec_map;  // pattern original -> pattern modified
  Tree out;
  std::vector<int> code_of;  // out node -> code node (-1 if synthesized)
  std::vector<std::string>* warnings;
  std::map<int, std::string> anchored_uses;  // m-side anchored expr root -> use name

  int add(NodeKind kind, const std::string& label, int parent, int code_node) {
    int id = out.add(kind, label, parent);
    code_of.push_back(code_node);
    if (code_node >= 0) out.at(id).span = code.at(code_node).span;
    return id;
  }

  // verbatim copy of a captured code subtree
  int graft_code(int code_node, int parent) {
    const Node& n = code.at(code_node);
    int id = add(n.kind, n.label, parent, code_node);
    out.at(id).anchor_lexeme = n.anchor_lexeme;
    out.at(id).anchor_ordinal = n.anchor_ordinal;
    for (int c : n.children) graft_code(c, id);
    return id;
  }

  std::string substituted(const Tree& t, int node) const {
    const Node& n = t.at(node);
    if ((n.kind == NodeKind::Identifier || n.kind == NodeKind::FieldAccess) &&
        p.has_match_identifier(n.label)) {
      auto it = match.bindings.find(n.label);
      if (it != match.bindings.end()) return it->second;
    }
    return n.label;
  }

  // copy pattern-side content (inserted nodes, choice cases) with placeholder
  // substitution
  int graft_pattern(const Tree& t, int node, int parent) {
    const Node& n = t.at(node);
    int id = add(n.kind, substituted(t, node), parent, -1);
    out.at(id).anchor_lexeme = n.anchor_lexeme;
    out.at(id).anchor_ordinal = n.anchor_ordinal;
    for (int c : n.children) graft_pattern(t, c, id);
    return id;
  }

  void splice_use(const std::string& name, int parent, bool stmt_position) {
    auto it = match.captures.find(name);
    if (it == match.captures.end() || it->second.empty()) {
      if (warnings)
        warnings->push_back("use '" + name + "' had no captured code; spliced nothing");
      return;
    }
    (void)stmt_position;
    for (int root : it->second) graft_code(root, parent);
  }

  // builds one node of the modified part into `parent`
  void build(int dm, int parent) {
    const Node& n = p.modified.at(dm);
    switch (n.kind) {
      case NodeKind::UseStmt:
        splice_use(n.label, parent, true);
        return;
      case NodeKind::UseExpr:
        return;  // handled at its anchored expression
      case NodeKind::Choice: {
        // kept as a placeholder until expansion
        int id = add(NodeKind::Choice, "", parent, -1);
        for (int c : n.children) {
          int case_id = add(NodeKind::ChoiceCase, "", id, -1);
          for (int s : p.modified.at(c).children) graft_pattern(p.modified, s, case_id);
        }
        return;
      }
      default:
        break;
    }
    auto anchored = anchored_uses.find(dm);
    if (anchored != anchored_uses.end()) {
      splice_use(anchored->second, parent, false);
      return;
    }
    int so = rec_map.matched_dst(dm) ? rec_map.src_of(dm) : -1;
    int nc = -1;
    if (so >= 0) {
      auto it = match.pattern_to_code.find(so);
      if (it != match.pattern_to_code.end()) nc = it->second;
    }
    if (nc >= 0) {
      // preserved node: label and span come from the code location, unless
      // the pattern itself rewrites the label (an update in the rec script)
      std::string label = code.at(nc).label;
      if (p.original.at(so).label != n.label) label = substituted(p.modified, dm);
      int id = add(code.at(nc).kind, label, parent, nc);
      for (int c : n.children) build(c, id);
    } else {
      // synthesized from the pattern text
      int id = add(n.kind, substituted(p.modified, dm), parent, -1);
      for (int c : n.children) build(c, id);
    }
  }
};

int line_indent_of(const std::string& source, int offset) {
  int line_start = offset;
  while (line_start > 0 && source[static_cast<std::size_t>(line_start) - 1] != '\n') --line_start;
  int spaces = 0;
  for (int i = line_start; i < offset; ++i) {
    if (source[static_cast<std::size_t>(i)] == ' ') ++spaces;
    else return 0;  // non-blank prefix, treat as no indent
  }
  return spaces / 4;
}

// intact nodes reproduce their original source slice: the whole subtree below
// them came verbatim from consecutive location code
std::vector<bool> compute_intact(const Tree& t, const std::vector<int>& code_of,
                                 const Tree& code) {
  std::vector<bool> intact(static_cast<std::size_t>(t.size()), false);
  std::function<bool(int)> go = [&](int id) -> bool {
    bool ok = code_of[static_cast<std::size_t>(id)] >= 0 &&
              t.at(id).span.valid();
    int nc = code_of[static_cast<std::size_t>(id)];
    if (ok) {
      const auto& oc = code.at(nc).children;
      const auto& tc = t.at(id).children;
      if (oc.size() != tc.size()) ok = false;
      for (std::size_t i = 0; ok && i < tc.size(); ++i) {
        if (code_of[static_cast<std::size_t>(tc[i])] != oc[i]) ok = false;
      }
      if (ok && t.at(id).label != code.at(nc).label) ok = false;
    }
    bool children_ok = true;
    for (int c : t.at(id).children) {
      bool child_ok = go(c);
      children_ok = children_ok && child_ok;
    }
    intact[static_cast<std::size_t>(id)] = ok && children_ok;
    return ok && children_ok;
  };
  if (!t.empty()) go(t.root());
  return intact;
}

}  // namespace

Recommendation create_recommendation(const Pattern& p, const MatchResult& match,
                                     const MethodBody& location) {
  Recommendation rec;
  rec.file = match.file;
  rec.match = match;
  rec.location_source = location.source;

  NodeMapping rec_map = compute_mapping(p.original, p.modified);

  RegionBuilder builder{p, match, location.tree, rec_map, Tree{}, {}, &rec.warnings, {}};
  for (int n : p.modified.preorder()) {
    if (p.modified.at(n).kind == NodeKind::UseExpr) {
      int e = resolve_anchor(p.modified, n);
      if (e >= 0) builder.anchored_uses[e] = p.modified.at(n).label;
    }
  }
  int root = builder.add(NodeKind::Block, "", -1, -1);
  for (int stmt : p.modified.at(p.modified.root()).children) builder.build(stmt, root);

  rec.region_template = std::move(builder.out);
  rec.template_intact = compute_intact(rec.region_template, builder.code_of, location.tree);

  // replaced character range: from the start of the first matched statement
  // to the end of the last one
  if (match.region_begin >= 0 && match.region_end >= 0) {
    rec.region_span = {location.tree.at(match.region_begin).span.begin,
                       location.tree.at(match.region_end).span.end};
    rec.region_indent = line_indent_of(location.source, rec.region_span.begin);
  }
  return rec;
}

namespace {

// template copy with each Choice replaced by its n-th case (1-based); n
// beyond a choice's case count drops that choice
void instantiate(const Tree& tpl, const std::vector<bool>& intact, int node, Tree& out,
                 std::vector<bool>& out_intact, int parent, int variant) {
  const Node& n = tpl.at(node);
  if (n.kind == NodeKind::Choice) {
    if (variant >= 1 && variant <= static_cast<int>(n.children.size())) {
      int case_node = n.children[static_cast<std::size_t>(variant - 1)];
      for (int s : tpl.at(case_node).children)
        instantiate(tpl, intact, s, out, out_intact, parent, variant);
    }
    return;
  }
  int id = out.add(n.kind, n.label, parent);
  out.at(id).span = n.span;
  out.at(id).anchor_lexeme = n.anchor_lexeme;
  out.at(id).anchor_ordinal = n.anchor_ordinal;
  out_intact.push_back(intact[static_cast<std::size_t>(node)]);
  for (int c : n.children) instantiate(tpl, intact, c, out, out_intact, id, variant);
}

std::string strip_first_indent(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && text[i] == ' ') ++i;
  return text.substr(i);
}

}  // namespace

Recommendation expand_choices(Recommendation rec, const Pattern& p) {
  (void)p;
  int max_cases = 0;
  for (int n : rec.region_template.preorder()) {
    if (rec.region_template.at(n).kind == NodeKind::Choice)
      max_cases = std::max(max_cases,
                           static_cast<int>(rec.region_template.at(n).children.size()));
  }
  int variant_count = max_cases == 0 ? 1 : max_cases + 1;

  for (int v = 1; v <= variant_count; ++v) {
    Tree region;
    std::vector<bool> region_intact;
    int root = region.add(NodeKind::Block, "");
    region_intact.push_back(false);
    for (int s : rec.region_template.at(rec.region_template.root()).children)
      instantiate(rec.region_template, rec.template_intact, s, region, region_intact, root, v);

    // span-preserving printing keeps comments and layout of untouched code
    std::string printed =
        print_statement_list(region, root, rec.region_indent, rec.location_source, region_intact);
    // the first line's indentation is already part of the surrounding text
    if (!printed.empty() && printed.back() == '\n') printed.pop_back();
    std::string text;
    if (rec.region_span.valid()) {
      text = rec.location_source.substr(0, static_cast<std::size_t>(rec.region_span.begin)) +
             strip_first_indent(printed) +
             rec.location_source.substr(static_cast<std::size_t>(rec.region_span.end));
    } else {
      text = pretty_print(region);
    }
    MethodBody variant = parse(text);  // every variant must re-parse
    rec.variants.push_back(std::move(variant));
  }
  return rec;
}

}  // namespace ares
