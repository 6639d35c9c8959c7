// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ares/token.hpp"

namespace ares {

// Node kinds of the Java-subset AST plus the annotation kinds that only
// appear inside patterns (never produced by the source parser).
enum class NodeKind : std::uint8_t {
  Block, Decl, Assign, If, While, For, Try, Catch, Finally,
  Return, Assert, Throw,
  Call, FieldAccess, Binary, Unary,
  Identifier, IntLit, BoolLit, StringLit, TypeName,
  Empty,  // absent for-init/cond/update or else-branch slot
  // pattern-only kinds
  WildcardStmt, WildcardExpr, UseStmt, UseExpr, Choice, ChoiceCase,
  Hole,   // stand-in for annotations when a pattern participates in a diff
};

const char* kind_name(NodeKind k);
bool is_leaf_kind(NodeKind k);
bool is_annotation_kind(NodeKind k);

struct SourceSpan {
  int begin = -1;
  int end = -1;  // exclusive
  bool valid() const { return begin >= 0 && end >= begin; }
};

struct Node {
  NodeKind kind;
  std::string label;        // identifier/literal lexeme, operator, member or annotation name
  int parent = -1;
  std::vector<int> children;
  SourceSpan span;
  // anchor of expr wildcards/uses: (lexeme, 1-based occurrence) in the following statement
  std::string anchor_lexeme;
  int anchor_ordinal = 0;
};

// Flat arena tree; node ids are indices, root is node 0. Trees are treated
// as immutable after construction; transformations build new trees.
struct Tree {
  std::vector<Node> nodes;

  int root() const { return nodes.empty() ? -1 : 0; }
  bool empty() const { return nodes.empty(); }
  int size() const { return static_cast<int>(nodes.size()); }
  const Node& at(int id) const { return nodes[static_cast<std::size_t>(id)]; }
  Node& at(int id) { return nodes[static_cast<std::size_t>(id)]; }

  int add(NodeKind kind, std::string label = "", int parent = -1);
  void attach(int child, int parent);  // append child to parent's list

  std::vector<int> preorder(int from = -1) const;
  int subtree_size(int id) const;
  // id of the last node of the subtree in preorder
  int last_preorder(int id) const;

  bool is_statement(int id) const;   // direct member of a Block/ChoiceCase
  int statement_of(int id) const;    // nearest statement ancestor-or-self, -1 if none
  int enclosing_block(int id) const; // nearest strict ancestor of kind Block, -1 if none
  bool is_ancestor(int anc, int id) const;

  std::vector<std::uint64_t> structural_hashes() const;

  // deep copy of the subtree rooted at id into a fresh tree (fresh ids, spans kept)
  Tree copy_subtree(int id) const;
  // copy subtree of `src` under `parent` in this tree, returns new root id
  int graft(const Tree& src, int src_id, int parent);
};

bool structurally_equal(const Tree& a, int ida, const Tree& b, int idb);
inline bool structurally_equal(const Tree& a, const Tree& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return structurally_equal(a, a.root(), b, b.root());
}

// A parsed method body: a Block root plus the verbatim source characters.
struct MethodBody {
  Tree tree;
  std::string source;
};

MethodBody parse(const std::string& source);
std::string pretty_print(const Tree& tree);
inline std::string pretty_print(const MethodBody& body) { return pretty_print(body.tree); }

// Pretty-print that substitutes the original source slice for subtrees whose
// span is marked intact (used by recommendation output assembly).
std::string print_with_spans(const Tree& tree, const std::string& source,
                             const std::vector<bool>& span_intact);

// Statements of a Block node without the surrounding braces (pattern files).
std::string print_statement_list(const Tree& tree, int block, int depth);
std::string print_statement_list(const Tree& tree, int block, int depth,
                                 const std::string& source, const std::vector<bool>& span_intact);

std::vector<int> preorder_nodes(const Tree& tree);
TokenStream tokenize(const MethodBody& body);

// First labeled descendant in preorder ("first terminal"); -1 if none.
int first_terminal(const Tree& tree, int id);

}  // namespace ares
