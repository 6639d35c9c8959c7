// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "ares/ast.hpp"

namespace ares {

namespace {

int precedence(const Tree& t, int id) {
  const Node& n = t.at(id);
  switch (n.kind) {
    case NodeKind::Binary: {
      const std::string& op = n.label;
      if (op == "||") return 1;
      if (op == "&&") return 2;
      if (op == "==" || op == "!=") return 3;
      if (op == "<" || op == ">" || op == "<=" || op == ">=") return 4;
      if (op == "+" || op == "-") return 5;
      return 6;  // * / %
    }
    case NodeKind::Unary:
      return 7;
    default:
      return 8;
  }
}

class Printer {
 public:
  Printer(const Tree& tree, const std::string* source, const std::vector<bool>* intact)
      : t_(tree), source_(source), intact_(intact) {}

  std::string run() {
    if (t_.empty()) return "{\n}";
    stmt_block_body(t_.root(), 0, /*own_braces=*/true);
    return out_.str();
  }

  std::string statements_of(int block, int depth) {
    for (int c : t_.at(block).children) statement(c, depth);
    return out_.str();
  }

 private:
  const Tree& t_;
  const std::string* source_;
  const std::vector<bool>* intact_;
  std::ostringstream out_;

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "    ";
  }

  bool emit_span_if_intact(int id, int depth) {
    if (!source_ || !intact_) return false;
    if (id >= static_cast<int>(intact_->size()) || !(*intact_)[static_cast<std::size_t>(id)])
      return false;
    const SourceSpan& sp = t_.at(id).span;
    if (!sp.valid() || sp.end > static_cast<int>(source_->size())) return false;
    indent(depth);
    out_ << source_->substr(static_cast<std::size_t>(sp.begin),
                            static_cast<std::size_t>(sp.end - sp.begin));
    out_ << "\n";
    return true;
  }

  // prints the statements of a Block node; with own_braces also the braces
  void stmt_block_body(int block, int depth, bool own_braces) {
    if (own_braces) {
      out_ << "{\n";
    }
    for (int c : t_.at(block).children) statement(c, depth + 1);
    if (own_braces) {
      out_ << "}";
    }
  }

  void inline_block(int block, int depth) {
    out_ << "{\n";
    for (int c : t_.at(block).children) statement(c, depth + 1);
    indent(depth);
    out_ << "}";
  }

  void statement(int id, int depth) {
    if (emit_span_if_intact(id, depth)) return;
    const Node& n = t_.at(id);
    switch (n.kind) {
      case NodeKind::Block:
        indent(depth);
        inline_block(id, depth);
        out_ << "\n";
        return;
      case NodeKind::Decl:
      case NodeKind::Assign:
      case NodeKind::Call:
        indent(depth);
        simple_stmt(id);
        out_ << ";\n";
        return;
      case NodeKind::If:
        indent(depth);
        if_chain(id, depth);
        out_ << "\n";
        return;
      case NodeKind::While:
        indent(depth);
        out_ << "while (";
        expr(n.children[0]);
        out_ << ") ";
        inline_block(n.children[1], depth);
        out_ << "\n";
        return;
      case NodeKind::For:
        indent(depth);
        out_ << "for (";
        if (t_.at(n.children[0]).kind != NodeKind::Empty) simple_stmt(n.children[0]);
        out_ << "; ";
        if (t_.at(n.children[1]).kind != NodeKind::Empty) expr(n.children[1]);
        out_ << "; ";
        if (t_.at(n.children[2]).kind != NodeKind::Empty) simple_stmt(n.children[2]);
        out_ << ") ";
        inline_block(n.children[3], depth);
        out_ << "\n";
        return;
      case NodeKind::Try: {
        indent(depth);
        out_ << "try ";
        inline_block(n.children[0], depth);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          const Node& h = t_.at(n.children[i]);
          if (h.kind == NodeKind::Catch) {
            out_ << " catch (" << t_.at(h.children[0]).label << " " << t_.at(h.children[1]).label
                 << ") ";
            inline_block(h.children[2], depth);
          } else {  // Finally
            out_ << " finally ";
            inline_block(h.children[0], depth);
          }
        }
        out_ << "\n";
        return;
      }
      case NodeKind::Return:
        indent(depth);
        out_ << "return";
        if (!n.children.empty()) {
          out_ << " ";
          expr(n.children[0]);
        }
        out_ << ";\n";
        return;
      case NodeKind::Assert:
        indent(depth);
        out_ << "assert ";
        expr(n.children[0]);
        out_ << ";\n";
        return;
      case NodeKind::Throw:
        indent(depth);
        out_ << "throw ";
        expr(n.children[0]);
        out_ << ";\n";
        return;
      case NodeKind::WildcardStmt:
        indent(depth);
        out_ << "//# wildcard stmt " << n.label << ";\n";
        return;
      case NodeKind::WildcardExpr:
        indent(depth);
        out_ << "//# wildcard expr " << n.label << " (" << n.anchor_lexeme << ", "
             << n.anchor_ordinal << ");\n";
        return;
      case NodeKind::UseStmt:
        indent(depth);
        out_ << "//# use " << n.label << ";\n";
        return;
      case NodeKind::UseExpr:
        indent(depth);
        out_ << "//# use expr " << n.label << " (" << n.anchor_lexeme << ", " << n.anchor_ordinal
             << ");\n";
        return;
      case NodeKind::Choice:
        indent(depth);
        out_ << "//# choice {\n";
        for (int c : n.children) {
          indent(depth);
          out_ << "//# case {\n";
          for (int s : t_.at(c).children) statement(s, depth);
          indent(depth);
          out_ << "//# }\n";
        }
        indent(depth);
        out_ << "//# }\n";
        return;
      case NodeKind::Hole:
        indent(depth);
        out_ << "//# hole " << n.label << ";\n";
        return;
      default:
        indent(depth);
        expr(id);
        out_ << ";\n";
        return;
    }
  }

  void if_chain(int id, int depth) {
    const Node& n = t_.at(id);
    out_ << "if (";
    expr(n.children[0]);
    out_ << ") ";
    inline_block(n.children[1], depth);
    if (n.children.size() == 3) {
      const Node& e = t_.at(n.children[2]);
      out_ << " else ";
      if (e.kind == NodeKind::If) {
        if_chain(n.children[2], depth);
      } else {
        inline_block(n.children[2], depth);
      }
    }
  }

  // decl/assign/call without semicolon (also used by for-init/update)
  void simple_stmt(int id) {
    const Node& n = t_.at(id);
    if (n.kind == NodeKind::Decl) {
      out_ << t_.at(n.children[0]).label << " " << t_.at(n.children[1]).label;
      if (n.children.size() == 3) {
        out_ << " = ";
        expr(n.children[2]);
      }
      return;
    }
    if (n.kind == NodeKind::Assign) {
      expr(n.children[0]);
      out_ << " = ";
      expr(n.children[1]);
      return;
    }
    expr(id);
  }

  void child_expr(int id, int parent_prec, bool tighten) {
    int p = precedence(t_, id);
    bool parens = tighten ? (p <= parent_prec) : (p < parent_prec);
    if (parens) out_ << "(";
    expr(id);
    if (parens) out_ << ")";
  }

  void expr(int id) {
    const Node& n = t_.at(id);
    switch (n.kind) {
      case NodeKind::Identifier:
      case NodeKind::IntLit:
      case NodeKind::BoolLit:
      case NodeKind::StringLit:
      case NodeKind::TypeName:
        out_ << n.label;
        return;
      case NodeKind::FieldAccess:
        child_expr(n.children[0], 8, false);
        out_ << "." << n.label;
        return;
      case NodeKind::Call:
        child_expr(n.children[0], 8, false);
        out_ << "(";
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          if (i > 1) out_ << ", ";
          expr(n.children[i]);
        }
        out_ << ")";
        return;
      case NodeKind::Binary: {
        int prec = precedence(t_, id);
        bool tighten_right = n.label == "-" || n.label == "/" || n.label == "%";
        child_expr(n.children[0], prec, false);
        out_ << " " << n.label << " ";
        child_expr(n.children[1], prec, tighten_right);
        return;
      }
      case NodeKind::Unary:
        out_ << n.label;
        child_expr(n.children[0], 7, false);
        return;
      case NodeKind::Hole:
        out_ << "/*hole:" << n.label << "*/";
        return;
      default:
        out_ << "/*?" << kind_name(n.kind) << "*/";
        return;
    }
  }
};

}  // namespace

std::string pretty_print(const Tree& tree) {
  Printer p(tree, nullptr, nullptr);
  return p.run();
}

std::string print_with_spans(const Tree& tree, const std::string& source,
                             const std::vector<bool>& span_intact) {
  Printer p(tree, &source, &span_intact);
  return p.run();
}

std::string print_statement_list(const Tree& tree, int block, int depth) {
  Printer p(tree, nullptr, nullptr);
  return p.statements_of(block, depth);
}

std::string print_statement_list(const Tree& tree, int block, int depth,
                                 const std::string& source, const std::vector<bool>& span_intact) {
  Printer p(tree, &source, &span_intact);
  return p.statements_of(block, depth);
}

}  // namespace ares
