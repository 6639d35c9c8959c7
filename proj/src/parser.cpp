// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "ares/ast.hpp"
#include "ares/errors.hpp"

namespace ares {

namespace {

// Recursive-descent parser for the Java-subset grammar (docs/grammar.md).
class Parser {
 public:
  Parser(const std::string& source, TokenStream stream)
      : source_(source), toks_(std::move(stream.tokens)) {}

  MethodBody run() {
    MethodBody body;
    int root = parse_block(body.tree, -1);
    (void)root;
    if (!at_end()) error("trailing input after method body");
    body.source = source_;
    return body;
  }

 private:
  const std::string& source_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek(int ahead = 0) const {
    static Token eof{TokenKind::EndOfFile, "", 0, 0, 0};
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : eof;
  }
  bool check(TokenKind k) const { return peek().kind == k; }
  const Token& advance() {
    if (at_end()) error("unexpected end of input");
    return toks_[pos_++];
  }
  const Token& expect(TokenKind k, const char* what) {
    if (!check(k)) error(std::string("expected ") + what);
    return advance();
  }
  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    if (t.kind == TokenKind::EndOfFile) {
      int line = toks_.empty() ? 1 : toks_.back().line;
      int col = toks_.empty() ? 1 : toks_.back().col;
      throw SyntaxError(msg + " (at end of input)", line, col);
    }
    throw SyntaxError(msg + ", got '" + t.text + "'", t.line, t.col);
  }

  int tok_begin() const { return at_end() ? static_cast<int>(source_.size()) : peek().offset; }
  int last_end() const {
    const Token& t = toks_[pos_ - 1];
    return t.offset + static_cast<int>(t.text.size());
  }
  void close_span(Tree& t, int id, int begin) { t.at(id).span = {begin, last_end()}; }

  int parse_block(Tree& t, int parent) {
    int begin = tok_begin();
    expect(TokenKind::LBrace, "'{'");
    int block = t.add(NodeKind::Block, "", parent);
    while (!check(TokenKind::RBrace)) {
      if (at_end()) error("unterminated block");
      parse_statement(t, block);
    }
    expect(TokenKind::RBrace, "'}'");
    close_span(t, block, begin);
    return block;
  }

  void parse_statement(Tree& t, int parent) {
    switch (peek().kind) {
      case TokenKind::LBrace: parse_block(t, parent); return;
      case TokenKind::KwIf: parse_if(t, parent); return;
      case TokenKind::KwWhile: parse_while(t, parent); return;
      case TokenKind::KwFor: parse_for(t, parent); return;
      case TokenKind::KwTry: parse_try(t, parent); return;
      case TokenKind::KwReturn: parse_return(t, parent); return;
      case TokenKind::KwAssert: parse_assert(t, parent); return;
      case TokenKind::KwThrow: parse_throw(t, parent); return;
      default: break;
    }
    int begin = tok_begin();
    int stmt = parse_simple(t, parent);
    expect(TokenKind::Semicolon, "';'");
    close_span(t, stmt, begin);
  }

  // decl | assign | call, without the trailing semicolon
  int parse_simple(Tree& t, int parent) {
    if (check(TokenKind::Ident) && peek(1).kind == TokenKind::Ident) return parse_decl(t, parent);
    int begin = tok_begin();
    int expr = parse_expr(t, -1);
    if (check(TokenKind::Assign)) {
      NodeKind k = t.at(expr).kind;
      if (k != NodeKind::Identifier && k != NodeKind::FieldAccess)
        error("left side of assignment must be an identifier or field access");
      advance();
      int assign = t.add(NodeKind::Assign, "", parent);
      t.attach(expr, assign);
      int rhs = parse_expr(t, -1);
      t.attach(rhs, assign);
      close_span(t, assign, begin);
      return assign;
    }
    if (t.at(expr).kind != NodeKind::Call)
      error("only calls may be used as expression statements");
    t.attach(expr, parent);
    return expr;
  }

  int parse_decl(Tree& t, int parent) {
    int begin = tok_begin();
    const Token& type = expect(TokenKind::Ident, "type name");
    int decl = t.add(NodeKind::Decl, "", parent);
    int ty = t.add(NodeKind::TypeName, type.text, decl);
    t.at(ty).span = {type.offset, type.offset + static_cast<int>(type.text.size())};
    const Token& name = expect(TokenKind::Ident, "variable name");
    int id = t.add(NodeKind::Identifier, name.text, decl);
    t.at(id).span = {name.offset, name.offset + static_cast<int>(name.text.size())};
    if (check(TokenKind::Assign)) {
      advance();
      int init = parse_expr(t, -1);
      t.attach(init, decl);
    }
    close_span(t, decl, begin);
    return decl;
  }

  void parse_if(Tree& t, int parent) {
    int begin = tok_begin();
    advance();  // if
    int node = t.add(NodeKind::If, "", parent);
    expect(TokenKind::LParen, "'('");
    int cond = parse_expr(t, -1);
    t.attach(cond, node);
    expect(TokenKind::RParen, "')'");
    parse_block(t, node);
    if (check(TokenKind::KwElse)) {
      advance();
      if (check(TokenKind::KwIf)) {
        parse_if(t, node);
      } else {
        parse_block(t, node);
      }
    }
    close_span(t, node, begin);
  }

  void parse_while(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::While, "", parent);
    expect(TokenKind::LParen, "'('");
    int cond = parse_expr(t, -1);
    t.attach(cond, node);
    expect(TokenKind::RParen, "')'");
    parse_block(t, node);
    close_span(t, node, begin);
  }

  void parse_for(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::For, "", parent);
    expect(TokenKind::LParen, "'('");
    if (check(TokenKind::Semicolon)) {
      t.add(NodeKind::Empty, "", node);
    } else {
      int init = parse_simple(t, node);
      // parse_simple attaches assigns/decls itself when parent >= 0
      (void)init;
    }
    expect(TokenKind::Semicolon, "';'");
    if (check(TokenKind::Semicolon)) {
      t.add(NodeKind::Empty, "", node);
    } else {
      int cond = parse_expr(t, -1);
      t.attach(cond, node);
    }
    expect(TokenKind::Semicolon, "';'");
    if (check(TokenKind::RParen)) {
      t.add(NodeKind::Empty, "", node);
    } else {
      parse_simple(t, node);
    }
    expect(TokenKind::RParen, "')'");
    parse_block(t, node);
    close_span(t, node, begin);
  }

  void parse_try(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::Try, "", parent);
    parse_block(t, node);
    bool saw_handler = false;
    while (check(TokenKind::KwCatch)) {
      saw_handler = true;
      int cbegin = tok_begin();
      advance();
      int cat = t.add(NodeKind::Catch, "", node);
      expect(TokenKind::LParen, "'('");
      const Token& type = expect(TokenKind::Ident, "exception type");
      int ty = t.add(NodeKind::TypeName, type.text, cat);
      t.at(ty).span = {type.offset, type.offset + static_cast<int>(type.text.size())};
      const Token& name = expect(TokenKind::Ident, "exception name");
      int id = t.add(NodeKind::Identifier, name.text, cat);
      t.at(id).span = {name.offset, name.offset + static_cast<int>(name.text.size())};
      expect(TokenKind::RParen, "')'");
      parse_block(t, cat);
      close_span(t, cat, cbegin);
    }
    if (check(TokenKind::KwFinally)) {
      saw_handler = true;
      int fbegin = tok_begin();
      advance();
      int fin = t.add(NodeKind::Finally, "", node);
      parse_block(t, fin);
      close_span(t, fin, fbegin);
    }
    if (!saw_handler) error("try requires at least one catch or finally");
    close_span(t, node, begin);
  }

  void parse_return(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::Return, "", parent);
    if (!check(TokenKind::Semicolon)) {
      int e = parse_expr(t, -1);
      t.attach(e, node);
    }
    expect(TokenKind::Semicolon, "';'");
    close_span(t, node, begin);
  }

  void parse_assert(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::Assert, "", parent);
    int e = parse_expr(t, -1);
    t.attach(e, node);
    expect(TokenKind::Semicolon, "';'");
    close_span(t, node, begin);
  }

  void parse_throw(Tree& t, int parent) {
    int begin = tok_begin();
    advance();
    int node = t.add(NodeKind::Throw, "", parent);
    int e = parse_expr(t, -1);
    t.attach(e, node);
    expect(TokenKind::Semicolon, "';'");
    close_span(t, node, begin);
  }

  // precedence climbing; returns a detached node unless parent >= 0
  int parse_expr(Tree& t, int parent) {
    int e = parse_or(t);
    if (parent >= 0) t.attach(e, parent);
    return e;
  }

  int binary(Tree& t, int begin, const char* op, int lhs, int rhs) {
    int node = t.add(NodeKind::Binary, op, -1);
    t.attach(lhs, node);
    t.attach(rhs, node);
    t.at(node).span = {begin, last_end()};
    return node;
  }

  int parse_or(Tree& t) {
    int begin = tok_begin();
    int e = parse_and(t);
    while (check(TokenKind::OrOr)) {
      advance();
      e = binary(t, begin, "||", e, parse_and(t));
    }
    return e;
  }
  int parse_and(Tree& t) {
    int begin = tok_begin();
    int e = parse_eq(t);
    while (check(TokenKind::AndAnd)) {
      advance();
      e = binary(t, begin, "&&", e, parse_eq(t));
    }
    return e;
  }
  int parse_eq(Tree& t) {
    int begin = tok_begin();
    int e = parse_rel(t);
    while (check(TokenKind::EqEq) || check(TokenKind::Ne)) {
      std::string op = advance().text;
      e = binary(t, begin, op.c_str(), e, parse_rel(t));
    }
    return e;
  }
  int parse_rel(Tree& t) {
    int begin = tok_begin();
    int e = parse_add(t);
    while (check(TokenKind::Lt) || check(TokenKind::Gt) || check(TokenKind::Le) ||
           check(TokenKind::Ge)) {
      std::string op = advance().text;
      e = binary(t, begin, op.c_str(), e, parse_add(t));
    }
    return e;
  }
  int parse_add(Tree& t) {
    int begin = tok_begin();
    int e = parse_mul(t);
    while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
      std::string op = advance().text;
      e = binary(t, begin, op.c_str(), e, parse_mul(t));
    }
    return e;
  }
  int parse_mul(Tree& t) {
    int begin = tok_begin();
    int e = parse_unary(t);
    while (check(TokenKind::Star) || check(TokenKind::Slash) || check(TokenKind::Percent)) {
      std::string op = advance().text;
      e = binary(t, begin, op.c_str(), e, parse_unary(t));
    }
    return e;
  }
  int parse_unary(Tree& t) {
    if (check(TokenKind::Bang) || check(TokenKind::Minus)) {
      int begin = tok_begin();
      std::string op = advance().text;
      int node = t.add(NodeKind::Unary, op, -1);
      int operand = parse_unary(t);
      t.attach(operand, node);
      t.at(node).span = {begin, last_end()};
      return node;
    }
    return parse_postfix(t);
  }
  int parse_postfix(Tree& t) {
    int begin = tok_begin();
    int e = parse_primary(t);
    while (true) {
      if (check(TokenKind::Dot)) {
        advance();
        const Token& member = expect(TokenKind::Ident, "member name");
        int fa = t.add(NodeKind::FieldAccess, member.text, -1);
        t.attach(e, fa);
        t.at(fa).span = {begin, last_end()};
        e = fa;
        continue;
      }
      if (check(TokenKind::LParen)) {
        advance();
        int call = t.add(NodeKind::Call, "", -1);
        t.attach(e, call);
        if (!check(TokenKind::RParen)) {
          t.attach(parse_expr(t, -1), call);
          while (check(TokenKind::Comma)) {
            advance();
            t.attach(parse_expr(t, -1), call);
          }
        }
        expect(TokenKind::RParen, "')'");
        t.at(call).span = {begin, last_end()};
        e = call;
        continue;
      }
      break;
    }
    return e;
  }
  int parse_primary(Tree& t) {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::IntLit: {
        advance();
        int n = t.add(NodeKind::IntLit, tok.text, -1);
        t.at(n).span = {tok.offset, tok.offset + static_cast<int>(tok.text.size())};
        return n;
      }
      case TokenKind::StringLit: {
        advance();
        int n = t.add(NodeKind::StringLit, tok.text, -1);
        t.at(n).span = {tok.offset, tok.offset + static_cast<int>(tok.text.size())};
        return n;
      }
      case TokenKind::True:
      case TokenKind::False: {
        advance();
        int n = t.add(NodeKind::BoolLit, tok.text, -1);
        t.at(n).span = {tok.offset, tok.offset + static_cast<int>(tok.text.size())};
        return n;
      }
      case TokenKind::Ident: {
        advance();
        int n = t.add(NodeKind::Identifier, tok.text, -1);
        t.at(n).span = {tok.offset, tok.offset + static_cast<int>(tok.text.size())};
        return n;
      }
      case TokenKind::LParen: {
        advance();
        int e = parse_expr(t, -1);
        expect(TokenKind::RParen, "')'");
        return e;  // grouping is not represented in the tree
      }
      default:
        error("expected expression");
    }
  }
};

}  // namespace

MethodBody parse(const std::string& source) {
  Parser p(source, lex(source));
  return p.run();
}

}  // namespace ares
