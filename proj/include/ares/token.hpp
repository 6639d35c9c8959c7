// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace ares {

enum class TokenKind {
  LBrace, RBrace, LParen, RParen,
  Semicolon, Comma, Dot,
  Assign,  // =
  Plus, Minus, Star, Slash, Percent, Bang,
  Lt, Gt, Le, Ge, EqEq, Ne, AndAnd, OrOr,
  KwIf, KwElse, KwWhile, KwFor, KwTry, KwCatch, KwFinally,
  KwReturn, KwAssert, KwThrow,
  True, False,
  IntLit, StringLit, Ident,
  EndOfFile,
};

struct Token {
  TokenKind kind;
  std::string text;   // lexeme as written, quotes included for strings
  int line = 1;
  int col = 1;
  int offset = 0;     // byte offset into the source
};

// Comments and whitespace are never tokens.
struct TokenStream {
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  bool same_lexemes(const TokenStream& other) const {
    if (tokens.size() != other.tokens.size()) return false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].kind != other.tokens[i].kind || tokens[i].text != other.tokens[i].text)
        return false;
    }
    return true;
  }
};

// Lexes `source`; excludes comments. Throws SyntaxError. The trailing
// EndOfFile token is not part of the returned stream.
TokenStream lex(const std::string& source);

}  // namespace ares
