// Part of the aresd project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <unordered_map>

#include "ares/errors.hpp"
#include "ares/token.hpp"

namespace ares {

namespace {

const std::unordered_map<std::string, TokenKind>& keyword_table() {
  static const std::unordered_map<std::string, TokenKind> table = {
      {"if", TokenKind::KwIf},         {"else", TokenKind::KwElse},
      {"while", TokenKind::KwWhile},   {"for", TokenKind::KwFor},
      {"try", TokenKind::KwTry},       {"catch", TokenKind::KwCatch},
      {"finally", TokenKind::KwFinally},
      {"return", TokenKind::KwReturn}, {"assert", TokenKind::KwAssert},
      {"throw", TokenKind::KwThrow},
      {"true", TokenKind::True},       {"false", TokenKind::False},
  };
  return table;
}

}  // namespace

TokenStream lex(const std::string& source) {
  TokenStream out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = source.size();

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](TokenKind kind, std::size_t len) {
    Token t;
    t.kind = kind;
    t.text = source.substr(i, len);
    t.line = line;
    t.col = col;
    t.offset = static_cast<int>(i);
    out.tokens.push_back(std::move(t));
    advance(len);
  };

  while (i < n) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && source[i + 1] == '*') {
      int start_line = line, start_col = col;
      advance(2);
      bool closed = false;
      while (i < n) {
        if (source[i] == '*' && i + 1 < n && source[i + 1] == '/') {
          advance(2);
          closed = true;
          break;
        }
        advance(1);
      }
      if (!closed) throw SyntaxError("unterminated block comment", start_line, start_col);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 1;
      while (i + len < n &&
             (std::isalnum(static_cast<unsigned char>(source[i + len])) || source[i + len] == '_'))
        ++len;
      std::string word = source.substr(i, len);
      auto it = keyword_table().find(word);
      push(it != keyword_table().end() ? it->second : TokenKind::Ident, len);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 1;
      while (i + len < n && std::isdigit(static_cast<unsigned char>(source[i + len]))) ++len;
      push(TokenKind::IntLit, len);
      continue;
    }
    if (c == '"') {
      std::size_t len = 1;
      bool closed = false;
      while (i + len < n) {
        char d = source[i + len];
        if (d == '\\' && i + len + 1 < n) {
          len += 2;
          continue;
        }
        ++len;
        if (d == '"') {
          closed = true;
          break;
        }
        if (d == '\n') break;
      }
      if (!closed) throw SyntaxError("unterminated string literal", line, col);
      push(TokenKind::StringLit, len);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < n && source[i + 1] == b; };
    if (two('=', '=')) { push(TokenKind::EqEq, 2); continue; }
    if (two('!', '=')) { push(TokenKind::Ne, 2); continue; }
    if (two('<', '=')) { push(TokenKind::Le, 2); continue; }
    if (two('>', '=')) { push(TokenKind::Ge, 2); continue; }
    if (two('&', '&')) { push(TokenKind::AndAnd, 2); continue; }
    if (two('|', '|')) { push(TokenKind::OrOr, 2); continue; }
    switch (c) {
      case '{': push(TokenKind::LBrace, 1); continue;
      case '}': push(TokenKind::RBrace, 1); continue;
      case '(': push(TokenKind::LParen, 1); continue;
      case ')': push(TokenKind::RParen, 1); continue;
      case ';': push(TokenKind::Semicolon, 1); continue;
      case ',': push(TokenKind::Comma, 1); continue;
      case '.': push(TokenKind::Dot, 1); continue;
      case '=': push(TokenKind::Assign, 1); continue;
      case '+': push(TokenKind::Plus, 1); continue;
      case '-': push(TokenKind::Minus, 1); continue;
      case '*': push(TokenKind::Star, 1); continue;
      case '/': push(TokenKind::Slash, 1); continue;
      case '%': push(TokenKind::Percent, 1); continue;
      case '!': push(TokenKind::Bang, 1); continue;
      case '<': push(TokenKind::Lt, 1); continue;
      case '>': push(TokenKind::Gt, 1); continue;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  return out;
}

}  // namespace ares
