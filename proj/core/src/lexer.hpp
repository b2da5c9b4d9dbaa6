#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/ast.hpp"

namespace dynslice::detail {

enum class Tok {
  Ident,
  Int,
  String,
  // keywords
  KwClass,
  KwPublic,
  KwVoid,
  KwInt,
  KwCin,
  KwCout,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  // punctuation
  LBrace,
  RBrace,
  LParen,
  RParen,
  Semi,
  Colon,
  Comma,
  Dot,
  Hash,
  Amp,
  Assign,
  Plus,
  Minus,
  Star,
  Slash,
  Lt,
  Gt,
  Le,
  Ge,
  EqEq,
  NotEq,
  ShiftL,
  ShiftR,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  SourceLoc loc;
};

std::string_view describe(Tok kind);

/// Throws ParseError(Lexical) on malformed input. The result always ends in
/// a Tok::End token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace dynslice::detail
