#include "lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

#include "dynslice/frontend.hpp"

namespace dynslice::detail {

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"class", Tok::KwClass}, {"public", Tok::KwPublic}, {"void", Tok::KwVoid},
      {"int", Tok::KwInt},     {"cin", Tok::KwCin},       {"cout", Tok::KwCout},
      {"if", Tok::KwIf},       {"else", Tok::KwElse},     {"while", Tok::KwWhile},
      {"return", Tok::KwReturn},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      SourceLoc loc{line_, col_};
      if (at_end()) {
        out.push_back({Tok::End, "", 0, loc});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(identifier(loc));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number(loc));
      } else if (c == '"') {
        out.push_back(string(loc));
      } else {
        out.push_back(punct(loc));
      }
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
    throw ParseError(ParseErrorKind::Lexical, loc, msg);
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceLoc start{line_, col_};
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) fail(start, "unterminated block comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token identifier(SourceLoc loc) {
    std::string text;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') text += advance();
    auto it = keywords().find(text);
    return {it == keywords().end() ? Tok::Ident : it->second, text, 0, loc};
  }

  Token number(SourceLoc loc) {
    std::string text;
    std::int64_t value = 0;
    constexpr auto max = std::numeric_limits<std::int64_t>::max();
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      int digit = advance() - '0';
      if (value > (max - digit) / 10) fail(loc, "integer literal out of range");
      value = value * 10 + digit;
      text += static_cast<char>('0' + digit);
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
      fail({line_, col_}, "invalid character in integer literal");
    return {Tok::Int, text, value, loc};
  }

  Token string(SourceLoc loc) {
    advance();
    std::string text;
    for (;;) {
      if (at_end() || peek() == '\n') fail(loc, "unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail(loc, "unterminated string literal");
        char e = advance();
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          default: fail(loc, std::string("unknown escape \\") + e);
        }
      } else {
        text += c;
      }
    }
    return {Tok::String, text, 0, loc};
  }

  Token punct(SourceLoc loc) {
    char c = advance();
    auto two = [&](char next, Tok yes, Tok no) {
      if (peek() == next) {
        advance();
        return Token{yes, "", 0, loc};
      }
      return Token{no, "", 0, loc};
    };
    switch (c) {
      case '{': return {Tok::LBrace, "{", 0, loc};
      case '}': return {Tok::RBrace, "}", 0, loc};
      case '(': return {Tok::LParen, "(", 0, loc};
      case ')': return {Tok::RParen, ")", 0, loc};
      case ';': return {Tok::Semi, ";", 0, loc};
      case ':': return {Tok::Colon, ":", 0, loc};
      case ',': return {Tok::Comma, ",", 0, loc};
      case '.': return {Tok::Dot, ".", 0, loc};
      case '#': return {Tok::Hash, "#", 0, loc};
      case '&': return {Tok::Amp, "&", 0, loc};
      case '+': return {Tok::Plus, "+", 0, loc};
      case '-': return {Tok::Minus, "-", 0, loc};
      case '*': return {Tok::Star, "*", 0, loc};
      case '/': return {Tok::Slash, "/", 0, loc};
      case '=': return two('=', Tok::EqEq, Tok::Assign);
      case '<':
        if (peek() == '<') {
          advance();
          return {Tok::ShiftL, "<<", 0, loc};
        }
        return two('=', Tok::Le, Tok::Lt);
      case '>':
        if (peek() == '>') {
          advance();
          return {Tok::ShiftR, ">>", 0, loc};
        }
        return two('=', Tok::Ge, Tok::Gt);
      case '!':
        if (peek() == '=') {
          advance();
          return {Tok::NotEq, "!=", 0, loc};
        }
        break;
      default: break;
    }
    fail(loc, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer literal";
    case Tok::String: return "string literal";
    case Tok::KwClass: return "'class'";
    case Tok::KwPublic: return "'public'";
    case Tok::KwVoid: return "'void'";
    case Tok::KwInt: return "'int'";
    case Tok::KwCin: return "'cin'";
    case Tok::KwCout: return "'cout'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwReturn: return "'return'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Hash: return "'#'";
    case Tok::Amp: return "'&'";
    case Tok::Assign: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::Le: return "'<='";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::ShiftL: return "'<<'";
    case Tok::ShiftR: return "'>>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace dynslice::detail
