#include "parser.hpp"

#include <string>
#include <vector>

#include "dynslice/frontend.hpp"
#include "lexer.hpp"

namespace dynslice::detail {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program prog;
    while (at(Tok::KwClass)) prog.classes.push_back(class_def());
    expect(Tok::KwVoid, "expected a class definition or 'void main()'");
    const Token& name = expect(Tok::Ident, "expected 'main'");
    if (name.text != "main") fail(name.loc, "expected 'main', found '" + name.text + "'");
    expect(Tok::LParen);
    expect(Tok::RParen, "main takes no parameters");
    prog.main_body = block();
    if (!at(Tok::End)) fail(cur().loc, "unexpected " + std::string(describe(cur().kind)) +
                                           " after main");
    return prog;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t ahead) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, std::string_view what = {}) {
    if (!at(k)) {
      std::string msg = what.empty() ? "expected " + std::string(describe(k)) : std::string(what);
      fail(cur().loc, msg + ", found " + std::string(describe(cur().kind)));
    }
    return toks_[pos_++];
  }
  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
    throw ParseError(ParseErrorKind::Syntax, loc, msg);
  }

  ClassDef class_def() {
    ClassDef cls;
    cls.loc = cur().loc;
    expect(Tok::KwClass);
    cls.name = expect(Tok::Ident, "expected class name").text;
    expect(Tok::LBrace);
    while (accept(Tok::KwInt)) {
      do {
        cls.members.push_back(expect(Tok::Ident, "expected member name").text);
      } while (accept(Tok::Comma));
      expect(Tok::Semi);
    }
    expect(Tok::KwPublic, "expected 'int' member declaration or 'public:'");
    expect(Tok::Colon);
    while (!at(Tok::RBrace)) cls.methods.push_back(method_def());
    expect(Tok::RBrace);
    expect(Tok::Semi, "expected ';' after class definition");
    return cls;
  }

  TypeTag type_name(bool allow_void) {
    if (accept(Tok::KwInt)) return TypeTag::integer();
    if (allow_void && accept(Tok::KwVoid)) return TypeTag::void_type();
    return {expect(Tok::Ident, "expected a type").text};
  }

  MethodDef method_def() {
    MethodDef m;
    m.loc = cur().loc;
    m.return_type = type_name(true);
    m.name = expect(Tok::Ident, "expected method name").text;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        Formal f;
        f.type = type_name(false);
        f.by_ref = accept(Tok::Amp);
        f.name = expect(Tok::Ident, "expected parameter name").text;
        m.formals.push_back(std::move(f));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    m.signature.name = m.name;
    for (const auto& f : m.formals) m.signature.params.push_back(f.type);
    m.body = block();
    return m;
  }

  std::vector<Stmt> block() {
    expect(Tok::LBrace);
    std::vector<Stmt> body;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) fail(cur().loc, "unterminated block");
      body.push_back(statement());
    }
    expect(Tok::RBrace);
    return body;
  }

  Stmt statement() {
    Stmt s;
    s.loc = cur().loc;
    if (accept(Tok::Hash)) {
      const Token& n = expect(Tok::Int, "expected statement number after '#'");
      if (n.value < 1 || n.value > 1'000'000) fail(n.loc, "statement label out of range");
      s.id = static_cast<StmtId>(n.value);
      expect(Tok::Colon, "expected ':' after statement label");
    }
    SourceLoc body_loc = cur().loc;

    switch (cur().kind) {
      case Tok::KwCin: {
        ++pos_;
        expect(Tok::ShiftR);
        s.node = InputStmt{lvalue()};
        expect(Tok::Semi);
        break;
      }
      case Tok::KwCout: {
        ++pos_;
        expect(Tok::ShiftL);
        if (at(Tok::String)) {
          s.node = OutputStmt{toks_[pos_++].text};
        } else {
          s.node = OutputStmt{expr()};
        }
        expect(Tok::Semi);
        break;
      }
      case Tok::KwIf: {
        ++pos_;
        IfStmt st{paren_expr(), block(), {}};
        if (accept(Tok::KwElse)) st.else_body = block();
        s.node = std::move(st);
        break;
      }
      case Tok::KwWhile: {
        ++pos_;
        Expr cond = paren_expr();
        s.node = WhileStmt{std::move(cond), block()};
        break;
      }
      case Tok::KwReturn: {
        ++pos_;
        ReturnStmt r;
        if (!at(Tok::Semi)) r.value = expr();
        expect(Tok::Semi);
        s.node = std::move(r);
        break;
      }
      case Tok::KwInt: {
        ++pos_;
        s.node = var_decl(TypeTag::integer());
        break;
      }
      case Tok::Ident: {
        if (look(1).kind == Tok::Ident) {
          TypeTag t{toks_[pos_++].text};
          s.node = var_decl(std::move(t));
        } else if (is_call_ahead()) {
          s.node = call(std::nullopt);
        } else {
          VarRef target = lvalue();
          expect(Tok::Assign, "expected '=' or a method call");
          if (is_call_ahead()) {
            s.node = call(std::move(target));
          } else {
            s.node = AssignStmt{std::move(target), expr()};
            expect(Tok::Semi);
          }
        }
        break;
      }
      default:
        fail(body_loc, "expected a statement, found " + std::string(describe(cur().kind)));
    }
    if (s.id != 0 && std::holds_alternative<VarDeclStmt>(s.node))
      fail(s.loc, "declarations are not executable and cannot carry a label");
    return s;
  }

  bool is_call_ahead() const {
    return at(Tok::Ident) && look(1).kind == Tok::Dot && look(2).kind == Tok::Ident &&
           look(3).kind == Tok::LParen;
  }

  VarDeclStmt var_decl(TypeTag type) {
    VarDeclStmt d{std::move(type), {}};
    do {
      d.names.push_back(expect(Tok::Ident, "expected variable name").text);
    } while (accept(Tok::Comma));
    expect(Tok::Semi);
    return d;
  }

  CallStmt call(std::optional<VarRef> into) {
    CallStmt c;
    c.into = std::move(into);
    const Token& recv = expect(Tok::Ident);
    c.receiver.base = recv.text;
    c.receiver.loc = recv.loc;
    expect(Tok::Dot);
    c.method = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        c.args.push_back(expr());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    expect(Tok::Semi);
    return c;
  }

  VarRef lvalue() {
    const Token& base = expect(Tok::Ident, "expected a variable");
    VarRef v;
    v.base = base.text;
    v.loc = base.loc;
    if (accept(Tok::Dot)) v.member = expect(Tok::Ident, "expected member name").text;
    return v;
  }

  Expr paren_expr() {
    expect(Tok::LParen);
    Expr e = expr();
    expect(Tok::RParen);
    return e;
  }

  static Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourceLoc loc) {
    return Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}, loc};
  }

  Expr expr() { return equality(); }

  Expr equality() {
    Expr e = relational();
    for (;;) {
      SourceLoc loc = cur().loc;
      if (accept(Tok::EqEq)) e = binary(BinaryOp::Eq, std::move(e), relational(), loc);
      else if (accept(Tok::NotEq)) e = binary(BinaryOp::Ne, std::move(e), relational(), loc);
      else return e;
    }
  }

  Expr relational() {
    Expr e = additive();
    for (;;) {
      SourceLoc loc = cur().loc;
      if (accept(Tok::Lt)) e = binary(BinaryOp::Lt, std::move(e), additive(), loc);
      else if (accept(Tok::Gt)) e = binary(BinaryOp::Gt, std::move(e), additive(), loc);
      else if (accept(Tok::Le)) e = binary(BinaryOp::Le, std::move(e), additive(), loc);
      else if (accept(Tok::Ge)) e = binary(BinaryOp::Ge, std::move(e), additive(), loc);
      else return e;
    }
  }

  Expr additive() {
    Expr e = multiplicative();
    for (;;) {
      SourceLoc loc = cur().loc;
      if (accept(Tok::Plus)) e = binary(BinaryOp::Add, std::move(e), multiplicative(), loc);
      else if (accept(Tok::Minus)) e = binary(BinaryOp::Sub, std::move(e), multiplicative(), loc);
      else return e;
    }
  }

  Expr multiplicative() {
    Expr e = unary();
    for (;;) {
      SourceLoc loc = cur().loc;
      if (accept(Tok::Star)) e = binary(BinaryOp::Mul, std::move(e), unary(), loc);
      else if (accept(Tok::Slash)) e = binary(BinaryOp::Div, std::move(e), unary(), loc);
      else return e;
    }
  }

  Expr unary() {
    SourceLoc loc = cur().loc;
    if (accept(Tok::Minus)) return Expr{NegateExpr{unary()}, loc};
    return primary();
  }

  Expr primary() {
    SourceLoc loc = cur().loc;
    if (at(Tok::Int)) return Expr{IntLiteral{toks_[pos_++].value}, loc};
    if (at(Tok::Ident)) return Expr{lvalue(), loc};
    if (accept(Tok::LParen)) {
      Expr e = expr();
      expect(Tok::RParen);
      return e;
    }
    fail(loc, "expected an expression, found " + std::string(describe(cur().kind)));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_syntax(std::string_view source) { return Parser(tokenize(source)).program(); }

}  // namespace dynslice::detail
