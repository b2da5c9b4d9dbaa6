#include <string>

#include "dynslice/frontend.hpp"
#include "parser.hpp"

namespace dynslice {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Lexical: return "lexical error";
    case ParseErrorKind::Syntax: return "syntax error";
    case ParseErrorKind::DuplicateClass: return "duplicate class";
    case ParseErrorKind::DuplicateMember: return "duplicate member";
    case ParseErrorKind::DuplicateSignature: return "duplicate signature";
    case ParseErrorKind::LabelCollision: return "label collision";
    case ParseErrorKind::Semantic: return "semantic error";
  }
  return "error";
}

ParseError::ParseError(ParseErrorKind kind, SourceLoc loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                         std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      loc_(loc),
      detail_(message) {}

std::string Signature::to_string() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += params[i].name;
  }
  return out + ")";
}

std::string VarRef::display() const {
  if (!member) return base;
  return base + "." + *member;
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
  }
  return "?";
}

void collect_vars(const Expr& expr, std::vector<VarRef>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          out.push_back(n);
        } else if constexpr (std::is_same_v<T, NegateExpr>) {
          collect_vars(*n.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_vars(*n.lhs, out);
          collect_vars(*n.rhs, out);
        }
      },
      expr.node);
}

bool ClassDef::has_member(std::string_view m) const {
  for (const auto& mem : members)
    if (mem == m) return true;
  return false;
}

const ClassDef* Program::find_class(std::string_view name) const {
  for (const auto& c : classes)
    if (c.name == name) return &c;
  return nullptr;
}

const MethodDef& resolve_overload(const ClassDef& cls, std::string_view name,
                                  const std::vector<TypeTag>& actual_types) {
  // Name, arity and exact ordered parameter types form the dispatch key.
  // Duplicate signatures are rejected when the class is checked, so at most
  // one method can match.
  for (const auto& m : cls.methods) {
    if (m.name == name && m.signature.params == actual_types) return m;
  }
  Signature wanted{std::string(name), actual_types};
  throw NoMatchingOverload("no method " + cls.name + "::" + wanted.to_string() +
                           " matches the call");
}

Program parse(std::string_view source) {
  Program p = detail::parse_syntax(source);
  detail::check_program(p);
  return p;
}

}  // namespace dynslice
