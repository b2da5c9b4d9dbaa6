#include <sstream>
#include <string>

#include "dynslice/frontend.hpp"

namespace dynslice {

namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 1;
    case BinaryOp::Lt:
    case BinaryOp::Gt:
    case BinaryOp::Le:
    case BinaryOp::Ge: return 2;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 3;
    case BinaryOp::Mul:
    case BinaryOp::Div: return 4;
  }
  return 0;
}

std::string lvalue_text(const VarRef& v) {
  if (v.scope == VarScope::ReceiverMember) return *v.member;
  return v.display();
}

std::string expr_text(const Expr& e, int min_prec = 0);

std::string operand_text(const Expr& e, int min_prec) {
  const auto* b = std::get_if<BinaryExpr>(&e.node);
  if (b && precedence(b->op) < min_prec) return "(" + expr_text(e) + ")";
  return expr_text(e, min_prec);
}

std::string expr_text(const Expr& e, int /*min_prec*/) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLiteral>) {
          return std::to_string(n.value);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return lvalue_text(n);
        } else if constexpr (std::is_same_v<T, NegateExpr>) {
          if (std::holds_alternative<BinaryExpr>(n.operand->node))
            return "-(" + expr_text(*n.operand) + ")";
          return "-" + expr_text(*n.operand);
        } else {
          int p = precedence(n.op);
          // Left-associative: the right operand needs parentheses at equal
          // precedence.
          return operand_text(*n.lhs, p) + " " + std::string(to_string(n.op)) + " " +
                 operand_text(*n.rhs, p + 1);
        }
      },
      e.node);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string call_text(const CallStmt& c) {
  std::string out;
  if (c.into) out += lvalue_text(*c.into) + " = ";
  out += c.receiver.base + "." + c.method + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i) out += ", ";
    out += expr_text(c.args[i]);
  }
  return out + ")";
}

class Printer {
 public:
  std::string run(const Program& p) {
    for (const auto& cls : p.classes) class_def(cls);
    out_ << "void main() {\n";
    body(p.main_body, 1);
    out_ << "}\n";
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void class_def(const ClassDef& cls) {
    out_ << "class " << cls.name << " {\n";
    if (!cls.members.empty()) {
      out_ << "  int ";
      for (std::size_t i = 0; i < cls.members.size(); ++i)
        out_ << (i ? ", " : "") << cls.members[i];
      out_ << ";\n";
    }
    out_ << "public:\n";
    for (const auto& m : cls.methods) {
      out_ << "  " << m.return_type.name << " " << m.name << "(";
      for (std::size_t i = 0; i < m.formals.size(); ++i) {
        const Formal& f = m.formals[i];
        out_ << (i ? ", " : "") << f.type.name << (f.by_ref ? " &" : " ") << f.name;
      }
      out_ << ") {\n";
      body(m.body, 2);
      out_ << "  }\n";
    }
    out_ << "};\n\n";
  }

  void body(const std::vector<Stmt>& stmts, int depth) {
    for (const auto& s : stmts) stmt(s, depth);
  }

  void stmt(const Stmt& s, int depth) {
    indent(depth);
    if (s.is_executable()) out_ << "#" << s.id << ": ";
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      out_ << "if (" << expr_text(i->cond) << ") {\n";
      body(i->then_body, depth + 1);
      indent(depth);
      out_ << "}";
      if (!i->else_body.empty()) {
        out_ << " else {\n";
        body(i->else_body, depth + 1);
        indent(depth);
        out_ << "}";
      }
      out_ << "\n";
    } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
      out_ << "while (" << expr_text(w->cond) << ") {\n";
      body(w->body, depth + 1);
      indent(depth);
      out_ << "}\n";
    } else {
      out_ << describe(s) << ";\n";
    }
  }

  std::ostringstream out_;
};

}  // namespace

std::string describe(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return lvalue_text(n.target) + " = " + expr_text(n.value);
        } else if constexpr (std::is_same_v<T, InputStmt>) {
          return "cin >> " + lvalue_text(n.target);
        } else if constexpr (std::is_same_v<T, OutputStmt>) {
          if (const auto* e = std::get_if<Expr>(&n.value)) return "cout << " + expr_text(*e);
          return "cout << " + quoted(std::get<std::string>(n.value));
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return "if (" + expr_text(n.cond) + ")";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return "while (" + expr_text(n.cond) + ")";
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return call_text(n);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          return n.value ? "return " + expr_text(*n.value) : std::string("return");
        } else {
          std::string out = n.type.name + " ";
          for (std::size_t i = 0; i < n.names.size(); ++i) out += (i ? ", " : "") + n.names[i];
          return out;
        }
      },
      s.node);
}

std::string pretty_print(const Program& program) { return Printer().run(program); }

}  // namespace dynslice
