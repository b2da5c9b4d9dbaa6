#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "dynslice/frontend.hpp"
#include "parser.hpp"

namespace dynslice::detail {

namespace {

struct Scope {
  const ClassDef* receiver = nullptr;  // null for main
  std::map<std::string, TypeTag, std::less<>> vars;
  std::vector<LocalDecl>* locals = nullptr;
  TypeTag return_type = TypeTag::void_type();
  bool is_main = false;
};

class Checker {
 public:
  explicit Checker(Program& prog) : prog_(prog) {}

  void run() {
    declare_classes();
    for (auto& cls : prog_.classes) {
      for (auto& m : cls.methods) check_method(cls, m);
    }
    Scope main_scope;
    main_scope.is_main = true;
    main_scope.locals = &prog_.main_locals;
    check_body(main_scope, prog_.main_body);
    number_statements();
  }

 private:
  [[noreturn]] static void fail(ParseErrorKind kind, SourceLoc loc, const std::string& msg) {
    throw ParseError(kind, loc, msg);
  }
  [[noreturn]] static void fail(SourceLoc loc, const std::string& msg) {
    fail(ParseErrorKind::Semantic, loc, msg);
  }

  void require_type(const TypeTag& t, SourceLoc loc) const {
    if (t.is_int()) return;
    if (!prog_.find_class(t.name)) fail(loc, "unknown type '" + t.name + "'");
  }

  void declare_classes() {
    std::set<std::string, std::less<>> names;
    for (const auto& cls : prog_.classes) {
      if (!names.insert(cls.name).second)
        fail(ParseErrorKind::DuplicateClass, cls.loc, "duplicate class '" + cls.name + "'");
    }
    for (const auto& cls : prog_.classes) {
      std::set<std::string, std::less<>> members;
      for (const auto& m : cls.members) {
        if (m == "this") fail(cls.loc, "'this' cannot be used as a member name");
        if (!members.insert(m).second)
          fail(ParseErrorKind::DuplicateMember, cls.loc,
               "duplicate member '" + m + "' in class '" + cls.name + "'");
      }
      for (std::size_t i = 0; i < cls.methods.size(); ++i) {
        const MethodDef& m = cls.methods[i];
        if (!m.return_type.is_void()) require_type(m.return_type, m.loc);
        std::set<std::string, std::less<>> formals;
        for (const auto& f : m.formals) {
          require_type(f.type, m.loc);
          if (f.name == "this") fail(m.loc, "'this' cannot be used as a parameter name");
          if (!formals.insert(f.name).second)
            fail(ParseErrorKind::DuplicateMember, m.loc,
                 "duplicate parameter '" + f.name + "' in method '" + m.name + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (cls.methods[j].signature == m.signature)
            fail(ParseErrorKind::DuplicateSignature, m.loc,
                 "conflicting duplicate signature " + cls.name + "::" + m.signature.to_string());
        }
      }
    }
  }

  void check_method(const ClassDef& cls, MethodDef& m) {
    Scope scope;
    scope.receiver = &cls;
    scope.locals = &m.locals;
    scope.return_type = m.return_type;
    for (const auto& f : m.formals) scope.vars.emplace(f.name, f.type);
    check_body(scope, m.body);
  }

  void check_body(Scope& scope, std::vector<Stmt>& body) {
    for (auto& s : body) check_stmt(scope, s);
  }

  void resolve(const Scope& scope, VarRef& v) const {
    if (!v.member) {
      if (auto it = scope.vars.find(v.base); it != scope.vars.end()) {
        v.scope = VarScope::Local;
        v.type = it->second;
        return;
      }
      if (scope.receiver && scope.receiver->has_member(v.base)) {
        v.member = v.base;
        v.base = "this";
        v.scope = VarScope::ReceiverMember;
        v.type = TypeTag::integer();
        return;
      }
      fail(v.loc, "undeclared variable '" + v.base + "'");
    }
    auto it = scope.vars.find(v.base);
    if (it == scope.vars.end()) fail(v.loc, "undeclared object '" + v.base + "'");
    if (!it->second.is_class()) fail(v.loc, "'" + v.base + "' is not an object");
    const ClassDef* cls = prog_.find_class(it->second.name);
    if (!cls->has_member(*v.member))
      fail(v.loc, "class '" + cls->name + "' has no member '" + *v.member + "'");
    v.scope = VarScope::ObjectMember;
    v.type = TypeTag::integer();
  }

  void check_int_lvalue(const Scope& scope, VarRef& v) const {
    resolve(scope, v);
    if (!v.type.is_int()) fail(v.loc, "'" + v.display() + "' is an object, not an int");
  }

  // Returns the static type of the expression; a bare object reference is
  // only allowed when `allow_object` is set (call arguments).
  TypeTag check_expr(const Scope& scope, Expr& e, bool allow_object) const {
    return std::visit(
        [&](auto& n) -> TypeTag {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            return TypeTag::integer();
          } else if constexpr (std::is_same_v<T, VarRef>) {
            resolve(scope, n);
            if (n.is_object() && !allow_object)
              fail(n.loc, "object '" + n.base + "' used in an integer expression");
            return n.type;
          } else if constexpr (std::is_same_v<T, NegateExpr>) {
            check_expr(scope, *n.operand, false);
            return TypeTag::integer();
          } else {
            check_expr(scope, *n.lhs, false);
            check_expr(scope, *n.rhs, false);
            return TypeTag::integer();
          }
        },
        e.node);
  }

  void declare(Scope& scope, const TypeTag& type, const std::string& name, SourceLoc loc) {
    require_type(type, loc);
    if (name == "this") fail(loc, "'this' cannot be used as a variable name");
    if (!scope.vars.emplace(name, type).second)
      fail(loc, "redeclaration of '" + name + "'");
    scope.locals->push_back({name, type});
  }

  void check_stmt(Scope& scope, Stmt& s) {
    std::visit(
        [&](auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            check_int_lvalue(scope, n.target);
            check_expr(scope, n.value, false);
          } else if constexpr (std::is_same_v<T, InputStmt>) {
            check_int_lvalue(scope, n.target);
          } else if constexpr (std::is_same_v<T, OutputStmt>) {
            if (auto* e = std::get_if<Expr>(&n.value)) check_expr(scope, *e, false);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            check_expr(scope, n.cond, false);
            check_body(scope, n.then_body);
            check_body(scope, n.else_body);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            check_expr(scope, n.cond, false);
            check_body(scope, n.body);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            check_call(scope, n, s.loc);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (scope.is_main) fail(s.loc, "'return' is not allowed in main");
            if (scope.return_type.is_int()) {
              if (!n.value) fail(s.loc, "method returning int must return a value");
              check_expr(scope, *n.value, false);
            } else if (n.value) {
              fail(s.loc, "only methods returning int may return a value");
            }
          } else {
            for (const auto& name : n.names) declare(scope, n.type, name, s.loc);
          }
        },
        s.node);
  }

  void check_call(Scope& scope, CallStmt& c, SourceLoc loc) {
    resolve(scope, c.receiver);
    if (!c.receiver.is_object())
      fail(c.receiver.loc, "'" + c.receiver.display() + "' is not an object");
    const ClassDef* cls = prog_.find_class(c.receiver.type.name);

    std::vector<TypeTag> types;
    for (auto& a : c.args) types.push_back(check_expr(scope, a, true));

    const MethodDef* target = nullptr;
    try {
      target = &resolve_overload(*cls, c.method, types);
    } catch (const NoMatchingOverload& e) {
      fail(loc, e.what());
    }
    c.receiver_class = cls->name;
    c.method_index = static_cast<std::size_t>(target - cls->methods.data());

    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (!target->formals[i].by_ref) continue;
      if (!std::holds_alternative<VarRef>(c.args[i].node))
        fail(c.args[i].loc, "argument " + std::to_string(i + 1) + " of " + cls->name +
                                "::" + target->signature.to_string() +
                                " is passed by reference and must be a variable");
    }
    if (c.into) {
      check_int_lvalue(scope, *c.into);
      if (!target->return_type.is_int())
        fail(loc, cls->name + "::" + target->signature.to_string() + " does not return int");
    }
  }

  void number_statements() {
    std::vector<Stmt*> order;
    auto collect = [&](std::vector<Stmt>& body, auto&& self) -> void {
      for (auto& s : body) {
        if (s.is_executable()) order.push_back(&s);
        if (auto* i = std::get_if<IfStmt>(&s.node)) {
          self(i->then_body, self);
          self(i->else_body, self);
        } else if (auto* w = std::get_if<WhileStmt>(&s.node)) {
          self(w->body, self);
        }
      }
    };
    for (auto& cls : prog_.classes)
      for (auto& m : cls.methods) collect(m.body, collect);
    collect(prog_.main_body, collect);

    prog_.stmt_count = static_cast<StmtId>(order.size());
    std::size_t labelled = std::count_if(order.begin(), order.end(),
                                         [](const Stmt* s) { return s->id != 0; });
    if (labelled == 0) {
      StmtId next = 1;
      for (Stmt* s : order) s->id = next++;
      return;
    }
    if (labelled != order.size()) {
      auto it = std::find_if(order.begin(), order.end(), [](const Stmt* s) { return s->id == 0; });
      fail((*it)->loc, "statement has no label; either label every statement or none");
    }
    std::map<StmtId, const Stmt*> seen;
    for (const Stmt* s : order) {
      if (!seen.emplace(s->id, s).second)
        fail(ParseErrorKind::LabelCollision, s->loc,
             "statement label #" + std::to_string(s->id) + " is already used");
    }
    for (const Stmt* s : order) {
      if (s->id > order.size())
        fail(ParseErrorKind::LabelCollision, s->loc,
             "statement label #" + std::to_string(s->id) + " leaves a gap; labels must be 1.." +
                 std::to_string(order.size()));
    }
  }

  Program& prog_;
};

}  // namespace

void check_program(Program& program) { Checker(program).run(); }

}  // namespace dynslice::detail
