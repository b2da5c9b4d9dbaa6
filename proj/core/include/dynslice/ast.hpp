#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dynslice {

/// Statement number. Executable statements are numbered 1..stmt_count;
/// 0 marks declarations and other unnumbered nodes.
using StmtId = std::uint32_t;

struct SourceLoc {
  int line = 0;
  int column = 0;

  // Locations are diagnostics only; they never take part in structural
  // comparison of trees.
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

/// Owning, deep-copying pointer used for recursive expression nodes.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

/// Static type: `int` or a class name. `void` appears only as a return type.
struct TypeTag {
  std::string name;

  static TypeTag integer() { return {"int"}; }
  static TypeTag void_type() { return {"void"}; }
  bool is_int() const { return name == "int"; }
  bool is_void() const { return name == "void"; }
  bool is_class() const { return !is_int() && !is_void(); }

  friend bool operator==(const TypeTag&, const TypeTag&) = default;
  friend auto operator<=>(const TypeTag&, const TypeTag&) = default;
};

enum class VarScope {
  Local,           // scalar or object variable of the enclosing procedure
  ObjectMember,    // obj.member where obj is a local/formal object
  ReceiverMember,  // bare member name inside a method body
};

/// A static reference to a storage location. The checker fills in `scope`
/// and `type`; receiver members are normalised to base "this".
struct VarRef {
  std::string base;
  std::optional<std::string> member;
  VarScope scope = VarScope::Local;
  TypeTag type = TypeTag::integer();
  SourceLoc loc;

  bool is_object() const { return !member && type.is_class(); }
  std::string display() const;

  friend bool operator==(const VarRef& a, const VarRef& b) {
    return a.base == b.base && a.member == b.member && a.scope == b.scope &&
           a.type == b.type;
  }
  friend auto operator<=>(const VarRef& a, const VarRef& b) {
    return std::tie(a.base, a.member, a.scope, a.type) <=>
           std::tie(b.base, b.member, b.scope, b.type);
  }
};

enum class BinaryOp { Add, Sub, Mul, Div, Lt, Gt, Le, Ge, Eq, Ne };

std::string_view to_string(BinaryOp op);

struct Expr;

struct IntLiteral {
  std::int64_t value = 0;
  friend bool operator==(const IntLiteral&, const IntLiteral&) = default;
};

struct NegateExpr {
  Box<Expr> operand;
  friend bool operator==(const NegateExpr&, const NegateExpr&) = default;
};

struct BinaryExpr {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const BinaryExpr&, const BinaryExpr&) = default;
};

struct Expr {
  std::variant<IntLiteral, VarRef, NegateExpr, BinaryExpr> node;
  SourceLoc loc;

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Appends every variable read by `expr` (including bare object refs).
void collect_vars(const Expr& expr, std::vector<VarRef>& out);

struct Stmt;

struct AssignStmt {
  VarRef target;
  Expr value;
  friend bool operator==(const AssignStmt&, const AssignStmt&) = default;
};

struct InputStmt {
  VarRef target;
  friend bool operator==(const InputStmt&, const InputStmt&) = default;
};

struct OutputStmt {
  // String literals are printed but carry no data dependence.
  std::variant<Expr, std::string> value;
  friend bool operator==(const OutputStmt&, const OutputStmt&) = default;
};

struct IfStmt {
  Expr cond;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  friend bool operator==(const IfStmt&, const IfStmt&) = default;
};

struct WhileStmt {
  Expr cond;
  std::vector<Stmt> body;
  friend bool operator==(const WhileStmt&, const WhileStmt&) = default;
};

struct CallStmt {
  std::optional<VarRef> into;  // `x = obj.f(...)`
  VarRef receiver;
  std::string method;
  std::vector<Expr> args;
  // Filled by the checker: overload chosen for the static argument types.
  std::string receiver_class;
  std::size_t method_index = 0;
  friend bool operator==(const CallStmt&, const CallStmt&) = default;
};

struct ReturnStmt {
  std::optional<Expr> value;
  friend bool operator==(const ReturnStmt&, const ReturnStmt&) = default;
};

struct VarDeclStmt {
  TypeTag type;
  std::vector<std::string> names;
  friend bool operator==(const VarDeclStmt&, const VarDeclStmt&) = default;
};

struct Stmt {
  StmtId id = 0;
  std::variant<AssignStmt, InputStmt, OutputStmt, IfStmt, WhileStmt, CallStmt, ReturnStmt,
               VarDeclStmt>
      node;
  SourceLoc loc;

  bool is_executable() const { return !std::holds_alternative<VarDeclStmt>(node); }

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Signature {
  std::string name;
  std::vector<TypeTag> params;

  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Formal {
  std::string name;
  TypeTag type;
  bool by_ref = false;
  friend bool operator==(const Formal&, const Formal&) = default;
};

struct LocalDecl {
  std::string name;
  TypeTag type;
  friend bool operator==(const LocalDecl&, const LocalDecl&) = default;
};

struct MethodDef {
  std::string name;
  Signature signature;
  std::vector<Formal> formals;
  TypeTag return_type = TypeTag::void_type();
  std::vector<Stmt> body;
  std::vector<LocalDecl> locals;  // declared in the body, filled by the checker
  SourceLoc loc;

  friend bool operator==(const MethodDef&, const MethodDef&) = default;
};

struct ClassDef {
  std::string name;
  std::vector<std::string> members;  // all members are `int`
  std::vector<MethodDef> methods;
  SourceLoc loc;

  bool has_member(std::string_view m) const;
  friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

struct Program {
  std::vector<ClassDef> classes;
  std::vector<Stmt> main_body;
  std::vector<LocalDecl> main_locals;
  StmtId stmt_count = 0;

  const ClassDef* find_class(std::string_view name) const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Calls `fn(stmt)` for every statement in `body`, pre-order.
template <typename Fn>
void for_each_stmt(const std::vector<Stmt>& body, Fn&& fn) {
  for (const auto& s : body) {
    fn(s);
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      for_each_stmt(i->then_body, fn);
      for_each_stmt(i->else_body, fn);
    } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
      for_each_stmt(w->body, fn);
    }
  }
}

}  // namespace dynslice
