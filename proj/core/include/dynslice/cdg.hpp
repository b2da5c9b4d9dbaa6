#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/ast.hpp"

namespace dynslice {

enum class NodeKind { Entry, Assign, Input, Output, Test, TestLoop, Call, Return };

std::string_view to_string(NodeKind kind);

struct DefUse {
  std::vector<VarRef> defs;  // sorted, unique
  std::vector<VarRef> uses;  // sorted, unique
};

/// Static def/use sets of one executable statement. Object arguments of a
/// call count as uses of every member; the receiver contributes nothing.
DefUse def_use(const Program& program, const Stmt& stmt);

/// A procedure of the program; index 0 is always main.
struct Procedure {
  std::string name;        // "main" or "cls::method(types)"
  std::string class_name;  // empty for main
  std::vector<Formal> formals;
  std::vector<LocalDecl> locals;  // declared in the body

  std::string entry_label() const { return "entry:" + name; }
};

struct CdgNode {
  StmtId id = 0;
  NodeKind kind = NodeKind::Assign;
  std::size_t procedure = 0;
  // Nearest enclosing If/While; nullopt means the procedure's entry node.
  std::optional<StmtId> parent;
  DefUse vars;
  std::string text;

  bool is_test() const { return kind == NodeKind::Test || kind == NodeKind::TestLoop; }
};

/// Control dependence graph of a structured program. Every statement has
/// exactly one control parent, so each procedure's graph is a tree rooted at
/// its entry node.
class Cdg {
 public:
  static Cdg build(const Program& program);

  /// Number of statement nodes (entry nodes excluded).
  StmtId size() const { return static_cast<StmtId>(nodes_.size()); }
  bool contains(StmtId id) const { return id >= 1 && id <= nodes_.size(); }
  /// Throws std::out_of_range for ids outside 1..size().
  const CdgNode& node(StmtId id) const;
  std::optional<StmtId> control_parent(StmtId id) const { return node(id).parent; }

  const std::vector<CdgNode>& nodes() const { return nodes_; }
  const std::vector<Procedure>& procedures() const { return procedures_; }

  /// Member names of an object declared in main, or nullopt if there is no
  /// such object.
  std::optional<std::vector<std::string>> main_object_members(std::string_view name) const;

 private:
  std::vector<CdgNode> nodes_;  // nodes_[id - 1]
  std::vector<Procedure> procedures_;
  std::vector<std::pair<std::string, std::vector<std::string>>> main_objects_;
};

inline Cdg build_cdg(const Program& program) { return Cdg::build(program); }

/// Graphviz rendering; edges run from a node to its control parent.
std::string export_dot(const Cdg& cdg);

/// JSON array of {id, kind, parent, defs[], uses[]}, entry nodes first.
std::string export_json(const Cdg& cdg);

}  // namespace dynslice
