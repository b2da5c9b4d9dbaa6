#include "dynslice/cdg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dynslice/frontend.hpp"

namespace dynslice {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Entry: return "Entry";
    case NodeKind::Assign: return "Assign";
    case NodeKind::Input: return "Input";
    case NodeKind::Output: return "Output";
    case NodeKind::Test: return "Test";
    case NodeKind::TestLoop: return "TestLoop";
    case NodeKind::Call: return "Call";
    case NodeKind::Return: return "Return";
  }
  return "?";
}

namespace {

void sort_unique(std::vector<VarRef>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

NodeKind kind_of(const Stmt& s) {
  return std::visit(
      [](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) return NodeKind::Assign;
        else if constexpr (std::is_same_v<T, InputStmt>) return NodeKind::Input;
        else if constexpr (std::is_same_v<T, OutputStmt>) return NodeKind::Output;
        else if constexpr (std::is_same_v<T, IfStmt>) return NodeKind::Test;
        else if constexpr (std::is_same_v<T, WhileStmt>) return NodeKind::TestLoop;
        else if constexpr (std::is_same_v<T, CallStmt>) return NodeKind::Call;
        else if constexpr (std::is_same_v<T, ReturnStmt>) return NodeKind::Return;
        else return NodeKind::Entry;
      },
      s.node);
}

}  // namespace

DefUse def_use(const Program& program, const Stmt& stmt) {
  DefUse du;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          du.defs.push_back(n.target);
          collect_vars(n.value, du.uses);
        } else if constexpr (std::is_same_v<T, InputStmt>) {
          du.defs.push_back(n.target);
        } else if constexpr (std::is_same_v<T, OutputStmt>) {
          if (const auto* e = std::get_if<Expr>(&n.value)) collect_vars(*e, du.uses);
        } else if constexpr (std::is_same_v<T, IfStmt> || std::is_same_v<T, WhileStmt>) {
          collect_vars(n.cond, du.uses);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          std::vector<VarRef> raw;
          for (const auto& a : n.args) collect_vars(a, raw);
          for (auto& v : raw) {
            if (!v.is_object()) {
              du.uses.push_back(std::move(v));
              continue;
            }
            const ClassDef* cls = program.find_class(v.type.name);
            for (const auto& m : cls->members)
              du.uses.push_back(VarRef{v.base, m, VarScope::ObjectMember, TypeTag::integer(), v.loc});
          }
          if (n.into) du.defs.push_back(*n.into);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          if (n.value) collect_vars(*n.value, du.uses);
        }
      },
      stmt.node);
  sort_unique(du.defs);
  sort_unique(du.uses);
  return du;
}

const CdgNode& Cdg::node(StmtId id) const {
  if (!contains(id)) throw std::out_of_range("no statement #" + std::to_string(id));
  return nodes_[id - 1];
}

std::optional<std::vector<std::string>> Cdg::main_object_members(std::string_view name) const {
  for (const auto& [obj, members] : main_objects_)
    if (obj == name) return members;
  return std::nullopt;
}

Cdg Cdg::build(const Program& program) {
  Cdg g;
  g.nodes_.resize(program.stmt_count);

  auto walk = [&](const std::vector<Stmt>& body, std::size_t proc, std::optional<StmtId> parent,
                  auto&& self) -> void {
    for (const auto& s : body) {
      if (!s.is_executable()) continue;
      CdgNode& n = g.nodes_.at(s.id - 1);
      n.id = s.id;
      n.kind = kind_of(s);
      n.procedure = proc;
      n.parent = parent;
      n.vars = def_use(program, s);
      n.text = describe(s);
      if (const auto* i = std::get_if<IfStmt>(&s.node)) {
        self(i->then_body, proc, s.id, self);
        self(i->else_body, proc, s.id, self);
      } else if (const auto* w = std::get_if<WhileStmt>(&s.node)) {
        self(w->body, proc, s.id, self);
      }
    }
  };

  g.procedures_.push_back({"main", "", {}, program.main_locals});
  walk(program.main_body, 0, std::nullopt, walk);
  for (const auto& cls : program.classes) {
    for (const auto& m : cls.methods) {
      g.procedures_.push_back(
          {cls.name + "::" + m.signature.to_string(), cls.name, m.formals, m.locals});
      walk(m.body, g.procedures_.size() - 1, std::nullopt, walk);
    }
  }
  for (const auto& local : program.main_locals) {
    if (const ClassDef* cls = program.find_class(local.type.name))
      g.main_objects_.emplace_back(local.name, cls->members);
  }
  return g;
}

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string parent_label(const Cdg& cdg, const CdgNode& n) {
  if (n.parent) return "n" + std::to_string(*n.parent);
  return "\"" + cdg.procedures()[n.procedure].entry_label() + "\"";
}

}  // namespace

std::string export_dot(const Cdg& cdg) {
  std::ostringstream out;
  out << "digraph cdg {\n";
  for (const auto& p : cdg.procedures())
    out << "  \"" << p.entry_label() << "\" [shape=box, label=\"" << dot_escape(p.entry_label())
        << "\"];\n";
  for (const auto& n : cdg.nodes()) {
    out << "  n" << n.id << " [label=\"" << n.id << ": " << dot_escape(n.text) << "\"";
    if (n.is_test()) out << ", shape=diamond";
    out << "];\n";
  }
  for (const auto& n : cdg.nodes()) out << "  n" << n.id << " -> " << parent_label(cdg, n) << ";\n";
  out << "}\n";
  return out.str();
}

std::string export_json(const Cdg& cdg) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& p : cdg.procedures()) {
    arr.push_back({{"id", p.entry_label()},
                   {"kind", "Entry"},
                   {"parent", nullptr},
                   {"defs", json::array()},
                   {"uses", json::array()}});
  }
  auto names = [](const std::vector<VarRef>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(v.display());
    return a;
  };
  for (const auto& n : cdg.nodes()) {
    json parent = n.parent ? json(*n.parent) : json(cdg.procedures()[n.procedure].entry_label());
    arr.push_back({{"id", n.id},
                   {"kind", std::string(to_string(n.kind))},
                   {"parent", parent},
                   {"defs", names(n.vars.defs)},
                   {"uses", names(n.vars.uses)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace dynslice
