#include "dynslice/oracle.hpp"

#include <algorithm>

namespace dynslice {

std::span<const Ddg::Edge> Ddg::edges(std::uint32_t index) const {
  const Node& n = nodes_.at(index);
  return std::span<const Edge>(edges_).subspan(n.edge_begin, n.edge_end - n.edge_begin);
}

std::vector<std::uint32_t> Ddg::occurrences(StmtId stmt) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].stmt == stmt) out.push_back(i);
  return out;
}

StmtSet Ddg::backward_slice(StmtId stmt, std::string_view var) const {
  auto it = criteria_.find({stmt, std::string(var)});
  if (it == criteria_.end())
    throw CriterionError(CriterionError::Reason::NotExecuted,
                         "criterion (" + std::to_string(stmt) + ", " + std::string(var) +
                             ") has no occurrence in the trace");
  std::vector<bool> seen(nodes_.size());
  std::vector<std::uint32_t> work(it->second.begin(), it->second.end());
  std::vector<StmtId> ids;
  while (!work.empty()) {
    std::uint32_t n = work.back();
    work.pop_back();
    if (seen[n]) continue;
    seen[n] = true;
    ids.push_back(nodes_[n].stmt);
    for (const Edge& e : edges(n))
      if (!seen[e.target]) work.push_back(e.target);
  }
  return StmtSet(std::move(ids));
}

std::vector<Criterion> Ddg::criteria() const {
  std::vector<Criterion> out;
  for (const auto& [key, _] : criteria_) out.push_back({key.first, key.second});
  return out;
}

DdgBuilder::DdgBuilder(const Cdg& cdg) : cdg_(&cdg) {
  stack_.push_back({kMainFrame, std::nullopt, std::nullopt, {}});
}

std::uint32_t DdgBuilder::add_node(StmtId stmt, const std::vector<std::uint32_t>& data,
                                   std::optional<std::uint32_t> control) {
  Ddg::Node n;
  n.stmt = stmt;
  n.occurrence = occurrence_count_[stmt]++;
  n.edge_begin = static_cast<std::uint32_t>(ddg_.edges_.size());
  std::vector<std::uint32_t> targets = data;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (auto t : targets) ddg_.edges_.push_back({t, EdgeKind::Data});
  if (control) ddg_.edges_.push_back({*control, EdgeKind::Control});
  if (auto call = stack_.back().call_node) ddg_.edges_.push_back({*call, EdgeKind::Control});
  n.edge_end = static_cast<std::uint32_t>(ddg_.edges_.size());
  ddg_.nodes_.push_back(n);
  return static_cast<std::uint32_t>(ddg_.nodes_.size() - 1);
}

std::optional<std::uint32_t> DdgBuilder::governing_test(StmtId stmt) const {
  if (!cdg_->contains(stmt)) throw OracleError("trace names unknown statement #" + std::to_string(stmt));
  auto parent = cdg_->control_parent(stmt);
  if (!parent) return std::nullopt;
  const auto& tests = stack_.back().last_test;
  auto it = tests.find(*parent);
  if (it == tests.end())
    throw OracleError("statement #" + std::to_string(stmt) + " ran before its controlling test #" +
                      std::to_string(*parent));
  return it->second;
}

const std::vector<std::uint32_t>& DdgBuilder::defs_of(const RuntimeVar& v) const {
  static const std::vector<std::uint32_t> none;
  auto it = last_def_.find(v);
  return it == last_def_.end() ? none : it->second;
}

void DdgBuilder::record(StmtId stmt, const RuntimeVar& v, std::vector<std::uint32_t> roots) {
  ddg_.criteria_.insert_or_assign({stmt, v.criterion_name()}, std::move(roots));
}

void DdgBuilder::consume(const ExecEvent& event) {
  std::visit(
      [this](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, StmtExecuted>) {
          on_stmt(ev);
        } else if constexpr (std::is_same_v<T, CallEntered>) {
          on_call(ev);
        } else if constexpr (std::is_same_v<T, Returned>) {
          on_returned(ev);
        } else if constexpr (std::is_same_v<T, AboutToReturn>) {
          // A named return statement registers itself when it executes.
          if (!ev.id) stack_.back().return_node.reset();
        }
      },
      event);
}

void DdgBuilder::on_stmt(const StmtExecuted& ev) {
  const auto test = governing_test(ev.id);
  const CdgNode& info = cdg_->node(ev.id);

  auto roots_for = [&](const RuntimeVar& v) {
    std::vector<std::uint32_t> roots = defs_of(v);
    if (test) roots.push_back(*test);
    return roots;
  };

  if (info.kind == NodeKind::Call) {
    if (!finished_call_ || ddg_.nodes_[*finished_call_].stmt != ev.id)
      throw OracleError("call statement #" + std::to_string(ev.id) + " completed without a call");
    finished_call_.reset();
    for (const auto& v : ev.defs) record(ev.id, v, roots_for(v));
    for (const auto& v : ev.uses) record(ev.id, v, roots_for(v));
    for (const auto& v : ev.receiver) record(ev.id, v, roots_for(v));
    return;
  }

  std::vector<std::uint32_t> data;
  for (const auto& u : ev.uses) {
    const auto& d = defs_of(u);
    data.insert(data.end(), d.begin(), d.end());
  }
  const std::uint32_t occ = add_node(ev.id, data, test);
  for (const auto& d : ev.defs) last_def_[d] = {occ};
  if (info.is_test()) stack_.back().last_test[ev.id] = occ;
  if (info.kind == NodeKind::Return) stack_.back().return_node = occ;

  for (const auto& v : ev.defs) record(ev.id, v, roots_for(v));
  for (const auto& v : ev.uses) record(ev.id, v, roots_for(v));
}

void DdgBuilder::on_call(const CallEntered& ev) {
  const std::uint32_t call = add_node(ev.site, {}, governing_test(ev.site));
  std::vector<std::pair<RuntimeVar, std::vector<std::uint32_t>>> bound;
  for (const auto& b : ev.bindings) {
    std::vector<std::uint32_t> defs{call};
    for (const auto& src : b.sources) {
      const auto& d = defs_of(src);
      defs.insert(defs.end(), d.begin(), d.end());
    }
    bound.emplace_back(b.formal, std::move(defs));
  }
  for (auto& [formal, defs] : bound) last_def_[formal] = std::move(defs);
  stack_.push_back({ev.frame, call, std::nullopt, {}});
}

void DdgBuilder::on_returned(const Returned& ev) {
  if (stack_.size() < 2 || stack_.back().frame != ev.frame)
    throw OracleError("unbalanced return from call at #" + std::to_string(ev.site));
  Activation done = std::move(stack_.back());
  stack_.pop_back();

  for (const auto& cb : ev.copybacks) last_def_[cb.actual] = defs_of(cb.formal);
  if (ev.into) {
    if (done.return_node) {
      last_def_[*ev.into] = {*done.return_node};
    } else {
      last_def_.erase(*ev.into);
    }
  }
  for (const auto& v : ev.reset) last_def_.erase(v);
  finished_call_ = done.call_node;
}

Ddg build_ddg(const Cdg& cdg, std::span<const ExecEvent> trace) {
  DdgBuilder b(cdg);
  for (const auto& ev : trace) b.consume(ev);
  return std::move(b).finish();
}

}  // namespace dynslice
