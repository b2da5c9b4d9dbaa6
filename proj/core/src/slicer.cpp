#include "dynslice/slicer.hpp"

#include <algorithm>

namespace dynslice {

namespace {

const StmtSet kEmpty;

}  // namespace

std::size_t SliceState::cardinality() const {
  std::size_t n = active_call.size() + active_return.size();
  for (const auto& [_, s] : active_data) n += s.size();
  for (const auto& [_, s] : active_control) n += s.size();
  for (const auto& s : call_stack) n += s.size();
  for (const auto& [_, s] : dyn_table) n += s.size();
  return n;
}

void Slicer::init() {
  state_ = SliceState{};
  stats_ = SliceStats{};
}

void Slicer::consume(const ExecEvent& event) {
  ++stats_.events;
  std::visit(
      [this](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, StmtExecuted>) on_stmt(ev);
        else if constexpr (std::is_same_v<T, CallEntered>) on_call(ev);
        else if constexpr (std::is_same_v<T, AboutToReturn>) on_about_to_return(ev);
        else if constexpr (std::is_same_v<T, Returned>) on_returned(ev);
        else if constexpr (std::is_same_v<T, LoopExited>) on_loop_exit(ev);
        // input, output and warning events carry no dependence information
      },
      event);
  stats_.peak_cardinality = std::max(stats_.peak_cardinality, state_.cardinality());
}

const CdgNode& Slicer::node(StmtId id) const {
  if (!cdg_->contains(id)) throw SliceError("event refers to unknown statement #" + std::to_string(id));
  return cdg_->node(id);
}

const StmtSet& Slicer::data(const RuntimeVar& v) const {
  auto it = state_.active_data.find(v);
  return it == state_.active_data.end() ? kEmpty : it->second;
}

// ActiveControlSlice of the test node that `id` is control dependent on, from
// that test's latest execution in the current frame; empty when the parent is
// the procedure entry.
StmtSet Slicer::control_term(StmtId id) const {
  auto parent = node(id).parent;
  if (!parent) return {};
  auto it = state_.active_control.find({frame(), *parent});
  return it == state_.active_control.end() ? StmtSet{} : it->second;
}

void Slicer::assign(const RuntimeVar& v, StmtSet s) {
  ++stats_.updates;
  if (s.empty()) {
    state_.active_data.erase(v);
  } else {
    state_.active_data.insert_or_assign(v, std::move(s));
  }
}

void Slicer::on_stmt(const StmtExecuted& ev) {
  const CdgNode& n = node(ev.id);
  const StmtSet ctrl = control_term(ev.id);

  auto flow_in = [&] {
    StmtSet s{ev.id};
    for (const auto& u : ev.uses) s.merge(data(u));
    s.merge(ctrl);
    s.merge(state_.active_call);
    return s;
  };

  // A call's defs were already settled by on_returned.
  if (n.kind != NodeKind::Call && !ev.defs.empty()) {
    StmtSet s = flow_in();
    for (const auto& d : ev.defs) assign(d, s);
  }

  auto record = [&](const RuntimeVar& v) {
    ++stats_.updates;
    state_.dyn_table.insert_or_assign({ev.id, v.criterion_name()}, data(v) | ctrl);
  };
  for (const auto& v : ev.defs) record(v);
  for (const auto& v : ev.uses) record(v);
  for (const auto& v : ev.receiver) record(v);

  if (n.is_test()) {
    ++stats_.updates;
    state_.active_control.insert_or_assign({frame(), ev.id}, flow_in());
  }
}

void Slicer::on_call(const CallEntered& ev) {
  StmtSet call = StmtSet{ev.site} | state_.active_call | control_term(ev.site);
  state_.call_stack.push_back(std::move(state_.active_call));
  state_.active_call = std::move(call);
  ++stats_.updates;

  std::vector<std::pair<const RuntimeVar*, StmtSet>> incoming;
  incoming.reserve(ev.bindings.size());
  for (const auto& b : ev.bindings) {
    StmtSet s = state_.active_call;
    for (const auto& src : b.sources) s.merge(data(src));
    incoming.emplace_back(&b.formal, std::move(s));
  }
  for (auto& [formal, s] : incoming) assign(*formal, std::move(s));
  state_.frames.push_back(ev.frame);
}

void Slicer::on_about_to_return(const AboutToReturn& ev) {
  ++stats_.updates;
  if (!ev.id) {
    state_.active_return = {};
    return;
  }
  StmtSet s{*ev.id};
  for (const auto& u : ev.uses) s.merge(data(u));
  s.merge(control_term(*ev.id));
  s.merge(state_.active_call);
  state_.active_return = std::move(s);
}

void Slicer::on_returned(const Returned& ev) {
  if (state_.frames.size() < 2 || state_.call_stack.empty() || frame() != ev.frame)
    throw SliceError("unbalanced return from call at #" + std::to_string(ev.site));

  for (const auto& cb : ev.copybacks) assign(cb.actual, data(cb.formal));
  if (ev.into) assign(*ev.into, state_.active_return);

  for (const auto& v : ev.reset) state_.active_data.erase(v);
  auto& ctrl = state_.active_control;
  for (auto it = ctrl.lower_bound({ev.frame, 0}); it != ctrl.end() && it->first.first == ev.frame;)
    it = ctrl.erase(it);

  state_.frames.pop_back();
  state_.active_call = std::move(state_.call_stack.back());
  state_.call_stack.pop_back();
  state_.active_return = {};
  ++stats_.updates;
}

void Slicer::on_loop_exit(const LoopExited& ev) {
  ++stats_.updates;
  state_.active_control.erase({frame(), ev.id});
}

StmtSet Slicer::slice_of(StmtId node, std::string_view var) const {
  auto it = state_.dyn_table.find({node, std::string(var)});
  if (it == state_.dyn_table.end())
    throw CriterionError(CriterionError::Reason::NotExecuted,
                         "criterion (" + std::to_string(node) + ", " + std::string(var) +
                             ") was never executed");
  return it->second;
}

StmtSet Slicer::slice_of_object(std::string_view object) const {
  auto members = cdg_->main_object_members(object);
  if (!members)
    throw CriterionError(CriterionError::Reason::UnknownObject,
                         "no object '" + std::string(object) + "' is declared in main");
  StmtSet out;
  for (const auto& m : *members) out.merge(data({kMainFrame, std::string(object), m}));
  return out;
}

StmtSet Slicer::active_data(const RuntimeVar& var) const { return data(var); }

StmtSet Slicer::active_data(std::string_view display) const {
  for (const auto& [v, s] : state_.active_data)
    if (v.display() == display) return s;
  return {};
}

std::vector<Criterion> Slicer::criteria() const {
  std::vector<Criterion> out;
  out.reserve(state_.dyn_table.size());
  for (const auto& [key, _] : state_.dyn_table) out.push_back({key.first, key.second});
  return out;
}

}  // namespace dynslice
