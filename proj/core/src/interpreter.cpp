#include "dynslice/interpreter.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "dynslice/cdg.hpp"

namespace dynslice {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::InputExhausted: return "input exhausted";
    case RunStatus::DivisionByZero: return "division by zero";
    case RunStatus::BudgetExceeded: return "step budget exceeded";
    case RunStatus::CallDepthExceeded: return "call depth exceeded";
  }
  return "?";
}

namespace {

using Value = std::optional<std::int64_t>;  // nullopt = never assigned

struct ObjectValue {
  const ClassDef* cls = nullptr;
  std::vector<Value> members;

  Value& member(std::string_view name) {
    auto it = std::find(cls->members.begin(), cls->members.end(), name);
    return members[static_cast<std::size_t>(it - cls->members.begin())];
  }
  const Value& member(std::string_view name) const {
    return const_cast<ObjectValue*>(this)->member(name);
  }
};

struct Slot {
  Value scalar;
  std::optional<ObjectValue> object;
};

struct Frame {
  std::uint32_t serial = kMainFrame;
  const MethodDef* method = nullptr;
  ObjectValue* receiver = nullptr;
  RuntimeVar receiver_id;
  std::map<std::string, Slot, std::less<>> vars;
  Value return_value;
};

struct Abort {
  RunStatus status;
  std::string message;
};

std::int64_t wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

class Interpreter {
 public:
  Interpreter(const Program& prog, std::span<const std::int64_t> inputs, const EventSink& sink,
              const RunOptions& opts)
      : prog_(prog), inputs_(inputs), sink_(sink), opts_(opts) {
    def_use_.resize(prog.stmt_count);
    auto index = [&](const std::vector<Stmt>& body) {
      for_each_stmt(body, [&](const Stmt& s) {
        if (s.is_executable()) def_use_[s.id - 1] = def_use(prog, s);
      });
    };
    index(prog.main_body);
    for (const auto& cls : prog.classes)
      for (const auto& m : cls.methods) index(m.body);
  }

  RunResult run() {
    Frame main;
    main.serial = kMainFrame;
    allocate(main, prog_.main_locals);
    frames_.push_back(std::move(main));
    try {
      exec_body(prog_.main_body);
    } catch (const Abort& a) {
      result_.status = a.status;
      result_.message = a.message;
      result_.stopped_at = cur_stmt_;
    }
    result_.steps = steps_;
    return std::move(result_);
  }

 private:
  void emit(ExecEvent ev) { sink_(ev); }

  Frame& top() { return frames_.back(); }

  void allocate(Frame& f, const std::vector<LocalDecl>& decls) {
    for (const auto& d : decls) {
      Slot slot;
      if (const ClassDef* cls = prog_.find_class(d.type.name))
        slot.object = ObjectValue{cls, std::vector<Value>(cls->members.size())};
      f.vars.emplace(d.name, std::move(slot));
    }
  }

  void step(StmtId id) {
    cur_stmt_ = id;
    if (steps_ >= opts_.step_budget)
      throw Abort{RunStatus::BudgetExceeded,
                  "step budget of " + std::to_string(opts_.step_budget) + " exhausted"};
    ++steps_;
  }

  RuntimeVar runtime_var(const VarRef& v) {
    Frame& f = top();
    switch (v.scope) {
      case VarScope::Local: return {f.serial, v.base, ""};
      case VarScope::ObjectMember: return {f.serial, v.base, *v.member};
      case VarScope::ReceiverMember: return {f.receiver_id.frame, f.receiver_id.name, *v.member};
    }
    return {};
  }

  std::vector<RuntimeVar> runtime_vars(const std::vector<VarRef>& refs) {
    std::vector<RuntimeVar> out;
    out.reserve(refs.size());
    for (const auto& r : refs) out.push_back(runtime_var(r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Value& storage(const VarRef& v) {
    Frame& f = top();
    switch (v.scope) {
      case VarScope::Local: return f.vars.find(v.base)->second.scalar;
      case VarScope::ObjectMember: return f.vars.find(v.base)->second.object->member(*v.member);
      case VarScope::ReceiverMember: return f.receiver->member(*v.member);
    }
    throw Abort{RunStatus::Completed, "unreachable"};
  }

  ObjectValue& object(const VarRef& v) { return *top().vars.find(v.base)->second.object; }

  std::int64_t read(const VarRef& v) {
    Value& slot = storage(v);
    if (!slot) {
      ++result_.warnings;
      emit(Warning{cur_stmt_, "read of uninitialized '" + runtime_var(v).display() + "', using 0"});
      return 0;
    }
    return *slot;
  }

  std::int64_t eval(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> std::int64_t {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLiteral>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            return read(n);
          } else if constexpr (std::is_same_v<T, NegateExpr>) {
            return wrap(0 - static_cast<std::uint64_t>(eval(*n.operand)));
          } else {
            std::int64_t a = eval(*n.lhs);
            std::int64_t b = eval(*n.rhs);
            auto ua = static_cast<std::uint64_t>(a);
            auto ub = static_cast<std::uint64_t>(b);
            switch (n.op) {
              case BinaryOp::Add: return wrap(ua + ub);
              case BinaryOp::Sub: return wrap(ua - ub);
              case BinaryOp::Mul: return wrap(ua * ub);
              case BinaryOp::Div:
                if (b == 0) throw Abort{RunStatus::DivisionByZero, "division by zero"};
                if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return a;
                return a / b;
              case BinaryOp::Lt: return a < b;
              case BinaryOp::Gt: return a > b;
              case BinaryOp::Le: return a <= b;
              case BinaryOp::Ge: return a >= b;
              case BinaryOp::Eq: return a == b;
              case BinaryOp::Ne: return a != b;
            }
            return 0;
          }
        },
        e.node);
  }

  StmtExecuted executed(const Stmt& s) {
    const DefUse& du = def_use_[s.id - 1];
    return StmtExecuted{s.id, runtime_vars(du.defs), runtime_vars(du.uses), {}};
  }

  // Returns true when a `return` statement finished the current procedure.
  bool exec_body(const std::vector<Stmt>& body) {
    for (const auto& s : body)
      if (exec(s)) return true;
    return false;
  }

  bool exec(const Stmt& s) {
    if (!s.is_executable()) return false;  // locals are allocated on frame entry
    step(s.id);
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            std::int64_t v = eval(n.value);
            storage(n.target) = v;
            emit(executed(s));
          } else if constexpr (std::is_same_v<T, InputStmt>) {
            if (next_input_ >= inputs_.size())
              throw Abort{RunStatus::InputExhausted,
                          "input exhausted after " + std::to_string(inputs_.size()) + " values"};
            std::int64_t v = inputs_[next_input_++];
            storage(n.target) = v;
            emit(InputConsumed{s.id, v});
            emit(executed(s));
          } else if constexpr (std::is_same_v<T, OutputStmt>) {
            if (const auto* e = std::get_if<Expr>(&n.value)) {
              std::int64_t v = eval(*e);
              result_.outputs.push_back(v);
              emit(OutputProduced{s.id, v});
            }
            emit(executed(s));
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            bool taken = eval(n.cond) != 0;
            emit(executed(s));
            return exec_body(taken ? n.then_body : n.else_body);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            for (bool first = true;; first = false) {
              if (!first) step(s.id);
              bool taken = eval(n.cond) != 0;
              emit(executed(s));
              if (!taken) {
                emit(LoopExited{s.id});
                return false;
              }
              if (exec_body(n.body)) return true;
            }
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            exec_call(s, n);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            StmtExecuted ev = executed(s);
            emit(AboutToReturn{s.id, ev.uses});
            if (n.value) top().return_value = eval(*n.value);
            emit(std::move(ev));
            return true;
          }
          return false;
        },
        s.node);
  }

  void exec_call(const Stmt& s, const CallStmt& call) {
    const ClassDef* cls = prog_.find_class(call.receiver_class);
    const MethodDef& method = cls->methods[call.method_index];
    Frame& caller = top();
    const std::uint32_t serial = ++last_serial_;

    Frame callee;
    callee.serial = serial;
    callee.method = &method;
    callee.receiver = &object(call.receiver);
    callee.receiver_id = runtime_var(call.receiver);

    struct RefParam {
      RuntimeVar formal;
      RuntimeVar actual;
      Value* target;
      bool object_member;
      std::string member;
    };
    std::vector<RefParam> refs;

    const std::string callee_name = cls->name + "::" + method.signature.to_string();
    const RuntimeVar receiver_id = callee.receiver_id;

    CallEntered entered;
    entered.site = s.id;
    entered.callee = callee_name;
    entered.frame = serial;
    entered.receiver = callee.receiver_id;

    for (std::size_t i = 0; i < method.formals.size(); ++i) {
      const Formal& f = method.formals[i];
      const Expr& arg = call.args[i];
      Slot slot;
      if (f.type.is_int()) {
        std::vector<VarRef> vars;
        collect_vars(arg, vars);
        if (f.by_ref) {
          const auto& lv = std::get<VarRef>(arg.node);
          Value& target = storage(lv);
          slot.scalar = target;
          refs.push_back({{serial, f.name, ""}, runtime_var(lv), &target, false, ""});
        } else {
          slot.scalar = eval(arg);
        }
        entered.bindings.push_back({{serial, f.name, ""}, runtime_vars(vars), f.by_ref});
      } else {
        const auto& ov = std::get<VarRef>(arg.node);
        ObjectValue& src = object(ov);
        slot.object = src;
        for (const auto& m : src.cls->members) {
          RuntimeVar actual{caller.serial, ov.base, m};
          entered.bindings.push_back({{serial, f.name, m}, {actual}, f.by_ref});
          if (f.by_ref) refs.push_back({{serial, f.name, m}, actual, &src.member(m), true, m});
        }
      }
      callee.vars.emplace(f.name, std::move(slot));
    }
    allocate(callee, method.locals);

    if (frames_.size() >= opts_.max_call_depth)
      throw Abort{RunStatus::CallDepthExceeded,
                  "call depth limit of " + std::to_string(opts_.max_call_depth) + " reached"};

    emit(std::move(entered));
    frames_.push_back(std::move(callee));

    if (!exec_body(method.body)) emit(AboutToReturn{std::nullopt, {}});
    cur_stmt_ = s.id;

    Frame& done = top();
    Returned ret;
    ret.site = s.id;
    ret.frame = serial;
    for (const auto& r : refs) {
      const Slot& slot = done.vars.find(r.formal.name)->second;
      *r.target = r.object_member ? slot.object->member(r.member) : slot.scalar;
      ret.copybacks.push_back({r.formal, r.actual});
    }
    Value result = done.return_value;
    for (const auto& [name, slot] : done.vars) {
      if (slot.object) {
        for (const auto& m : slot.object->cls->members) ret.reset.push_back({serial, name, m});
      } else {
        ret.reset.push_back({serial, name, ""});
      }
    }
    frames_.pop_back();

    if (call.into) {
      if (!result) {
        ++result_.warnings;
        emit(Warning{s.id, callee_name + " returned no value, using 0"});
      }
      storage(*call.into) = result.value_or(0);
      ret.into = runtime_var(*call.into);
    }
    emit(std::move(ret));

    StmtExecuted ev = executed(s);
    for (const auto& m : cls->members)
      ev.receiver.push_back({receiver_id.frame, receiver_id.name, m});
    emit(std::move(ev));
  }

  const Program& prog_;
  std::span<const std::int64_t> inputs_;
  const EventSink& sink_;
  RunOptions opts_;
  std::vector<DefUse> def_use_;
  std::deque<Frame> frames_;
  std::size_t next_input_ = 0;
  std::uint64_t steps_ = 0;
  std::uint32_t last_serial_ = kMainFrame;
  StmtId cur_stmt_ = 0;
  RunResult result_;
};

}  // namespace

RunResult execute(const Program& program, std::span<const std::int64_t> inputs,
                  const EventSink& sink, const RunOptions& options) {
  return Interpreter(program, inputs, sink, options).run();
}

Trace run(const Program& program, std::span<const std::int64_t> inputs,
          const RunOptions& options) {
  Trace trace;
  EventSink sink = [&](const ExecEvent& ev) { trace.events.push_back(ev); };
  trace.result = execute(program, inputs, sink, options);
  return trace;
}

}  // namespace dynslice
