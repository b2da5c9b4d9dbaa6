#include "dynslice/progen.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace dynslice {

namespace {

enum class ParamKind { Int, IntRef, Object };

struct ParamSpec {
  ParamKind kind;
  int cls = 0;  // for Object
};

struct MethodSpec {
  int cls = 0;
  std::string name;
  std::vector<ParamSpec> params;
  bool returns_int = false;
};

struct Scope {
  int method = -1;                         // -1 for main
  std::vector<std::string> assignable;     // int lvalues
  std::vector<std::string> readable;       // assignable plus loop counters
  std::vector<std::string> ref_passable;   // plain scalar names
  std::map<int, std::vector<std::string>> objects;  // class -> object variable names
  bool returns_int = false;
};

std::string class_name(int c) { return "K" + std::to_string(c); }

class Generator {
 public:
  Generator(std::uint64_t seed, const GenOptions& opts) : rng_(seed), opts_(opts) {}

  GeneratedProgram run() {
    plan_classes();
    plan_methods();

    // Methods share at most half of the statement limit; main gets the rest.
    const int method_share = static_cast<int>(opts_.max_statements / 2);
    for (std::size_t i = 0; i < methods_.size(); ++i)
      method_budget_.push_back(std::max(1, std::min(pick(3, 7), method_share / static_cast<int>(methods_.size()))));

    for (int c = 0; c < class_count_; ++c) emit_class(c);
    remaining_ = static_cast<int>(opts_.max_statements) - static_cast<int>(used_);
    emit_main();

    GeneratedProgram out;
    out.source = out_.str();
    std::uniform_int_distribution<int> value(-5, 9);
    for (std::size_t i = 0; i < opts_.input_count; ++i) out.inputs.push_back(value(rng_));
    return out;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return pick(1, 100) <= percent; }
  template <typename T>
  const T& choose(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }

  void plan_classes() {
    class_count_ = pick(1, 2);
    for (int c = 0; c < class_count_; ++c) member_count_.push_back(pick(1, 3));
  }

  ParamSpec random_param(bool allow_object) {
    int r = pick(0, allow_object ? 2 : 1);
    if (r == 2) return {ParamKind::Object, pick(0, class_count_ - 1)};
    return {r == 0 ? ParamKind::Int : ParamKind::IntRef, 0};
  }

  static bool same_types(const MethodSpec& a, const MethodSpec& b) {
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      bool ai = a.params[i].kind != ParamKind::Object;
      bool bi = b.params[i].kind != ParamKind::Object;
      if (ai != bi) return false;
      if (!ai && a.params[i].cls != b.params[i].cls) return false;
    }
    return true;
  }

  void plan_methods() {
    MethodSpec first{0, "f", {}, chance(50)};
    for (int i = pick(1, 3); i > 0; --i) first.params.push_back(random_param(true));
    MethodSpec second{0, "f", {}, chance(50)};
    // The overload always takes an object so the pair exercises dispatch on
    // argument types, not just arity.
    do {
      second.params.clear();
      second.params.push_back({ParamKind::Object, pick(0, class_count_ - 1)});
      for (int i = pick(0, 2); i > 0; --i) second.params.push_back(random_param(false));
      if (chance(50)) std::swap(second.params.front(), second.params.back());
    } while (same_types(first, second));
    methods_.push_back(first);
    methods_.push_back(second);
    if (chance(70)) {
      MethodSpec third{pick(0, class_count_ - 1), "g", {}, chance(60)};
      for (int i = pick(0, 2); i > 0; --i) third.params.push_back(random_param(true));
      methods_.push_back(third);
    }
  }

  void line(int depth, const std::string& text) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
    out_ << text << "\n";
  }

  // Consumes one statement from the budget.
  void stmt_line(int depth, const std::string& text) {
    line(depth, text);
    ++used_;
    --remaining_;
  }

  std::string literal() { return std::to_string(pick(0, 9)); }

  std::string operand(const Scope& s) {
    if (s.readable.empty() || chance(30)) return literal();
    return choose(s.readable);
  }

  std::string expr(const Scope& s, int depth = 0) {
    if (depth >= 2 || chance(40)) return operand(s);
    static const std::vector<std::string> ops = {"+", "-", "*", "+", "-", "<", ">",
                                                 "<=", ">=", "==", "!="};
    if (chance(8)) return "(" + expr(s, depth + 1) + ") / " + std::to_string(pick(1, 4));
    return expr(s, depth + 1) + " " + choose(ops) + " " + operand(s);
  }

  std::string cond(const Scope& s) {
    static const std::vector<std::string> rel = {"<", ">", "<=", ">=", "==", "!="};
    return operand(s) + " " + choose(rel) + " " + operand(s);
  }

  std::vector<int> callable(const Scope& s) const {
    std::vector<int> out;
    int limit = s.method < 0 ? static_cast<int>(methods_.size()) : s.method;
    for (int i = 0; i < limit; ++i) {
      auto it = s.objects.find(methods_[static_cast<std::size_t>(i)].cls);
      if (it != s.objects.end() && !it->second.empty()) out.push_back(i);
    }
    return out;
  }

  std::optional<std::string> call_text(const Scope& s, int mi, bool want_value) {
    const MethodSpec& m = methods_[static_cast<std::size_t>(mi)];
    std::vector<std::string> refs = s.ref_passable;
    std::shuffle(refs.begin(), refs.end(), rng_);
    std::string args;
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      const ParamSpec& p = m.params[i];
      std::string a;
      if (p.kind == ParamKind::Int) {
        a = expr(s);
      } else if (p.kind == ParamKind::IntRef) {
        if (refs.empty()) return std::nullopt;
        a = refs.back();
        refs.pop_back();
      } else {
        auto it = s.objects.find(p.cls);
        if (it == s.objects.end() || it->second.empty()) return std::nullopt;
        a = choose(it->second);
      }
      args += (i ? ", " : "") + a;
    }
    std::string recv = choose(s.objects.at(m.cls));
    std::string text = recv + "." + m.name + "(" + args + ");";
    if (want_value) {
      // The target must not be a by-reference argument of the same call.
      std::vector<std::string> targets;
      for (const auto& t : s.assignable)
        if (std::find(refs.begin(), refs.end(), t) != refs.end() ||
            std::find(s.ref_passable.begin(), s.ref_passable.end(), t) == s.ref_passable.end())
          targets.push_back(t);
      if (targets.empty()) return std::nullopt;
      text = choose(targets) + " = " + text;
    }
    return text;
  }

  void statement(Scope& s, int depth, int nest) {
    const bool can_nest = nest < opts_.max_depth;
    for (int attempt = 0; attempt < 8; ++attempt) {
      int r = pick(0, 99);
      if (r < 25) {
        if (s.assignable.empty()) continue;
        stmt_line(depth, choose(s.assignable) + " = " + expr(s) + ";");
      } else if (r < 33) {
        if (s.assignable.empty()) continue;
        stmt_line(depth, "cin >> " + choose(s.assignable) + ";");
      } else if (r < 43) {
        stmt_line(depth, "cout << " + expr(s) + ";");
      } else if (r < 58) {
        if (!can_nest || remaining_ < 2) continue;
        if_stmt(s, depth, nest);
      } else if (r < 70) {
        if (!can_nest || remaining_ < 4) continue;
        while_stmt(s, depth, nest);
      } else if (r < 94) {
        auto targets = callable(s);
        if (targets.empty()) continue;
        int mi = choose(targets);
        bool value = methods_[static_cast<std::size_t>(mi)].returns_int && chance(60);
        auto text = call_text(s, mi, value);
        if (!text) continue;
        stmt_line(depth, *text);
      } else {
        if (s.method < 0 || nest == 0 || remaining_ < 1) continue;
        stmt_line(depth, s.returns_int ? "return " + expr(s) + ";" : "return;");
      }
      return;
    }
    stmt_line(depth, "cout << " + literal() + ";");
  }

  void block(Scope& s, int depth, int nest, int count) {
    for (int i = 0; i < count && remaining_ > 0; ++i) statement(s, depth, nest);
  }

  void if_stmt(Scope& s, int depth, int nest) {
    stmt_line(depth, "if (" + cond(s) + ") {");
    block(s, depth + 1, nest + 1, std::max(1, std::min(pick(1, 3), remaining_)));
    if (remaining_ > 0 && chance(50)) {
      line(depth, "} else {");
      block(s, depth + 1, nest + 1, std::max(1, std::min(pick(1, 2), remaining_)));
    }
    line(depth, "}");
  }

  void while_stmt(Scope& s, int depth, int nest) {
    std::string counter = "c" + std::to_string(nest);
    stmt_line(depth, counter + " = " + std::to_string(pick(0, 3)) + ";");
    stmt_line(depth, "while (" + counter + " > 0) {");
    remaining_ -= 1;  // reserve the decrement
    s.readable.push_back(counter);
    block(s, depth + 1, nest + 1, std::max(1, std::min(pick(1, 3), remaining_)));
    s.readable.pop_back();
    remaining_ += 1;
    stmt_line(depth + 1, counter + " = " + counter + " - 1;");
    line(depth, "}");
  }

  std::string counters_decl() const {
    std::string d = "int ";
    for (int i = 0; i < opts_.max_depth; ++i) d += (i ? ", c" : "c") + std::to_string(i);
    return d + ";";
  }

  void emit_class(int c) {
    line(0, "class " + class_name(c) + " {");
    std::string members = "  int ";
    for (int m = 0; m < member_count_[static_cast<std::size_t>(c)]; ++m)
      members += (m ? ", m" : "m") + std::to_string(m);
    line(0, members + ";");
    line(0, "public:");
    for (std::size_t i = 0; i < methods_.size(); ++i)
      if (methods_[i].cls == c) emit_method(static_cast<int>(i));
    line(0, "};");
    line(0, "");
  }

  void emit_method(int mi) {
    const MethodSpec& m = methods_[static_cast<std::size_t>(mi)];
    Scope s;
    s.method = mi;
    s.returns_int = m.returns_int;
    for (int i = 0; i < member_count_[static_cast<std::size_t>(m.cls)]; ++i) {
      s.assignable.push_back("m" + std::to_string(i));
    }
    std::string sig;
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      const ParamSpec& p = m.params[i];
      std::string name = "p" + std::to_string(i);
      if (p.kind == ParamKind::Object) {
        sig += (i ? ", " : "") + class_name(p.cls) + " " + name;
        s.objects[p.cls].push_back(name);
        for (int k = 0; k < member_count_[static_cast<std::size_t>(p.cls)]; ++k)
          s.assignable.push_back(name + ".m" + std::to_string(k));
      } else {
        sig += (i ? ", " : "") + std::string(p.kind == ParamKind::IntRef ? "int &" : "int ") + name;
        s.assignable.push_back(name);
        s.ref_passable.push_back(name);
      }
    }
    line(1, std::string(m.returns_int ? "int " : "void ") + m.name + "(" + sig + ") {");
    line(2, "int t0, t1;");
    line(2, counters_decl());
    for (const char* t : {"t0", "t1"}) {
      s.assignable.push_back(t);
      s.ref_passable.push_back(t);
    }
    if (mi > 0 && chance(60)) {
      int oc = methods_[static_cast<std::size_t>(pick(0, mi - 1))].cls;
      line(2, class_name(oc) + " w;");
      s.objects[oc].push_back("w");
      for (int k = 0; k < member_count_[static_cast<std::size_t>(oc)]; ++k)
        s.assignable.push_back("w.m" + std::to_string(k));
    }
    s.readable = s.assignable;
    remaining_ = method_budget_[static_cast<std::size_t>(mi)] - (m.returns_int ? 1 : 0);
    while (remaining_ > 0) statement(s, 2, 0);
    if (m.returns_int) stmt_line(2, "return " + expr(s) + ";");
    line(1, "}");
  }

  void emit_main() {
    line(0, "void main() {");
    Scope s;
    line(1, "int v0, v1, v2, v3;");
    line(1, counters_decl());
    for (int i = 0; i < 4; ++i) {
      std::string v = "v" + std::to_string(i);
      s.assignable.push_back(v);
      s.ref_passable.push_back(v);
    }
    int obj = 0;
    for (int c = 0; c < class_count_; ++c) {
      std::string decl = class_name(c) + " ";
      for (int k = 0; k < 2; ++k) {
        std::string o = "o" + std::to_string(obj++);
        decl += (k ? ", " : "") + o;
        s.objects[c].push_back(o);
        for (int mm = 0; mm < member_count_[static_cast<std::size_t>(c)]; ++mm)
          s.assignable.push_back(o + ".m" + std::to_string(mm));
      }
      line(1, decl + ";");
    }
    s.readable = s.assignable;
    stmt_line(1, "cin >> v0;");
    while (remaining_ > 0) statement(s, 1, 0);
    line(0, "}");
  }

  std::mt19937_64 rng_;
  GenOptions opts_;
  std::ostringstream out_;
  int class_count_ = 1;
  std::vector<int> member_count_;
  std::vector<MethodSpec> methods_;
  std::vector<int> method_budget_;
  std::size_t used_ = 0;
  int remaining_ = 0;
};

}  // namespace

GeneratedProgram generate_program(std::uint64_t seed, const GenOptions& options) {
  return Generator(seed, options).run();
}

}  // namespace dynslice
