#include <doctest.h>

#include <limits>

#include "dynslice/interpreter.hpp"
#include "dynslice/progen.hpp"
#include "support.hpp"

using namespace dynslice;
using dynslice::testing::kSampleInputs;
using dynslice::testing::read_fixture;

namespace {

template <typename T>
std::vector<T> events_of(const Trace& t) {
  std::vector<T> out;
  for (const auto& ev : t.events)
    if (const T* e = std::get_if<T>(&ev)) out.push_back(*e);
  return out;
}

Trace run_src(const std::string& src, std::vector<std::int64_t> inputs, RunOptions opts = {}) {
  return run(parse(src), inputs, opts);
}

}  // namespace

TEST_CASE("sample program output and event order") {
  Program p = parse(read_fixture("sample.moo"));
  Trace t = run(p, kSampleInputs);
  REQUIRE(t.result.ok());
  CHECK(t.result.outputs == std::vector<std::int64_t>{1, 2, 3, 4, 4, 6, 9, 11});
  CHECK(t.result.warnings == 0);

  // Main statements complete in order 1..16, with method bodies nested inside
  // the call that ran them.
  std::vector<StmtId> completed;
  for (const auto& e : events_of<StmtExecuted>(t)) completed.push_back(e.id);
  CHECK(completed == std::vector<StmtId>{1, 2, 3, 4, 17, 18, 5, 19, 20, 6, 7, 8, 9, 10, 17, 18,
                                         11, 19, 20, 12, 21, 22, 13, 19, 20, 14, 23, 24, 15, 19, 20, 16});

  auto calls = events_of<CallEntered>(t);
  REQUIRE(calls.size() == 8);
  CHECK(calls[0].callee == "test::get(int,int)");
  CHECK(calls[0].receiver.display() == "T1");
  CHECK(calls[4].site == 13);
  CHECK(calls[4].callee == "test::add(test,test)");
  CHECK(calls[6].site == 15);
  CHECK(calls[6].callee == "test::add(test,int)");
  REQUIRE(calls[6].bindings.size() == 3);
  CHECK(calls[6].bindings[2].formal.display() == "s@8");
  CHECK(calls[6].bindings[2].sources.empty());
}

TEST_CASE("input and output events") {
  Trace t = run_src("void main() { int p; #1: cin >> p; #2: cout << p; }", {7});
  REQUIRE(t.events.size() == 4);
  CHECK(std::get<InputConsumed>(t.events[0]) == InputConsumed{1, 7});
  CHECK(std::get<StmtExecuted>(t.events[1]).id == 1);
  CHECK(std::get<OutputProduced>(t.events[2]) == OutputProduced{2, 7});
  CHECK(std::get<StmtExecuted>(t.events[3]).id == 2);
}

TEST_CASE("zero-iteration loop") {
  Trace t = run_src("void main() { int p; #1: while (p > 0) { #2: p = p - 1; } }", {});
  REQUIRE(t.result.ok());
  std::vector<std::string> kinds;
  for (const auto& ev : t.events) kinds.emplace_back(event_name(ev));
  // The read of the never-assigned p is reported, then defaults to 0.
  CHECK(kinds == std::vector<std::string>{"Warning", "StmtExecuted", "LoopExited"});
  CHECK(std::get<LoopExited>(t.events[2]).id == 1);
}

TEST_CASE("loop exits fire every time the condition fails") {
  Trace t = run_src(
      "void main() { int i, j; i = 2; while (i > 0) { j = 2; while (j > 0) { j = j - 1; } i = i - 1; } }",
      {});
  std::vector<StmtId> exits;
  for (const auto& e : events_of<LoopExited>(t)) exits.push_back(e.id);
  CHECK(exits == std::vector<StmtId>{4, 4, 2});
}

TEST_CASE("by-reference parameters copy back on return") {
  Trace t = run_src(
      "class S { int k; public: void swap(int &a, int &b) { int t; t = a; a = b; b = t; } };"
      "void main() { S s; int x, y; cin >> x; cin >> y; s.swap(x, y); cout << x; cout << y; }",
      {1, 2});
  CHECK(t.result.outputs == std::vector<std::int64_t>{2, 1});
  auto rets = events_of<Returned>(t);
  REQUIRE(rets.size() == 1);
  REQUIRE(rets[0].copybacks.size() == 2);
  CHECK(rets[0].copybacks[0].actual.display() == "x");
}

TEST_CASE("object arguments are copied; the receiver is shared") {
  Trace t = run_src(
      "class A { int a; public: void f(A o) { o.a = 5; a = o.a + 1; } };"
      "void main() { A x, y; x.a = 1; y.a = 2; x.f(y); cout << x.a; cout << y.a; }",
      {});
  CHECK(t.result.outputs == std::vector<std::int64_t>{6, 2});
}

TEST_CASE("call with a result") {
  Trace t = run_src(
      "class A { int a; public: int f(int x) { if (x > 0) { return x + a; } return 0 - 1; } };"
      "void main() { A o; int v; o.a = 10; v = o.f(3); cout << v; v = o.f(0); cout << v; }",
      {});
  CHECK(t.result.outputs == std::vector<std::int64_t>{13, -1});
  auto rets = events_of<AboutToReturn>(t);
  REQUIRE(rets.size() == 2);
  CHECK(rets[0].id == StmtId{2});
  CHECK(rets[1].id == StmtId{3});
}

TEST_CASE("runtime failures stop the run with a status") {
  SUBCASE("input exhausted") {
    Trace t = run_src("void main() { int p; cin >> p; cin >> p; }", {1});
    CHECK(t.result.status == RunStatus::InputExhausted);
    CHECK(t.result.stopped_at == 2);
  }
  SUBCASE("division by zero") {
    Trace t = run_src("void main() { int p; p = 0; p = 1 / p; }", {});
    CHECK(t.result.status == RunStatus::DivisionByZero);
    CHECK(t.result.stopped_at == 2);
  }
  SUBCASE("step budget") {
    RunOptions opts;
    opts.step_budget = 50;
    Trace t = run_src("void main() { int p; p = 1; while (p > 0) { p = p + 1; } }", {}, opts);
    CHECK(t.result.status == RunStatus::BudgetExceeded);
    CHECK(t.result.steps == 50);
  }
  SUBCASE("unbounded recursion hits the call depth limit") {
    Trace t = run_src(
        "class A { int a; public: void f(A o, int n) { if (n > 0) { a = a + 1; o.f(o, n - 1); } } };"
        "void main() { A o; int n; cin >> n; o.f(o, n); }",
        {100000}, RunOptions{10'000'000, 1000});
    CHECK(t.result.status == RunStatus::CallDepthExceeded);
    CHECK(events_of<CallEntered>(t).size() == 999);
    // The stream stops where the run stopped; nothing is unwound.
    CHECK(events_of<Returned>(t).empty());
  }
  SUBCASE("a cut-off trace is a prefix of the full one") {
    RunOptions opts;
    opts.step_budget = 3;
    Trace t = run_src(
        "class A { int a; public: void f() { a = 1; a = 2; a = 3; } };"
        "void main() { A o; o.f(); }",
        {}, opts);
    CHECK(t.result.status == RunStatus::BudgetExceeded);
    Trace full = run_src(
        "class A { int a; public: void f() { a = 1; a = 2; a = 3; } };"
        "void main() { A o; o.f(); }",
        {});
    REQUIRE(full.events.size() > t.events.size());
    CHECK(std::equal(t.events.begin(), t.events.end(), full.events.begin()));
  }
}

TEST_CASE("arithmetic wraps and truncates toward zero") {
  Trace t = run_src(
      "void main() { int a; a = 9223372036854775807; a = a + 1; cout << a; cout << 0 - 7 / 2; "
      "cout << (0 - 7) / 2; cout << 3 < 4; cout << 3 == 4; }",
      {});
  CHECK(t.result.outputs ==
        std::vector<std::int64_t>{std::numeric_limits<std::int64_t>::min(), -3, -3, 1, 0});
}

TEST_CASE("determinism and stack discipline on generated programs") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto g = generate_program(seed);
    Program p = parse(g.source);
    Trace a = run(p, g.inputs);
    Trace b = run(p, g.inputs);
    INFO("seed " << seed);
    CHECK(a.events == b.events);
    std::vector<std::uint32_t> stack;
    bool balanced = true;
    for (const auto& ev : a.events) {
      if (const auto* c = std::get_if<CallEntered>(&ev)) stack.push_back(c->frame);
      if (const auto* r = std::get_if<Returned>(&ev)) {
        balanced = balanced && !stack.empty() && stack.back() == r->frame;
        if (!stack.empty()) stack.pop_back();
      }
    }
    CHECK(balanced);
    CHECK(stack.empty());
  }
}
