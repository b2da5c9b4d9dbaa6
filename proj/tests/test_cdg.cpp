#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "dynslice/cdg.hpp"
#include "support.hpp"

using namespace dynslice;
using dynslice::testing::read_fixture;

namespace {

std::vector<std::string> names(const std::vector<VarRef>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.display());
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("sample program control parents") {
  Cdg cdg = build_cdg(parse(read_fixture("sample.moo")));
  REQUIRE(cdg.size() == 24);
  for (StmtId id = 1; id <= 16; ++id) {
    CHECK_FALSE(cdg.control_parent(id).has_value());
    CHECK(cdg.procedures()[cdg.node(id).procedure].name == "main");
  }
  for (StmtId id : {17u, 18u}) {
    CHECK_FALSE(cdg.control_parent(id).has_value());
    CHECK(cdg.procedures()[cdg.node(id).procedure].entry_label() == "entry:test::get(int,int)");
  }
  CHECK(cdg.procedures()[cdg.node(21).procedure].name == "test::add(test,test)");
  CHECK(cdg.procedures()[cdg.node(23).procedure].name == "test::add(test,int)");
  CHECK(cdg.node(13).kind == NodeKind::Call);
  CHECK(cdg.node(2).kind == NodeKind::Input);
  CHECK(cdg.node(19).kind == NodeKind::Output);
  CHECK_THROWS_AS(cdg.node(25), std::out_of_range);
}

TEST_CASE("loops and branches") {
  SUBCASE("while") {
    Cdg cdg = build_cdg(parse("void main() { int p; #1: while (p > 0) { #2: p = p - 1; } }"));
    CHECK(cdg.node(1).kind == NodeKind::TestLoop);
    CHECK(cdg.control_parent(2) == StmtId{1});
  }
  SUBCASE("if/else") {
    Cdg cdg = build_cdg(
        parse("void main() { int c; #1: if (c > 0) { #2: c = 1; } else { #3: c = 2; } }"));
    CHECK(cdg.node(1).kind == NodeKind::Test);
    CHECK(cdg.control_parent(2) == StmtId{1});
    CHECK(cdg.control_parent(3) == StmtId{1});
    CHECK_FALSE(cdg.control_parent(1).has_value());
  }
  SUBCASE("nesting") {
    Cdg cdg = build_cdg(parse(
        "void main() { int c; while (c > 0) { if (c > 1) { while (c > 2) { c = c - 1; } } c = c - 1; } }"));
    CHECK(cdg.control_parent(2) == StmtId{1});
    CHECK(cdg.control_parent(3) == StmtId{2});
    CHECK(cdg.control_parent(4) == StmtId{3});
    CHECK(cdg.control_parent(5) == StmtId{1});
  }
}

TEST_CASE("def_use") {
  Program p = parse(read_fixture("sample.moo"));
  Cdg cdg = build_cdg(p);
  CHECK(names(cdg.node(17).vars.defs) == std::vector<std::string>{"this.a"});
  CHECK(names(cdg.node(17).vars.uses) == std::vector<std::string>{"x"});
  CHECK(names(cdg.node(2).vars.defs) == std::vector<std::string>{"p"});
  CHECK(cdg.node(2).vars.uses.empty());
  CHECK(cdg.node(13).vars.defs.empty());
  CHECK(names(cdg.node(13).vars.uses) == std::vector<std::string>{"T1.a", "T1.b", "T2.a", "T2.b"});
  CHECK(names(cdg.node(15).vars.uses) == std::vector<std::string>{"T3.a", "T3.b"});
  CHECK(names(cdg.node(5).vars.uses) == std::vector<std::string>{"p", "q"});
  CHECK(cdg.node(1).vars.uses.empty());

  SUBCASE("a variable can be both defined and used") {
    Cdg c = build_cdg(parse("void main() { int a; a = a + 1; }"));
    CHECK(names(c.node(1).vars.defs) == std::vector<std::string>{"a"});
    CHECK(names(c.node(1).vars.uses) == std::vector<std::string>{"a"});
  }
  SUBCASE("call result is a definition") {
    Cdg c = build_cdg(parse(
        "class A { int a; public: int f(int &x) { x = a; return x; } };"
        "void main() { A o; int v, w; v = o.f(w); }"));
    CHECK(names(c.node(3).vars.defs) == std::vector<std::string>{"v"});
    CHECK(names(c.node(3).vars.uses) == std::vector<std::string>{"w"});
  }
}

TEST_CASE("main objects") {
  Cdg cdg = build_cdg(parse(read_fixture("sample.moo")));
  CHECK(cdg.main_object_members("T1") == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(cdg.main_object_members("p").has_value());
  CHECK_FALSE(cdg.main_object_members("T9").has_value());
}

TEST_CASE("export_dot") {
  SUBCASE("empty program has only the main entry") {
    std::string dot = export_dot(build_cdg(parse("void main(){}")));
    CHECK(count(dot, "[") == 1);
    CHECK(count(dot, "entry:main") == 2);  // id and label
    CHECK(count(dot, "->") == 0);
  }
  SUBCASE("sample program has 24 statement nodes and 5 entries") {
    std::string dot = export_dot(build_cdg(parse(read_fixture("sample.moo"))));
    CHECK(count(dot, "shape=box") == 5);
    for (int i = 1; i <= 24; ++i) CHECK(count(dot, "\n  n" + std::to_string(i) + " [") == 1);
    CHECK(count(dot, "->") == 24);
  }
  SUBCASE("if example") {
    std::string dot =
        export_dot(build_cdg(parse("void main() { int c; #1: if (c > 0) { #2: c = 1; } else { #3: c = 2; } }")));
    CHECK(count(dot, "n2 -> n1;") == 1);
    CHECK(count(dot, "n3 -> n1;") == 1);
    CHECK(count(dot, "n1 -> \"entry:main\";") == 1);
    CHECK(count(dot, "->") == 3);
  }
  SUBCASE("deterministic") {
    std::string src = read_fixture("sample.moo");
    CHECK(export_dot(build_cdg(parse(src))) == export_dot(build_cdg(parse(src))));
  }
}

TEST_CASE("export_json") {
  auto j = nlohmann::json::parse(export_json(build_cdg(parse(read_fixture("sample.moo")))));
  REQUIRE(j.is_array());
  CHECK(j.size() == 29);
  CHECK(j[0]["id"] == "entry:main");
  CHECK(j[0]["parent"].is_null());
  auto n13 = std::find_if(j.begin(), j.end(), [](const auto& e) { return e["id"] == 13; });
  REQUIRE(n13 != j.end());
  CHECK((*n13)["kind"] == "Call");
  CHECK((*n13)["parent"] == "entry:main");
  CHECK((*n13)["uses"] == nlohmann::json({"T1.a", "T1.b", "T2.a", "T2.b"}));
}
