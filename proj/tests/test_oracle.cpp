#include <doctest.h>

#include <set>

#include "dynslice/oracle.hpp"
#include "dynslice/progen.hpp"
#include "support.hpp"

using namespace dynslice;
using dynslice::testing::kSampleInputs;
using dynslice::testing::Pipeline;
using dynslice::testing::read_fixture;

namespace {

std::size_t stmt_events(const Trace& t) {
  std::size_t n = 0;
  for (const auto& ev : t.events) n += std::holds_alternative<StmtExecuted>(ev);
  return n;
}

}  // namespace

TEST_CASE("input feeding output") {
  Pipeline pl("void main() { int p; #1: cin >> p; #2: cout << p; }", {7});
  REQUIRE(pl.ddg.node_count() == 2);
  CHECK(pl.ddg.node(0).stmt == 1);
  auto edges = pl.ddg.edges(1);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].target == 0);
  CHECK(edges[0].kind == EdgeKind::Data);
  CHECK(pl.ddg.backward_slice(2, "p") == StmtSet{1});
}

TEST_CASE("sample trace: node 21") {
  Pipeline pl(read_fixture("sample.moo"), kSampleInputs);
  const Ddg& g = pl.ddg;
  auto occ21 = g.occurrences(21);
  REQUIRE(occ21.size() == 1);
  auto occ17 = g.occurrences(17);
  REQUIRE(occ17.size() == 2);
  auto occ13 = g.occurrences(13);
  REQUIRE(occ13.size() == 1);

  std::set<std::uint32_t> data, control;
  for (const auto& e : g.edges(occ21[0])) (e.kind == EdgeKind::Data ? data : control).insert(e.target);
  // tp1.a and tp2.a were last set by get() on T1 and on T2 respectively.
  CHECK(data.count(occ17[0]) == 1);
  CHECK(data.count(occ17[1]) == 1);
  CHECK(control == std::set<std::uint32_t>{occ13[0]});
}

TEST_CASE("empty trace") {
  Program p = parse("void main(){}");
  Cdg cdg = build_cdg(p);
  Ddg g = build_ddg(cdg, {});
  CHECK(g.node_count() == 0);
  CHECK(g.criteria().empty());
}

TEST_CASE("backward slices on the sample trace") {
  Pipeline pl(read_fixture("sample.moo"), kSampleInputs);
  CHECK(pl.ddg.backward_slice(16, "T4.a") == StmtSet{2, 5, 8, 11, 13, 15, 17, 21, 23});
  CHECK(pl.ddg.backward_slice(2, "p") == StmtSet{2});
  CHECK(pl.ddg.backward_slice(4, "q") == StmtSet{4});
  CHECK_THROWS_AS(pl.ddg.backward_slice(99, "x"), CriterionError);
  CHECK_THROWS_AS(pl.ddg.backward_slice(2, "q"), CriterionError);
}

TEST_CASE("one node per executed statement, edges point backwards") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto gp = generate_program(seed);
    Pipeline pl(gp.source, gp.inputs);
    INFO("seed " << seed);
    CHECK(pl.ddg.node_count() == stmt_events(pl.trace));
    bool backwards = true;
    for (std::uint32_t i = 0; i < pl.ddg.node_count(); ++i)
      for (const auto& e : pl.ddg.edges(i)) backwards = backwards && e.target < i;
    CHECK(backwards);
  }
}

TEST_CASE("malformed traces are rejected") {
  Program p = parse(read_fixture("sample.moo"));
  Cdg cdg = build_cdg(p);
  SUBCASE("unknown statement") {
    std::vector<ExecEvent> t{StmtExecuted{99, {}, {}, {}}};
    CHECK_THROWS_AS(build_ddg(cdg, t), OracleError);
  }
  SUBCASE("return without a call") {
    std::vector<ExecEvent> t{Returned{5, 2, {}, {}, std::nullopt}};
    CHECK_THROWS_AS(build_ddg(cdg, t), OracleError);
  }
}
