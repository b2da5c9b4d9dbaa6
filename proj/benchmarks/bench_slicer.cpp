#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "dynslice/cdg.hpp"
#include "dynslice/frontend.hpp"
#include "dynslice/interpreter.hpp"
#include "dynslice/oracle.hpp"
#include "dynslice/progen.hpp"
#include "dynslice/slicer.hpp"

using namespace dynslice;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(DYNSLICE_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunOptions unbounded() {
  RunOptions o;
  o.step_budget = 1'000'000'000;
  return o;
}

void BM_Parse(benchmark::State& state) {
  const std::string src = fixture("sample.moo");
  for (auto _ : state) benchmark::DoNotOptimize(parse(src));
}
BENCHMARK(BM_Parse);

// Interpreter only, as the baseline for the two slicing engines.
void BM_Run(benchmark::State& state) {
  Program p = parse(fixture("streaming.moo"));
  std::vector<std::int64_t> inputs{state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(execute(p, inputs, [](const ExecEvent&) {}, unbounded()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Run)->RangeMultiplier(10)->Range(1'000, 100'000);

void BM_StreamingSlicer(benchmark::State& state) {
  Program p = parse(fixture("streaming.moo"));
  Cdg cdg = build_cdg(p);
  std::vector<std::int64_t> inputs{state.range(0)};
  std::size_t peak = 0;
  for (auto _ : state) {
    Slicer s(cdg);
    execute(p, inputs, s.sink(), unbounded());
    peak = s.stats().peak_cardinality;
  }
  state.counters["peak_cardinality"] = static_cast<double>(peak);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamingSlicer)->RangeMultiplier(10)->Range(1'000, 100'000);

void BM_OracleBuild(benchmark::State& state) {
  Program p = parse(fixture("streaming.moo"));
  Cdg cdg = build_cdg(p);
  std::vector<std::int64_t> inputs{state.range(0)};
  std::size_t nodes = 0;
  for (auto _ : state) {
    DdgBuilder b(cdg);
    execute(p, inputs, [&](const ExecEvent& e) { b.consume(e); }, unbounded());
    nodes = b.graph().node_count();
  }
  state.counters["ddg_nodes"] = static_cast<double>(nodes);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OracleBuild)->RangeMultiplier(10)->Range(1'000, 100'000);

void BM_DifferentialProgram(benchmark::State& state) {
  auto g = generate_program(static_cast<std::uint64_t>(state.range(0)));
  Program p = parse(g.source);
  Cdg cdg = build_cdg(p);
  for (auto _ : state) {
    Trace t = run(p, g.inputs);
    Slicer s(cdg);
    for (const auto& e : t.events) s.consume(e);
    Ddg d = build_ddg(cdg, t.events);
    for (const auto& c : s.criteria()) benchmark::DoNotOptimize(d.backward_slice(c.node, c.var));
  }
}
BENCHMARK(BM_DifferentialProgram)->Arg(1)->Arg(42);

}  // namespace

BENCHMARK_MAIN();
