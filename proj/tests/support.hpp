#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dynslice/cdg.hpp"
#include "dynslice/frontend.hpp"
#include "dynslice/interpreter.hpp"
#include "dynslice/oracle.hpp"
#include "dynslice/slicer.hpp"

namespace dynslice::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DYNSLICE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const std::vector<std::int64_t> kSampleInputs{1, 2, 3, 4};

// Program, graph, trace and both engines fed with that trace.
struct Pipeline {
  Program program;
  Cdg cdg;
  Trace trace;
  Slicer slicer;
  Ddg ddg;

  Pipeline(const std::string& source, std::vector<std::int64_t> inputs, RunOptions opts = {})
      : program(parse(source)),
        cdg(build_cdg(program)),
        trace(run(program, inputs, opts)),
        slicer(cdg),
        ddg(build_ddg(cdg, trace.events)) {
    slicer.init();
    for (const auto& ev : trace.events) slicer.consume(ev);
  }
  Pipeline(const Pipeline&) = delete;
};

inline Pipeline sample() { return Pipeline(read_fixture("sample.moo"), kSampleInputs); }

/// First criterion on which the engines disagree, as text; empty when none.
inline std::string first_mismatch(const Slicer& slicer, const Ddg& ddg) {
  auto ours = slicer.criteria();
  auto theirs = ddg.criteria();
  if (ours != theirs) return "criterion sets differ";
  for (const auto& c : ours) {
    StmtSet s = slicer.slice_of(c.node, c.var);
    StmtSet o = ddg.backward_slice(c.node, c.var);
    if (s != o)
      return "(" + std::to_string(c.node) + ", " + c.var + "): slicer " + s.to_string() +
             " oracle " + o.to_string();
  }
  return {};
}

}  // namespace dynslice::testing
