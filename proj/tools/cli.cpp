#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynslice/cdg.hpp"
#include "dynslice/frontend.hpp"
#include "dynslice/interpreter.hpp"
#include "dynslice/oracle.hpp"
#include "dynslice/progen.hpp"
#include "dynslice/slicer.hpp"
#include "dynslice/trace_io.hpp"

namespace dynslice::cli {

namespace {

constexpr std::uint64_t kDefaultBudget = 100000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string source_path;
  std::string inputs;
  std::string inputs_file;
  std::optional<std::uint64_t> budget;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t parse_int(std::string_view text, const std::string& what) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw UsageError("invalid " + what + " '" + std::string(text) + "'");
  return v;
}

std::vector<std::int64_t> parse_int_list(std::string text, const std::string& what) {
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_int(tok, what));
  return out;
}

// The comma-separated flag wins over the file.
std::vector<std::int64_t> load_inputs(const Common& c) {
  if (!c.inputs.empty()) return parse_int_list(c.inputs, "input");
  if (!c.inputs_file.empty()) return parse_int_list(read_file(c.inputs_file), "input");
  return {};
}

RunOptions run_options(const Common& c) {
  RunOptions opts;
  opts.step_budget = kDefaultBudget;
  if (const char* env = std::getenv("DYNSLICE_BUDGET"); env && *env) {
    std::int64_t v = parse_int(env, "DYNSLICE_BUDGET");
    if (v <= 0) throw UsageError("DYNSLICE_BUDGET must be positive");
    opts.step_budget = static_cast<std::uint64_t>(v);
  }
  if (c.budget) {
    if (*c.budget == 0) throw UsageError("--budget must be positive");
    opts.step_budget = *c.budget;
  }
  return opts;
}

Program load_program(const std::string& path) { return parse(read_file(path)); }

void report_run(const RunResult& r, std::ostream& err) {
  if (r.ok()) return;
  err << "runtime error: " << to_string(r.status);
  if (r.stopped_at) err << " at #" << r.stopped_at;
  if (!r.message.empty()) err << ": " << r.message;
  err << " (trace cut after " << r.steps << " steps)\n";
}

nlohmann::json ids_json(const StmtSet& s) { return nlohmann::json(s.ids()); }

std::pair<StmtId, std::string> parse_criterion(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon + 1 == text.size())
    throw UsageError("criterion must look like N:VAR, got '" + text + "'");
  std::int64_t n = parse_int(std::string_view(text).substr(0, colon), "criterion node");
  if (n <= 0) throw UsageError("criterion node must be positive");
  return {static_cast<StmtId>(n), text.substr(colon + 1)};
}

// Source listing with statements in the slice marked by '>' and the labels of
// the others dimmed.
void write_listing(const Program& prog, const StmtSet& slice, const Terminal& term,
                   std::ostream& out) {
  static const std::regex labelled(R"(^(\s*)#(\d+): (.*)$)");
  std::istringstream in(pretty_print(prog));
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (!std::regex_match(line, m, labelled)) {
      out << "  " << line << '\n';
      continue;
    }
    const auto id = static_cast<StmtId>(std::stoul(m[2].str()));
    const std::string label = "#" + m[2].str() + ":";
    if (slice.contains(id)) {
      out << "> " << m[1].str() << label << ' ' << m[3].str() << '\n';
    } else if (term.color) {
      out << "  " << m[1].str() << "\x1b[2m" << label << "\x1b[0m " << m[3].str() << '\n';
    } else {
      out << "  " << m[1].str() << label << ' ' << m[3].str() << '\n';
    }
  }
}

struct SliceArgs {
  Common common;
  std::string criterion;
  std::string object;
};

int cmd_slice(const SliceArgs& a, std::ostream& out, std::ostream& err, const Terminal& term) {
  if (a.criterion.empty() == a.object.empty())
    throw UsageError("slice needs exactly one of --criterion or --object");
  std::optional<std::pair<StmtId, std::string>> crit;
  if (!a.criterion.empty()) crit = parse_criterion(a.criterion);

  const Program prog = load_program(a.common.source_path);
  const Cdg cdg = build_cdg(prog);
  const auto inputs = load_inputs(a.common);
  Slicer slicer(cdg);
  slicer.init();
  const RunResult result = execute(prog, inputs, slicer.sink(), run_options(a.common));
  report_run(result, err);

  nlohmann::json report;
  if (crit) {
    report["criterion"] = {{"node", crit->first}, {"var", crit->second}};
  } else {
    report["criterion"] = {{"object", a.object}};
  }
  report["stats"] = {{"events", slicer.stats().events}, {"updates", slicer.stats().updates}};

  StmtSet slice;
  int code = result.ok() ? kOk : kRuntime;
  std::string failure;
  try {
    slice = crit ? slicer.slice_of(crit->first, crit->second) : slicer.slice_of_object(a.object);
    report["executed"] = true;
  } catch (const CriterionError& e) {
    report["executed"] = false;
    failure = e.what();
    if (code == kOk) code = kCriterion;
  }
  report["slice"] = ids_json(slice);

  if (a.common.json) {
    out << report.dump() << '\n';
  } else if (failure.empty()) {
    const std::string name =
        crit ? "(" + std::to_string(crit->first) + ", " + crit->second + ")" : a.object;
    out << "slice " << name << " = " << slice.to_string() << '\n';
    write_listing(prog, slice, term, out);
  }
  if (!failure.empty()) err << "criterion error: " << failure << '\n';
  return code;
}

struct CdgArgs {
  std::string source_path;
  std::string dot_path;
  bool json = false;
};

int cmd_cdg(const CdgArgs& a, std::ostream& out) {
  const Cdg cdg = build_cdg(load_program(a.source_path));
  if (!a.dot_path.empty()) {
    std::ofstream f(a.dot_path);
    if (!f) throw UsageError("cannot write '" + a.dot_path + "'");
    f << export_dot(cdg);
    if (a.json) out << export_json(cdg) << '\n';
    return kOk;
  }
  out << (a.json ? export_json(cdg) + "\n" : export_dot(cdg));
  return kOk;
}

struct TraceArgs {
  Common common;
  std::string output;
};

int cmd_trace(const TraceArgs& a, std::ostream& out, std::ostream& err) {
  const Program prog = load_program(a.common.source_path);
  const auto inputs = load_inputs(a.common);
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output);
    if (!file) throw UsageError("cannot write '" + a.output + "'");
  }
  std::ostream& sink_out = a.output.empty() ? out : file;
  const RunResult result = execute(
      prog, inputs, [&](const ExecEvent& ev) { sink_out << to_json_line(ev) << '\n'; },
      run_options(a.common));
  report_run(result, err);
  return result.ok() ? kOk : kRuntime;
}

struct CheckArgs {
  Common common;
  std::optional<std::uint64_t> seed;
  std::size_t statements = 30;
  std::string trace_path;
};

struct Verdict {
  std::size_t criteria = 0;
  std::optional<std::string> mismatch;
};

Verdict compare(const Slicer& slicer, const Ddg& ddg) {
  Verdict v;
  auto ours = slicer.criteria();
  auto theirs = ddg.criteria();
  std::vector<Criterion> all;
  std::set_union(ours.begin(), ours.end(), theirs.begin(), theirs.end(), std::back_inserter(all));
  auto render = [](auto&& fn) -> std::string {
    try {
      return fn().to_string();
    } catch (const CriterionError&) {
      return "<not executed>";
    }
  };
  for (const auto& c : all) {
    std::string s = render([&] { return slicer.slice_of(c.node, c.var); });
    std::string o = render([&] { return ddg.backward_slice(c.node, c.var); });
    if (s != o) {
      v.mismatch = "(" + std::to_string(c.node) + ", " + c.var + "): slicer " + s + " oracle " + o;
      return v;
    }
    ++v.criteria;
  }
  return v;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  if (a.seed.has_value() == !a.common.source_path.empty())
    throw UsageError("check needs exactly one of a source file or --seed");
  Program prog;
  std::vector<std::int64_t> inputs = load_inputs(a.common);
  if (a.seed) {
    GenOptions gen;
    gen.max_statements = a.statements;
    GeneratedProgram g = generate_program(*a.seed, gen);
    prog = parse(g.source);
    if (a.common.inputs.empty() && a.common.inputs_file.empty()) inputs = g.inputs;
  } else {
    prog = load_program(a.common.source_path);
  }
  const Cdg cdg = build_cdg(prog);
  const Trace reference = run(prog, inputs, run_options(a.common));
  report_run(reference.result, err);

  // The oracle always sees the reference run. A supplied trace is replayed
  // through the slicer only, so a trace that does not describe this run
  // surfaces as a disagreement.
  std::vector<ExecEvent> replay;
  if (!a.trace_path.empty()) {
    std::ifstream in(a.trace_path);
    if (!in) throw UsageError("cannot read '" + a.trace_path + "'");
    try {
      replay = read_trace(in);
    } catch (const TraceFormatError& e) {
      err << "MISMATCH: unreadable trace: " << e.what() << '\n';
      return kMismatch;
    }
  }
  const auto& slicer_events = a.trace_path.empty() ? reference.events : replay;

  Slicer slicer(cdg);
  slicer.init();
  Verdict verdict;
  std::size_t ddg_nodes = 0;
  try {
    for (const auto& ev : slicer_events) slicer.consume(ev);
    const Ddg ddg = build_ddg(cdg, reference.events);
    ddg_nodes = ddg.node_count();
    verdict = compare(slicer, ddg);
  } catch (const std::exception& e) {
    // Events the slicer or oracle cannot even interpret count as disagreement.
    verdict.mismatch = std::string("engine rejected the trace: ") + e.what();
  }

  if (a.common.json) {
    nlohmann::json j = {{"status", verdict.mismatch ? "mismatch" : "ok"},
                        {"criteria", verdict.criteria},
                        {"events", slicer_events.size()},
                        {"ddg_nodes", ddg_nodes}};
    if (verdict.mismatch) j["mismatch"] = *verdict.mismatch;
    out << j.dump() << '\n';
  } else if (verdict.mismatch) {
    out << "MISMATCH " << *verdict.mismatch << '\n';
  } else {
    out << "OK: slicer and oracle agree on " << verdict.criteria << " criteria ("
        << slicer_events.size() << " events, " << ddg_nodes << " DDG nodes)\n";
  }
  if (verdict.mismatch) return kMismatch;
  return reference.result.ok() ? kOk : kRuntime;
}

int cmd_gen(std::uint64_t seed, std::size_t statements, bool show_inputs, std::ostream& out) {
  GenOptions gen;
  gen.max_statements = statements;
  GeneratedProgram g = generate_program(seed, gen);
  out << g.source;
  if (show_inputs) {
    out << "// inputs:";
    for (std::size_t i = 0; i < g.inputs.size(); ++i) out << (i ? "," : " ") << g.inputs[i];
    out << '\n';
  }
  return kOk;
}

void add_common(CLI::App* cmd, Common& c, bool with_inputs) {
  cmd->add_option("source", c.source_path, "Program source file");
  if (!with_inputs) return;
  cmd->add_option("--inputs", c.inputs, "Comma-separated integers consumed by cin");
  cmd->add_option("--inputs-file", c.inputs_file, "File of integers (whitespace or commas)");
  cmd->add_option("--budget", c.budget,
                  "Step budget (default $DYNSLICE_BUDGET or " + std::to_string(kDefaultBudget) + ")");
  cmd->add_flag("--json", c.json, "Machine-readable output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            Terminal term) {
  CLI::App app{"Dynamic slicing for a small object-oriented language", "dynslice"};
  app.require_subcommand(1);

  SliceArgs slice;
  auto* slice_cmd = app.add_subcommand("slice", "Slice a run with respect to a criterion");
  add_common(slice_cmd, slice.common, true);
  slice_cmd->get_option("source")->required();
  slice_cmd->add_option("--criterion", slice.criterion, "Statement and variable, N:VAR");
  slice_cmd->add_option("--object", slice.object, "Object declared in main");

  CdgArgs cdg;
  auto* cdg_cmd = app.add_subcommand("cdg", "Print the control dependence graph");
  cdg_cmd->add_option("source", cdg.source_path, "Program source file")->required();
  cdg_cmd->add_flag("--json", cdg.json, "JSON instead of DOT");
  cdg_cmd->add_option("--dot", cdg.dot_path, "Write DOT to this file");

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "Print the execution event stream as NDJSON");
  add_common(trace_cmd, trace.common, true);
  trace_cmd->get_option("source")->required();
  trace_cmd->add_option("-o,--output", trace.output, "Write the trace to this file");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Compare the streaming slicer with the DDG oracle");
  add_common(check_cmd, check.common, true);
  check_cmd->add_option("--seed", check.seed, "Check a generated program instead of a file");
  check_cmd->add_option("--statements", check.statements, "Statement limit for --seed");
  check_cmd->add_option("--trace", check.trace_path, "Replay this trace through the slicer");

  std::uint64_t gen_seed = 0;
  std::size_t gen_statements = 40;
  bool gen_inputs = false;
  auto* gen_cmd = app.add_subcommand("gen", "Print a generated test program");
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  gen_cmd->add_option("--statements", gen_statements, "Statement limit");
  gen_cmd->add_flag("--show-inputs", gen_inputs, "Append the generated inputs as a comment");

  std::vector<std::string> argv_store{"dynslice"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*slice_cmd) return cmd_slice(slice, out, err, term);
    if (*cdg_cmd) return cmd_cdg(cdg, out);
    if (*trace_cmd) return cmd_trace(trace, out, err);
    if (*check_cmd) return cmd_check(check, out, err);
    if (*gen_cmd) return cmd_gen(gen_seed, gen_statements, gen_inputs, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const NoMatchingOverload& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  }
  return kUsage;
}

}  // namespace dynslice::cli
