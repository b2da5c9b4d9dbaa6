#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/ast.hpp"
#include "dynslice/events.hpp"

namespace dynslice {

enum class RunStatus {
  Completed,
  InputExhausted,
  DivisionByZero,
  BudgetExceeded,
  CallDepthExceeded,
};

std::string_view to_string(RunStatus status);

struct RunOptions {
  std::uint64_t step_budget = 100000;  // statement executions
  // Each interpreted call nests a few native frames; 1000 stays well inside
  // a default 8 MiB stack even in unoptimized builds.
  std::size_t max_call_depth = 1000;
};

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::string message;
  StmtId stopped_at = 0;  // statement that failed, 0 when completed
  std::uint64_t steps = 0;
  std::vector<std::int64_t> outputs;
  std::size_t warnings = 0;

  bool ok() const { return status == RunStatus::Completed; }
};

/// Executes a checked program, streaming every event to `sink` in order.
/// Runs that stop early still deliver a well-formed prefix of the stream.
RunResult execute(const Program& program, std::span<const std::int64_t> inputs,
                  const EventSink& sink, const RunOptions& options = {});

struct Trace {
  std::vector<ExecEvent> events;
  RunResult result;
};

/// Convenience wrapper that collects the event stream.
Trace run(const Program& program, std::span<const std::int64_t> inputs,
          const RunOptions& options = {});

}  // namespace dynslice
