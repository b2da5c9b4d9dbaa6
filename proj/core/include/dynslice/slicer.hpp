#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynslice/cdg.hpp"
#include "dynslice/events.hpp"
#include "dynslice/stmt_set.hpp"

namespace dynslice {

/// Live state of the streaming slicer. Nothing in here grows with the length
/// of the run: locals are dropped when their frame returns and the per-node
/// table keeps only the latest execution.
struct SliceState {
  // ActiveDataSlice: why does this location hold its current value?
  std::map<RuntimeVar, StmtSet> active_data;
  // ActiveControlSlice, keyed by (frame serial, test node).
  std::map<std::pair<std::uint32_t, StmtId>, StmtSet> active_control;
  // CallSliceStack and ActiveCallSlice.
  std::vector<StmtSet> call_stack;
  StmtSet active_call;
  // ActiveReturnSlice of the procedure that is returning.
  StmtSet active_return;
  // DyanSlice(node, var) from the last execution of node; var is the
  // criterion name (see RuntimeVar::criterion_name).
  std::map<std::pair<StmtId, std::string>, StmtSet> dyn_table;
  // Serials of the active frames, innermost last.
  std::vector<std::uint32_t> frames{kMainFrame};

  /// Total number of statement ids held across every set.
  std::size_t cardinality() const;

  friend bool operator==(const SliceState&, const SliceState&) = default;
};

struct SliceStats {
  std::uint64_t events = 0;
  std::uint64_t updates = 0;
  std::size_t peak_cardinality = 0;
};

class CriterionError : public std::runtime_error {
 public:
  enum class Reason { NotExecuted, UnknownObject };
  CriterionError(Reason reason, const std::string& message)
      : std::runtime_error(message), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

/// Thrown when the event stream does not fit the program (unknown node,
/// unbalanced return).
class SliceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Criterion {
  StmtId node = 0;
  std::string var;
  friend auto operator<=>(const Criterion&, const Criterion&) = default;
};

/// Online dynamic slicer. Feed it the interpreter's events in order; it
/// keeps only the active slices and answers queries at any point.
class Slicer {
 public:
  explicit Slicer(const Cdg& cdg) : cdg_(&cdg) {}

  /// Resets to the pre-run state: every slice empty, call stack empty.
  void init();

  void consume(const ExecEvent& event);
  EventSink sink() {
    return [this](const ExecEvent& e) { consume(e); };
  }

  void on_stmt(const StmtExecuted& ev);
  void on_call(const CallEntered& ev);
  void on_about_to_return(const AboutToReturn& ev);
  void on_returned(const Returned& ev);
  void on_loop_exit(const LoopExited& ev);

  /// DyanSlice(node, var) for the last execution of `node`. Throws
  /// CriterionError if that pair never executed.
  StmtSet slice_of(StmtId node, std::string_view var) const;
  /// Union of the final active data slices of every member of an object
  /// declared in main.
  StmtSet slice_of_object(std::string_view object) const;

  /// Current ActiveDataSlice of a location (empty if untracked).
  StmtSet active_data(const RuntimeVar& var) const;
  /// Current ActiveDataSlice looked up by display name ("T1.a", "x@2").
  StmtSet active_data(std::string_view display) const;

  std::vector<Criterion> criteria() const;

  const SliceState& state() const { return state_; }
  const SliceStats& stats() const { return stats_; }

 private:
  const StmtSet& data(const RuntimeVar& v) const;
  StmtSet control_term(StmtId node) const;
  void assign(const RuntimeVar& v, StmtSet s);
  std::uint32_t frame() const { return state_.frames.back(); }
  const CdgNode& node(StmtId id) const;

  const Cdg* cdg_;
  SliceState state_;
  SliceStats stats_;
};

}  // namespace dynslice
