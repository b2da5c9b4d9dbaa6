#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/cdg.hpp"
#include "dynslice/events.hpp"
#include "dynslice/slicer.hpp"
#include "dynslice/stmt_set.hpp"

namespace dynslice {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EdgeKind : std::uint8_t {
  Data,     // to the occurrence(s) that last defined a used location
  Control,  // to the governing test occurrence or the enclosing call site
};

/// Dynamic dependence graph: one node per statement occurrence, edges
/// pointing strictly backwards in trace order. Its size grows with the run;
/// it is a reference for testing the streaming slicer, not a production path.
class Ddg {
 public:
  struct Edge {
    std::uint32_t target;
    EdgeKind kind;
  };
  struct Node {
    StmtId stmt = 0;
    std::uint32_t occurrence = 0;  // 0-based count of earlier runs of stmt
    std::uint32_t edge_begin = 0;
    std::uint32_t edge_end = 0;
  };

  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::uint32_t index) const { return nodes_.at(index); }
  std::span<const Edge> edges(std::uint32_t index) const;

  /// Indices of every occurrence of `stmt`, in trace order.
  std::vector<std::uint32_t> occurrences(StmtId stmt) const;

  /// Statements reachable backwards from the last occurrence of `stmt` at
  /// which `var` (criterion name) was defined or used. Throws
  /// CriterionError when there is no such occurrence.
  StmtSet backward_slice(StmtId stmt, std::string_view var) const;

  std::vector<Criterion> criteria() const;

 private:
  friend class DdgBuilder;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  // Roots of the last occurrence of each (stmt, var) criterion.
  std::map<std::pair<StmtId, std::string>, std::vector<std::uint32_t>> criteria_;
};

/// Incremental DDG construction; feed events in trace order.
class DdgBuilder {
 public:
  explicit DdgBuilder(const Cdg& cdg);

  void consume(const ExecEvent& ev);
  const Ddg& graph() const { return ddg_; }
  Ddg finish() && { return std::move(ddg_); }

 private:
  struct Activation {
    std::uint32_t frame;
    std::optional<std::uint32_t> call_node;  // nullopt for main
    std::optional<std::uint32_t> return_node;
    std::map<StmtId, std::uint32_t> last_test;  // latest occurrence of each test node
  };

  std::uint32_t add_node(StmtId stmt, const std::vector<std::uint32_t>& data,
                         std::optional<std::uint32_t> control);
  std::optional<std::uint32_t> governing_test(StmtId stmt) const;
  const std::vector<std::uint32_t>& defs_of(const RuntimeVar& v) const;
  void record(StmtId stmt, const RuntimeVar& v, std::vector<std::uint32_t> roots);

  void on_stmt(const StmtExecuted& ev);
  void on_call(const CallEntered& ev);
  void on_returned(const Returned& ev);

  const Cdg* cdg_;
  Ddg ddg_;
  std::map<RuntimeVar, std::vector<std::uint32_t>> last_def_;
  std::vector<Activation> stack_;
  std::map<StmtId, std::uint32_t> occurrence_count_;
  std::optional<std::uint32_t> finished_call_;
};

/// Builds the DDG for a complete trace of the program described by `cdg`.
Ddg build_ddg(const Cdg& cdg, std::span<const ExecEvent> trace);

}  // namespace dynslice
