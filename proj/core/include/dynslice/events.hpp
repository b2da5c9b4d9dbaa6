#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynslice/ast.hpp"

namespace dynslice {

/// Serial number of main's activation. Callee frames count up from here.
inline constexpr std::uint32_t kMainFrame = 1;

/// A concrete storage location during one run. Objects are identified by
/// the frame that owns them plus their variable name, so a member location
/// is (frame, object, member) and a scalar is (frame, name).
struct RuntimeVar {
  std::uint32_t frame = kMainFrame;
  std::string name;
  std::string member;  // empty for scalars

  bool is_member() const { return !member.empty(); }

  /// "p", "T1.a" for main; "x@3", "tp1.a@3" for callee frames.
  std::string display() const;
  /// Display form without the frame suffix; this is the name used by
  /// slicing criteria.
  std::string criterion_name() const;

  friend bool operator==(const RuntimeVar&, const RuntimeVar&) = default;
  friend auto operator<=>(const RuntimeVar&, const RuntimeVar&) = default;
};

struct StmtExecuted {
  StmtId id = 0;
  std::vector<RuntimeVar> defs;
  std::vector<RuntimeVar> uses;
  // Call nodes only: members of the receiver object after the call returns.
  // They are not uses; they let (call node, receiver.member) act as a
  // slicing criterion.
  std::vector<RuntimeVar> receiver;
  friend bool operator==(const StmtExecuted&, const StmtExecuted&) = default;
};

struct Binding {
  RuntimeVar formal;
  std::vector<RuntimeVar> sources;  // variables read by the actual; empty for literals
  bool by_ref = false;
  friend bool operator==(const Binding&, const Binding&) = default;
};

struct CallEntered {
  StmtId site = 0;
  std::string callee;  // "cls::name(types)"
  std::uint32_t frame = 0;
  RuntimeVar receiver;  // the receiver object (member empty)
  std::vector<Binding> bindings;
  friend bool operator==(const CallEntered&, const CallEntered&) = default;
};

struct AboutToReturn {
  std::optional<StmtId> id;  // nullopt when the body ends without `return`
  std::vector<RuntimeVar> uses;
  friend bool operator==(const AboutToReturn&, const AboutToReturn&) = default;
};

struct CopyBack {
  RuntimeVar formal;
  RuntimeVar actual;
  friend bool operator==(const CopyBack&, const CopyBack&) = default;
};

struct Returned {
  StmtId site = 0;
  std::uint32_t frame = 0;
  std::vector<CopyBack> copybacks;
  std::vector<RuntimeVar> reset;  // automatic locals of the finished frame
  std::optional<RuntimeVar> into;
  friend bool operator==(const Returned&, const Returned&) = default;
};

struct LoopExited {
  StmtId id = 0;
  friend bool operator==(const LoopExited&, const LoopExited&) = default;
};

struct InputConsumed {
  StmtId id = 0;
  std::int64_t value = 0;
  friend bool operator==(const InputConsumed&, const InputConsumed&) = default;
};

struct OutputProduced {
  StmtId id = 0;
  std::int64_t value = 0;
  friend bool operator==(const OutputProduced&, const OutputProduced&) = default;
};

struct Warning {
  StmtId id = 0;
  std::string message;
  friend bool operator==(const Warning&, const Warning&) = default;
};

using ExecEvent = std::variant<StmtExecuted, CallEntered, AboutToReturn, Returned, LoopExited,
                               InputConsumed, OutputProduced, Warning>;

std::string_view event_name(const ExecEvent& ev);

using EventSink = std::function<void(const ExecEvent&)>;

}  // namespace dynslice
