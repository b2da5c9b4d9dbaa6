#include "dynslice/events.hpp"

namespace dynslice {

std::string RuntimeVar::criterion_name() const {
  if (member.empty()) return name;
  return name + "." + member;
}

std::string RuntimeVar::display() const {
  if (frame == kMainFrame) return criterion_name();
  return criterion_name() + "@" + std::to_string(frame);
}

std::string_view event_name(const ExecEvent& ev) {
  static constexpr std::string_view names[] = {
      "StmtExecuted", "CallEntered",   "AboutToReturn",  "Returned",
      "LoopExited",   "InputConsumed", "OutputProduced", "Warning",
  };
  return names[ev.index()];
}

}  // namespace dynslice
