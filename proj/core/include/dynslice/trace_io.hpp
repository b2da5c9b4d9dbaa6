#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/events.hpp"

namespace dynslice {

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Newline-delimited JSON, one object per event. The "event" field names the
// ExecEvent alternative; keys are emitted sorted.

std::string to_json_line(const ExecEvent& event);
ExecEvent from_json_line(std::string_view line);

void write_trace(std::ostream& out, std::span<const ExecEvent> events);
/// Blank lines are skipped; errors report the 1-based line number.
std::vector<ExecEvent> read_trace(std::istream& in);

}  // namespace dynslice
