#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynslice {

struct GenOptions {
  std::size_t max_statements = 40;
  int max_depth = 3;  // nesting of if/while
  std::size_t input_count = 400;
};

struct GeneratedProgram {
  std::string source;
  std::vector<std::int64_t> inputs;
};

/// Random well-typed, terminating program for differential testing: one or
/// two classes, two or three methods of which two form an overloaded pair,
/// by-value and by-reference scalar parameters, by-value object parameters,
/// counted while loops and if/else nested up to `max_depth`. By-reference
/// arguments are always distinct plain scalars, so no location is reachable
/// through two reference parameters. Deterministic in `seed`.
GeneratedProgram generate_program(std::uint64_t seed, const GenOptions& options = {});

}  // namespace dynslice
