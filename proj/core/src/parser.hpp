#pragma once

#include <string_view>

#include "dynslice/ast.hpp"

namespace dynslice::detail {

/// Syntax only: builds an unchecked Program. Labelled statements carry their
/// label in Stmt::id, unlabelled ones carry 0.
Program parse_syntax(std::string_view source);

/// Name resolution, typing, overload resolution and statement numbering.
void check_program(Program& program);

}  // namespace dynslice::detail
