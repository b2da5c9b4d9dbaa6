#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynslice/ast.hpp"

namespace dynslice {

enum class ParseErrorKind {
  Lexical,
  Syntax,
  DuplicateClass,
  DuplicateMember,
  DuplicateSignature,
  LabelCollision,
  Semantic,
};

std::string_view to_string(ParseErrorKind kind);

/// Any failure to turn source text into a checked Program.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceLoc loc, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  SourceLoc loc_;
  std::string detail_;
};

class NoMatchingOverload : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexes, parses and checks a compilation unit. Statements are numbered from
/// their `#n:` labels when the source uses them, otherwise in textual order.
Program parse(std::string_view source);

/// Picks the method of `cls` whose signature matches `name` and the exact
/// ordered list of argument types. No conversions are considered.
const MethodDef& resolve_overload(const ClassDef& cls, std::string_view name,
                                  const std::vector<TypeTag>& actual_types);

/// Renders a program back to source with explicit statement labels, so that
/// parse(pretty_print(p)) == p.
std::string pretty_print(const Program& program);

/// One-line rendering of a single statement header (no nested bodies).
std::string describe(const Stmt& stmt);

}  // namespace dynslice
