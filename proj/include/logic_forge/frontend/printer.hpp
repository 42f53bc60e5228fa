#pragma once

#include <string>

#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::frontend {

/// Canonical source for a program; parsing the result yields a structurally
/// equal program.
std::string pretty(const DslProgram& program);
std::string pretty(const Expr& expr);
std::string pretty_annotation(const FieldDecl& field);
std::string quote_string(const std::string& value);

}  // namespace logic_forge::frontend
