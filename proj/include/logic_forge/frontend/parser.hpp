#pragma once

#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::frontend {

/// Parses Logic.py source. Throws SyntaxError with the offending position.
DslProgram parse(const SourceText& source);

}  // namespace logic_forge::frontend
