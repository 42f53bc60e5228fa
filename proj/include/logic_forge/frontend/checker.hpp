#pragma once

#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::frontend {

/// Upper bound on the number of values in a single integer domain.
inline constexpr std::int64_t kMaxDomainSize = 65536;

/// Resolves names, enforces the type rules, and annotates every expression
/// with its type. Throws SemanticError.
CheckedProgram check(const DslProgram& program);

/// parse() followed by check().
CheckedProgram parse_and_check(const SourceText& source);

}  // namespace logic_forge::frontend
