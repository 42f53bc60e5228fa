#pragma once

#include <vector>

#include "logic_forge/frontend/ast.hpp"
#include "logic_forge/model/model.hpp"

namespace logic_forge::model {

/// Replaces every `assert e` with `assume(e)`, preserving order.
std::vector<frontend::Stmt> rewrite_assert_as_assume(std::vector<frontend::Stmt> stmts);

/// Lowers a checked program to a constraint model. Every list field of the
/// solution class becomes a group of instances, every Unique field an
/// all-different group, and every assume/assert one constraint.
ConstraintModel lower(const frontend::CheckedProgram& program);

}  // namespace logic_forge::model
