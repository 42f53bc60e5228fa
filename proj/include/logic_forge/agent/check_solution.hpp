#pragma once

#include <stdexcept>

#include "logic_forge/frontend/ast.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::agent {

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff the candidate table satisfies the program: every field value lies
/// in its domain, Unique fields are pairwise distinct, and some choice of
/// `nondet` elements makes every assume and assert hold. Evaluates the
/// validator directly, without the constraint model or the solver.
///
/// The table must describe the solution class's single list field (or the
/// solution object itself when it has no list field); row i is list element i.
bool check_solution(const frontend::CheckedProgram& program, const SolutionTable& candidate);

}  // namespace logic_forge::agent
