#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "logic_forge/model/model.hpp"

namespace logic_forge::solver {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceOptions {
  /// Bound on the number of candidate tables after all-different factorisation.
  std::uint64_t max_tables = 10'000'000;
  /// Bound on selector tuples tried per connected group of constraints.
  std::uint64_t max_selector_tuples = 1'000'000;
  std::size_t max_solutions = std::numeric_limits<std::size_t>::max();
};

struct BruteForceResult {
  /// One assignment per distinct solution table; selectors hold a witness.
  std::vector<model::Assignment> solutions;
  bool truncated = false;
};

/// Exhaustive enumeration used as a test oracle. Groups with a position field
/// are enumerated in increasing position order only, one assignment per table.
BruteForceResult brute_force(const model::ConstraintModel& model,
                             const BruteForceOptions& options = {});

}  // namespace logic_forge::solver
