#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "logic_forge/model/model.hpp"

namespace logic_forge::solver {

struct Budget {
  std::uint64_t max_decisions = 10'000'000;
  std::chrono::milliseconds max_time{30'000};
};

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::chrono::nanoseconds elapsed{0};
};

enum class Status { Sat, Unsat };

struct SolveOutcome {
  Status status = Status::Unsat;
  std::optional<model::Assignment> assignment;
  Stats stats;
};

struct AmbiguityReport {
  model::Assignment first;
  std::optional<model::Assignment> second;
  Stats stats;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, Stats stats)
      : std::runtime_error(what), stats_(stats) {}
  const Stats& stats() const { return stats_; }

 private:
  Stats stats_;
};

struct SolveOptions {
  Budget budget;
  /// Receives one line per decision and backtrack when set.
  std::ostream* trace = nullptr;
};

/// Depth-first search with propagation. Instances of a group with a position
/// field are kept in increasing position order, so each solution table is
/// reached through exactly one assignment.
SolveOutcome solve(const model::ConstraintModel& model, const SolveOptions& options = {});

/// Searches for a solution whose table differs from `first`'s.
AmbiguityReport find_second(const model::ConstraintModel& model, const model::Assignment& first,
                            const SolveOptions& options = {});

/// Ordering constraints `pos[i] < pos[i+1]` for every group with a position field.
std::vector<model::ConstraintExpr> symmetry_breaking(const model::ConstraintModel& model);

/// Satisfied exactly by assignments whose decoded tables differ from `first`'s
/// in some group. Selector values are ignored.
model::ConstraintExpr blocking_constraint(const model::ConstraintModel& model,
                                          const model::Assignment& first);

/// Domains left after root propagation (vars first, then selectors), or
/// nullopt on contradiction. Includes the symmetry-breaking constraints.
std::optional<std::vector<std::vector<model::Value>>> propagate_root(
    const model::ConstraintModel& model);

}  // namespace logic_forge::solver
