#pragma once

#include <stdexcept>

#include "logic_forge/model/model.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::model {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Table for one instance group. Rows are ordered by the group's position
/// field when it has one, otherwise by instance index.
SolutionTable decode_group(const ConstraintModel& model, std::size_t group,
                           const Assignment& assignment);

/// Table for the primary group (first list field of the solution class).
SolutionTable decode(const ConstraintModel& model, const Assignment& assignment);

/// Inverse of decode() for the primary group: row i is written to instance i.
/// Vars outside the primary group are set to their domain minimum.
Assignment encode(const ConstraintModel& model, const SolutionTable& table);

}  // namespace logic_forge::model
