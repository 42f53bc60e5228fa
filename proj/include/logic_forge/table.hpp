#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace logic_forge {

using Cell = std::variant<std::int64_t, std::string>;

std::string cell_to_string(const Cell& cell);

/// A decoded puzzle solution: one row per entity, one column per field.
///
/// `key_column` names the column whose values identify a row independently of
/// row order (the position field, e.g. the house number). Tables without a key
/// are compared row by row.
struct SolutionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::optional<std::size_t> key_column;

  std::optional<std::size_t> column_index(const std::string& name) const;

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

}  // namespace logic_forge
