#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "logic_forge/bench/puzzle.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::bench {

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What a run produced for one task.
struct TaskResult {
  std::string id;
  std::string size;
  std::string status;
  int attempts = 0;
  std::optional<SolutionTable> predicted;
  SolutionTable truth;
};

struct TaskScore {
  std::string id;
  std::string size;
  std::string status;
  int attempts = 0;
  ShapeClass shape = ShapeClass::Unclassified;
  std::size_t correct_cells = 0;
  std::size_t total_cells = 0;
  bool exact = false;
};

struct SplitScore {
  std::size_t tasks = 0;
  std::size_t exact = 0;
  std::size_t correct_cells = 0;
  std::size_t total_cells = 0;

  double puzzle_accuracy() const;
  double cell_accuracy() const;
  nlohmann::ordered_json to_json() const;
};

struct EvalReport {
  std::vector<TaskScore> tasks;
  SplitScore overall;
  SplitScore easy;
  SplitScore hard;
  std::map<std::string, std::size_t> status_counts;
  bool interrupted = false;
  double wall_clock_seconds = 0;

  /// Timing is only written when asked for, so reports from different runs
  /// can be compared directly.
  nlohmann::ordered_json to_json(bool include_timing = true) const;
};

/// Cell equality: integers exactly, strings case-insensitively after trimming,
/// and an integer against a string by its decimal text.
bool cells_match(const Cell& predicted, const Cell& truth);

/// Cells are (row key, column) pairs over the non-key truth columns; rows are
/// matched through the key column, or by index when the truth has none.
TaskScore score_task(const TaskResult& result);

/// Throws EmptyInput when `results` is empty.
EvalReport score(const std::vector<TaskResult>& results);

}  // namespace logic_forge::bench
