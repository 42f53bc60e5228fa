#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "logic_forge/agent/output_format.hpp"
#include "logic_forge/bench/puzzle.hpp"
#include "logic_forge/table.hpp"

namespace logic_forge::bench {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One benchmark item: puzzle text, the answer columns asked for and the
/// reference table.
struct PuzzleTask {
  std::string id;
  std::string size;  // "4x4"
  std::string puzzle;
  agent::OutputFormat format;
  SolutionTable truth;
};

struct LineIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Dataset {
  std::vector<PuzzleTask> tasks;
  std::vector<LineIssue> issues;
};

PuzzleTask task_from_instance(const PuzzleInstance& instance);

/// `{id, size, puzzle, format: {columns}, truth: {columns, rows, key}}`.
nlohmann::ordered_json task_to_json(const PuzzleTask& task);
/// Throws SchemaError naming the first offending member.
PuzzleTask task_from_json(const nlohmann::json& j);

nlohmann::ordered_json table_to_json(const SolutionTable& table);
SolutionTable table_from_json(const nlohmann::json& j);

/// Maps one parsed line of a foreign dataset to a task; throws SchemaError.
using DatasetAdapter = std::function<PuzzleTask(const nlohmann::json&)>;

/// Reads a JSONL file, one task per non-blank line, through `adapter` (the
/// built-in schema when empty). Bad lines are collected in `issues`; the load
/// fails with SchemaError only when no line is usable.
Dataset load_dataset(const std::string& path, const DatasetAdapter& adapter = {});
void write_dataset(const std::string& path, const std::vector<PuzzleTask>& tasks);

}  // namespace logic_forge::bench
