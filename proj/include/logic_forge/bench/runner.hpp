#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "logic_forge/agent/llm.hpp"
#include "logic_forge/agent/pipeline.hpp"
#include "logic_forge/bench/dataset.hpp"
#include "logic_forge/bench/score.hpp"

namespace logic_forge::bench {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generated tasks: task i uses seed `seed + i` and size `sizes[i % sizes.size()]`.
struct GenSpec {
  std::uint64_t seed = 1;
  int count = 0;
  std::vector<std::pair<int, int>> sizes;

  /// `{"seed": 1, "count": 100, "sizes": ["2x3", "4x4"]}`. Throws ConfigError.
  static GenSpec from_json(const nlohmann::json& j);
};

enum class FormalizerKind { Oracle, Llm };

struct BenchConfig {
  std::optional<std::string> dataset_path;
  std::optional<GenSpec> gen;
  /// Converts dataset lines in another schema; the built-in schema when empty.
  DatasetAdapter adapter;
  FormalizerKind formalizer = FormalizerKind::Oracle;
  int concurrency = 1;
  /// Per-task JSONL results, flushed after every line; empty to skip.
  std::string results_path;
  agent::PipelineConfig pipeline;
  /// Chat transport for the LLM formalizer; built from the environment when
  /// null.
  std::shared_ptr<agent::ChatTransport> transport;
  /// Overrides `formalizer`; called once per task.
  std::function<std::unique_ptr<agent::Formalizer>()> make_formalizer;
  /// Checked before each task starts; defaults to interrupt_flag().
  std::atomic<bool>* stop = nullptr;
};

/// Set by the SIGINT handler from install_interrupt_handler().
std::atomic<bool>& interrupt_flag();
void install_interrupt_handler();

/// Runs every task through the pipeline on `concurrency` workers and scores
/// the results in task order. Configuration problems raise ConfigError
/// before any task starts. After an interrupt the report covers the tasks
/// that finished (possibly none) and is marked interrupted.
EvalReport run_bench(const BenchConfig& config);

}  // namespace logic_forge::bench
