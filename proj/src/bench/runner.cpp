#include "logic_forge/bench/runner.hpp"

#include <chrono>
#include <csignal>
#include <fstream>
#include <mutex>
#include <thread>

#include "logic_forge/bench/dataset.hpp"
#include "logic_forge/bench/generator.hpp"
#include "logic_forge/bench/render_dsl.hpp"

namespace logic_forge::bench {

GenSpec GenSpec::from_json(const nlohmann::json& j) {
  GenSpec g;
  try {
    g.seed = j.value("seed", std::uint64_t{1});
    g.count = j.at("count").get<int>();
    for (const auto& s : j.at("sizes")) {
      const auto size = parse_size(s.get<std::string>());
      if (!size) throw ConfigError("gen spec: bad size '" + s.get<std::string>() + "'");
      g.sizes.push_back(*size);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("gen spec: ") + e.what());
  }
  if (g.count < 0) throw ConfigError("gen spec: count must not be negative");
  if (g.sizes.empty()) throw ConfigError("gen spec: sizes must not be empty");
  for (const auto& [n, f] : g.sizes) {
    if (n < 2 || n > 6 || f < 2 || f > 6) throw ConfigError("gen spec: size " + size_label(n, f) + " outside 2..6");
  }
  return g;
}

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

namespace {

extern "C" void on_interrupt(int) { interrupt_flag().store(true); }

/// Where a task comes from: loaded, or generated on demand by a worker.
struct TaskSource {
  std::vector<PuzzleTask> loaded;
  std::optional<GenSpec> gen;

  std::size_t size() const { return gen ? static_cast<std::size_t>(gen->count) : loaded.size(); }

  PuzzleTask get(std::size_t i) const {
    if (!gen) return loaded[i];
    const auto [n, f] = gen->sizes[i % gen->sizes.size()];
    return task_from_instance(generate_puzzle(gen->seed + i, n, f));
  }
};

nlohmann::ordered_json result_line(const TaskResult& r, const TaskScore& s,
                                   const agent::PipelineResult& p) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["size"] = r.size;
  j["status"] = r.status;
  j["attempts"] = r.attempts;
  j["correct_cells"] = s.correct_cells;
  j["total_cells"] = s.total_cells;
  j["exact"] = s.exact;
  j["solution"] = p.output ? *p.output : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json log = nlohmann::ordered_json::array();
  for (const auto& a : p.log) log.push_back({{"attempt", a.attempt}, {"stage", a.stage}, {"error", a.error}});
  j["log"] = std::move(log);
  return j;
}

}  // namespace

void install_interrupt_handler() { std::signal(SIGINT, on_interrupt); }

EvalReport run_bench(const BenchConfig& config) {
  if (config.dataset_path.has_value() == config.gen.has_value()) {
    throw ConfigError("exactly one of a dataset path or a gen spec is required");
  }
  if (config.concurrency < 1) throw ConfigError("concurrency must be at least 1");
  if (config.pipeline.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");

  std::shared_ptr<agent::ChatTransport> transport = config.transport;
  if (config.formalizer == FormalizerKind::Llm && !transport && !config.make_formalizer) {
    const auto llm = agent::LlmClientConfig::from_env();
    if (llm.endpoint.empty()) throw ConfigError("the llm formalizer needs LOGIC_AGENT_ENDPOINT");
    if (llm.model.empty()) throw ConfigError("the llm formalizer needs LOGIC_AGENT_MODEL");
    transport = std::make_shared<agent::HttpChatTransport>(llm);
  }

  TaskSource source;
  if (config.dataset_path) {
    try {
      source.loaded = load_dataset(*config.dataset_path, config.adapter).tasks;
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    } catch (const SchemaError& e) {
      throw ConfigError(e.what());
    }
  } else {
    source.gen = config.gen;
  }

  std::ofstream results_file;
  if (!config.results_path.empty()) {
    results_file.open(config.results_path);
    if (!results_file) throw ConfigError("cannot write results to '" + config.results_path + "'");
  }

  std::atomic<bool>& stop = config.stop != nullptr ? *config.stop : interrupt_flag();
  const auto started = std::chrono::steady_clock::now();
  const std::size_t total = source.size();
  std::vector<std::optional<TaskResult>> results(total);
  std::atomic<std::size_t> next{0};
  std::mutex write_mutex;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      TaskResult r;
      agent::PipelineResult p;
      try {
        const PuzzleTask task = source.get(i);
        r.id = task.id;
        r.size = task.size;
        r.truth = task.truth;
        std::unique_ptr<agent::Formalizer> formalizer;
        if (config.make_formalizer) {
          formalizer = config.make_formalizer();
        } else if (config.formalizer == FormalizerKind::Oracle) {
          formalizer = std::make_unique<OracleFormalizer>();
        } else {
          formalizer = std::make_unique<agent::LlmFormalizer>(transport);
        }
        p = agent::run_pipeline(task.puzzle, task.format, *formalizer, config.pipeline);
        r.status = std::string(agent::to_string(p.status));
        r.attempts = p.attempts;
        r.predicted = p.solution;
      } catch (const GenerationError& e) {
        r.id = "gen-" + std::to_string(source.gen->seed + i);
        r.status = "FailedGeneration";
        p.log.push_back({0, "generate", e.what()});
      }
      const TaskScore s = score_task(r);
      {
        std::lock_guard lock(write_mutex);
        if (results_file.is_open()) results_file << result_line(r, s, p).dump() << '\n' << std::flush;
      }
      results[i] = std::move(r);
    }
  };

  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.concurrency), std::max<std::size_t>(total, 1));
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<TaskResult> finished;
  for (auto& r : results) {
    if (r) finished.push_back(std::move(*r));
  }
  EvalReport report;
  if (!finished.empty()) report = score(finished);
  report.interrupted = finished.size() < total;
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace logic_forge::bench
