#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logic_forge/agent/llm.hpp"
#include "logic_forge/agent/output_format.hpp"
#include "logic_forge/bench/dataset.hpp"
#include "logic_forge/bench/generator.hpp"
#include "logic_forge/bench/render_dsl.hpp"
#include "logic_forge/bench/runner.hpp"
#include "logic_forge/cemit/emit.hpp"
#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/dump.hpp"
#include "logic_forge/model/lower.hpp"
#include "logic_forge/solver/solver.hpp"

using namespace logic_forge;

namespace {

// Exit codes shared by the subcommands.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUnsat = 2;
constexpr int kBudget = 3;
constexpr int kAmbiguous = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

frontend::CheckedProgram load_program(const std::string& path) {
  return frontend::parse_and_check(frontend::SourceText{read_file(path), path});
}

std::string render_table(const SolutionTable& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], cell_to_string(row[c]).size());
  }
  std::ostringstream out;
  auto line = [&](auto cell_at) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string s = cell_at(c);
      out << (c ? "  " : "") << s << std::string(c + 1 < width.size() ? width[c] - s.size() : 0, ' ');
    }
    out << '\n';
  };
  line([&](std::size_t c) { return t.columns[c]; });
  for (const auto& row : t.rows) line([&](std::size_t c) { return cell_to_string(row[c]); });
  return out.str();
}

struct SolveFlags {
  std::string file;
  std::uint64_t max_decisions = solver::Budget{}.max_decisions;
  std::int64_t timeout_ms = solver::Budget{}.max_time.count();
  bool json = false;
  bool trace = false;

  solver::SolveOptions options() const {
    solver::SolveOptions o;
    o.budget.max_decisions = max_decisions;
    o.budget.max_time = std::chrono::milliseconds{timeout_ms};
    if (trace) o.trace = &std::cerr;
    return o;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("file", f.file, "Logic.py source")->required();
  cmd->add_option("--max-decisions", f.max_decisions, "Search decision budget");
  cmd->add_option("--timeout-ms", f.timeout_ms, "Wall-clock budget in milliseconds");
  cmd->add_flag("--json", f.json, "Print the solution as JSON");
  cmd->add_flag("--trace", f.trace, "Log search decisions to stderr");
}

void print_solution(const model::ConstraintModel& m, const model::Assignment& a, bool json) {
  const SolutionTable t = model::decode(m, a);
  if (json) {
    std::cout << agent::format_output(t, {}).dump(2) << '\n';
  } else {
    std::cout << render_table(t);
  }
}

int cmd_solve(const SolveFlags& f) {
  const auto m = model::lower(load_program(f.file));
  const auto out = solver::solve(m, f.options());
  if (out.status == solver::Status::Unsat) {
    std::cerr << "unsat\n";
    return kUnsat;
  }
  print_solution(m, *out.assignment, f.json);
  return kOk;
}

int cmd_check_ambiguity(const SolveFlags& f) {
  const auto m = model::lower(load_program(f.file));
  const auto out = solver::solve(m, f.options());
  if (out.status == solver::Status::Unsat) {
    std::cerr << "unsat\n";
    return kUnsat;
  }
  const auto report = solver::find_second(m, *out.assignment, f.options());
  if (!report.second) {
    std::cout << "unique\n";
    print_solution(m, *out.assignment, f.json);
    return kOk;
  }
  std::cout << "ambiguous\n";
  print_solution(m, report.first, f.json);
  std::cout << '\n';
  print_solution(m, *report.second, f.json);
  return kAmbiguous;
}

int cmd_emit_c(const std::string& file, const std::string& out) {
  const auto harness = cemit::emit(load_program(file));
  if (out.empty()) {
    std::cout << harness.text;
  } else {
    write_file(out, harness.text);
  }
  return kOk;
}

int cmd_dump_model(const std::string& file) {
  std::cout << model::dump(model::lower(load_program(file)));
  return kOk;
}

int cmd_gen(std::uint64_t seed, const std::string& size, int count, const std::string& dir) {
  const auto shape = bench::parse_size(size);
  if (!shape) throw UsageError("--size must look like 4x4");
  if (count < 1) throw UsageError("-n must be positive");
  std::filesystem::create_directories(dir);
  std::vector<bench::PuzzleTask> tasks;
  for (int i = 0; i < count; ++i) {
    const auto p = bench::generate_puzzle(seed + static_cast<std::uint64_t>(i), shape->first, shape->second);
    const auto base = std::filesystem::path(dir) / p.id;
    write_file(base.string() + ".txt", p.text);
    write_file(base.string() + ".py", bench::render_dsl(p).text);
    tasks.push_back(bench::task_from_instance(p));
  }
  bench::write_dataset((std::filesystem::path(dir) / "dataset.jsonl").string(), tasks);
  std::cout << "wrote " << count << " puzzles to " << dir << '\n';
  return kOk;
}

struct BenchFlags {
  std::string dataset;
  std::string gen_spec;
  std::string formalizer = "oracle";
  int concurrency = 1;
  std::string out;
  std::string results;
  int max_attempts = agent::PipelineConfig{}.max_attempts;
  bool ambiguity_check = false;
  std::string record;
  std::string replay;
};

int cmd_bench(const BenchFlags& f) {
  bench::BenchConfig config;
  if (!f.dataset.empty()) config.dataset_path = f.dataset;
  if (!f.gen_spec.empty()) {
    try {
      config.gen = bench::GenSpec::from_json(nlohmann::json::parse(read_file(f.gen_spec)));
    } catch (const nlohmann::json::exception& e) {
      throw bench::ConfigError("gen spec '" + f.gen_spec + "': " + e.what());
    }
  }
  config.formalizer = f.formalizer == "llm" ? bench::FormalizerKind::Llm : bench::FormalizerKind::Oracle;
  config.concurrency = f.concurrency;
  config.results_path = f.results;
  config.pipeline.max_attempts = f.max_attempts;
  config.pipeline.ambiguity_check = f.ambiguity_check;
  if (!f.replay.empty()) {
    config.transport = std::make_shared<agent::ReplayTransport>(f.replay);
  } else if (!f.record.empty() && config.formalizer == bench::FormalizerKind::Llm) {
    config.transport = std::make_shared<agent::RecordingTransport>(
        std::make_shared<agent::HttpChatTransport>(agent::LlmClientConfig::from_env()), f.record);
  }
  bench::install_interrupt_handler();
  const auto report = bench::run_bench(config);
  const std::string text = report.to_json().dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, text);
  }
  std::cerr << "tasks " << report.overall.tasks << "  puzzle accuracy " << report.overall.puzzle_accuracy()
            << "  cell accuracy " << report.overall.cell_accuracy() << "  " << report.wall_clock_seconds << " s"
            << (report.interrupted ? "  (interrupted)" : "") << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic.py toolkit: solve, emit C harnesses, generate and benchmark logic grid puzzles"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve a Logic.py program and print the solution table");
  add_solve_flags(solve, solve_flags);

  SolveFlags ambiguity_flags;
  auto* ambiguity = app.add_subcommand("check-ambiguity", "Report whether a program has a unique solution");
  add_solve_flags(ambiguity, ambiguity_flags);

  std::string emit_file;
  std::string emit_out;
  auto* emit_c = app.add_subcommand("emit-c", "Write a C harness for a bounded model checker");
  emit_c->add_option("file", emit_file, "Logic.py source")->required();
  emit_c->add_option("-o,--output", emit_out, "Output file (stdout by default)");

  std::string dump_file;
  auto* dump = app.add_subcommand("dump-model", "Print the lowered constraint model");
  dump->add_option("file", dump_file, "Logic.py source")->required();

  std::uint64_t gen_seed = 1;
  std::string gen_size;
  int gen_count = 1;
  std::string gen_dir;
  auto* gen = app.add_subcommand("gen", "Generate puzzles with unique solutions");
  gen->add_option("--seed", gen_seed, "First seed; puzzle i uses seed + i");
  gen->add_option("--size", gen_size, "Houses x features, e.g. 4x4")->required();
  gen->add_option("-n", gen_count, "Number of puzzles");
  gen->add_option("-o,--output", gen_dir, "Output directory")->required();

  BenchFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Run the pipeline over a dataset or generated puzzles");
  auto* dataset_opt = bench_cmd->add_option("--dataset", bench_flags.dataset, "JSONL dataset");
  auto* spec_opt = bench_cmd->add_option("--gen-spec", bench_flags.gen_spec, "JSON generator spec");
  dataset_opt->excludes(spec_opt);
  bench_cmd->add_option("--formalizer", bench_flags.formalizer, "oracle or llm")
      ->check(CLI::IsMember({"oracle", "llm"}));
  bench_cmd->add_option("--concurrency", bench_flags.concurrency, "Worker count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_flags.out, "Report file (stdout by default)");
  bench_cmd->add_option("--results", bench_flags.results, "Per-task JSONL results");
  bench_cmd->add_option("--max-attempts", bench_flags.max_attempts, "Pipeline attempts per task");
  bench_cmd->add_flag("--ambiguity-check", bench_flags.ambiguity_check, "Restart on ambiguous programs");
  bench_cmd->add_option("--record", bench_flags.record, "Append LLM exchanges to this JSONL transcript");
  bench_cmd->add_option("--replay", bench_flags.replay, "Serve LLM replies from a recorded transcript");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(solve_flags);
    if (*ambiguity) return cmd_check_ambiguity(ambiguity_flags);
    if (*emit_c) return cmd_emit_c(emit_file, emit_out);
    if (*dump) return cmd_dump_model(dump_file);
    if (*gen) return cmd_gen(gen_seed, gen_size, gen_count, gen_dir);
    if (*bench_cmd) return cmd_bench(bench_flags);
  } catch (const frontend::DslError& e) {
    std::cerr << e.diagnostic().str() << '\n';
    return kError;
  } catch (const solver::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
