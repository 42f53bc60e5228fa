// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>

#include "logic_forge/agent/llm.hpp"
#include "logic_forge/agent/pipeline.hpp"
#include "logic_forge/bench/generator.hpp"
#include "logic_forge/bench/render_dsl.hpp"
#include "logic_forge/bench/runner.hpp"
#include "logic_forge/bench/score.hpp"
#include "logic_forge/cemit/emit.hpp"
#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/frontend/parser.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/lower.hpp"
#include "logic_forge/solver/brute_force.hpp"
#include "logic_forge/solver/solver.hpp"
#include "support/files.hpp"

using namespace logic_forge;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double kExampleSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr double kBenchSeconds = 120.0;
constexpr int kOraclePuzzles = 200;
constexpr int kBenchPuzzles = 100;
constexpr int kBenchConcurrency = 8;
constexpr double kAccuracyTolerance = 1e-12;

/// Thrown by expect() to fail the running criterion with a reason.
struct Failed {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

model::ConstraintModel lower_text(const std::string& text, const std::string& origin) {
  return model::lower(frontend::parse_and_check(frontend::SourceText{text, origin}));
}

SolutionTable example_table(bool capitalised) {
  auto s = [](const char* v) { return Cell(std::string(v)); };
  SolutionTable t;
  t.columns = {"house", "name", "occupation", "book", "phone"};
  t.rows = {
      {std::int64_t{1}, s(capitalised ? "Alice" : "alice"), s("engineer"), s("romance"), s("google pixel 6")},
      {std::int64_t{2}, s(capitalised ? "Peter" : "peter"), s("artist"), s("fantasy"), s("samsung galaxy s21")},
      {std::int64_t{3}, s(capitalised ? "Eric" : "eric"), s("teacher"), s("science fiction"), s("iphone 13")},
      {std::int64_t{4}, s(capitalised ? "Arnold" : "arnold"), s("doctor"), s("mystery"), s("oneplus 9")},
  };
  t.key_column = 0;
  return t;
}

void check_example(const model::ConstraintModel& m, const SolutionTable& expected, const std::string& route) {
  const auto out = solver::solve(m);
  expect(out.status == solver::Status::Sat, route + ": unsat");
  expect(model::decode(m, *out.assignment) == expected, route + ": table differs from the published one");
  expect(!solver::find_second(m, *out.assignment).second, route + ": a second solution exists");
}

void criterion_1() {
  const auto start = Clock::now();
  check_example(lower_text(bench::render_dsl(bench::example_puzzle()).text, "instance"), example_table(false),
                "instance");
  check_example(lower_text(test_support::read_data("zebra_4x4.py"), "zebra_4x4.py"), example_table(true),
                "hand-written");
  const double s = seconds_since(start);
  expect(s < kExampleSeconds, "took " + std::to_string(s) + " s");
}

const std::vector<std::pair<int, int>>& oracle_shapes() {
  static const std::vector<std::pair<int, int>> shapes = {{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2},
                                                          {3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}};
  return shapes;
}

/// Solver and brute force agree on satisfiability, the solution table and
/// ambiguity.
void agree(const model::ConstraintModel& m, const std::string& what) {
  const auto bf = solver::brute_force(m);
  expect(!bf.truncated, what + ": brute force truncated");
  const auto out = solver::solve(m);
  expect((out.status == solver::Status::Sat) == !bf.solutions.empty(), what + ": satisfiability differs");
  if (bf.solutions.empty()) return;
  std::set<std::string> tables;
  for (const auto& a : bf.solutions) tables.insert(bench::table_to_json(model::decode(m, a)).dump());
  const std::string found = bench::table_to_json(model::decode(m, *out.assignment)).dump();
  expect(tables.count(found) == 1, what + ": solver table not among brute-force tables");
  const auto second = solver::find_second(m, *out.assignment).second;
  expect(second.has_value() == (tables.size() > 1), what + ": ambiguity differs");
  if (second) {
    const std::string other = bench::table_to_json(model::decode(m, *second)).dump();
    expect(other != found && tables.count(other) == 1, what + ": second table is not a distinct solution");
  }
}

void criterion_2() {
  const auto start = Clock::now();
  int ambiguous_variants = 0;
  for (int i = 0; i < kOraclePuzzles; ++i) {
    const auto [n, f] = oracle_shapes()[static_cast<std::size_t>(i) % oracle_shapes().size()];
    auto p = bench::generate_puzzle(static_cast<std::uint64_t>(1000 + i), n, f);
    agree(lower_text(bench::render_dsl(p).text, p.id), p.id);
    if (!p.clues.empty()) {
      // The same puzzle with one clue dropped is usually ambiguous.
      p.clues.erase(p.clues.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) % p.clues.size()));
      const auto m = lower_text(bench::render_dsl(p).text, p.id + "-dropped");
      agree(m, p.id + " with a clue dropped");
      ambiguous_variants += solver::brute_force(m).solutions.size() > 1 ? 1 : 0;
    }
  }
  expect(ambiguous_variants > kOraclePuzzles / 2, "too few ambiguous variants exercised");
  const double s = seconds_since(start);
  expect(s < kOracleSeconds, "took " + std::to_string(s) + " s");
}

/// A clue that cannot hold together with `c`.
std::optional<bench::Clue> contradiction_of(const bench::Clue& c, const bench::PuzzleInstance& p) {
  using K = bench::ClueKind;
  switch (c.kind) {
    case K::AtPosition: return bench::Clue{K::NotAtPosition, c.a, {}, c.position};
    case K::NotAtPosition: return bench::Clue{K::AtPosition, c.a, {}, c.position};
    case K::DirectlyLeft:
    case K::LeftOf: return bench::Clue{K::LeftOf, c.b, c.a, 0};
    case K::SamePerson:
      for (const auto& f : p.features) {
        if (f.name != c.b.feature) continue;
        for (const auto& v : f.values) {
          if (v != c.b.value) return bench::Clue{K::SamePerson, c.a, {c.b.feature, v}, 0};
        }
      }
      return std::nullopt;
    case K::NextTo:
      if (c.a.feature == c.b.feature) return std::nullopt;
      return bench::Clue{K::SamePerson, c.a, c.b, 0};
  }
  return std::nullopt;
}

using Script = std::vector<std::pair<std::string, std::string>>;

class ScriptedFormalizer : public agent::Formalizer {
 public:
  explicit ScriptedFormalizer(Script script) : script_(std::move(script)) {}
  frontend::SourceText gen_data_structure(const std::string&, const agent::OutputFormat&) override {
    return {script_[std::min(calls_++, script_.size() - 1)].first, "ds"};
  }
  frontend::SourceText gen_constraints(const frontend::SourceText&, const std::string&) override {
    return {script_[std::min(calls_ - 1, script_.size() - 1)].second, "validator"};
  }

 private:
  Script script_;
  std::size_t calls_ = 0;
};

std::pair<std::string, std::string> parts(const bench::PuzzleInstance& p) {
  return {bench::render_dsl_classes(p).text, bench::render_dsl_validator(p).text};
}

void criterion_3() {
  // (a) contradiction, then recovery on the next attempt.
  std::vector<bench::PuzzleInstance> puzzles{bench::example_puzzle()};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) puzzles.push_back(bench::generate_puzzle(seed, 4, 4));
  for (const auto& p : puzzles) {
    std::optional<bench::PuzzleInstance> broken;
    for (std::size_t j = 0; j < p.clues.size() && !broken; ++j) {
      if (const auto c = contradiction_of(p.clues[j], p)) {
        broken = p;
        broken->clues[(j + 1) % p.clues.size()] = *c;
      }
    }
    expect(broken.has_value(), p.id + ": no clue to contradict");
    expect(p.clues.size() > 1, p.id + ": too few clues");
    const auto m = lower_text(bench::render_dsl(*broken).text, p.id + "-contradiction");
    expect(solver::solve(m).status == solver::Status::Unsat, p.id + ": contradiction is not unsat");
    ScriptedFormalizer f(Script{parts(*broken), parts(p)});
    const auto r = agent::run_pipeline(p.text, {}, f);
    expect(r.status == agent::PipelineStatus::Solved && r.attempts == 2, p.id + ": no recovery on attempt 2");
    expect(*r.solution == p.truth, p.id + ": recovered table differs from the truth");
  }

  // (b) unparseable on every attempt.
  agent::PipelineConfig config;
  ScriptedFormalizer garbage(Script{{"class House\n", "def validate(s: House) -> None:\n    pass\n"}});
  const auto r = agent::run_pipeline("puzzle", {}, garbage, config);
  expect(r.status == agent::PipelineStatus::FailedSyntax && r.attempts == config.max_attempts,
         "unparseable output did not end in FailedSyntax after max_attempts");

  // (c) a uniqueness-critical clue removed, ambiguity check on.
  const auto example = bench::example_puzzle();
  bool found = false;
  for (std::size_t i = 0; i < example.clues.size() && !found; ++i) {
    auto loose = example;
    loose.clues.erase(loose.clues.begin() + static_cast<std::ptrdiff_t>(i));
    if (bench::has_unique_solution(loose)) continue;
    found = true;
    agent::PipelineConfig strict;
    strict.ambiguity_check = true;
    ScriptedFormalizer f(Script{parts(loose)});
    expect(agent::run_pipeline(loose.text, {}, f, strict).status == agent::PipelineStatus::FailedAmbiguous,
           "dropping clue " + std::to_string(i + 1) + " did not give FailedAmbiguous");
  }
  expect(found, "no uniqueness-critical clue in the example");
}

/// Solve status and decoded table of `text`, after swapping every assume with
/// an assert when `swap` is set.
std::pair<solver::Status, std::optional<SolutionTable>> outcome(const std::string& text, bool swap) {
  auto program = frontend::parse(frontend::SourceText{text, "swap"});
  if (swap) {
    for (auto& s : program.functions.front().body) {
      if (s.kind == frontend::Stmt::Kind::Assume) {
        s.kind = frontend::Stmt::Kind::Assert;
      } else if (s.kind == frontend::Stmt::Kind::Assert) {
        s.kind = frontend::Stmt::Kind::Assume;
      }
    }
  }
  const auto m = model::lower(frontend::check(program));
  const auto out = solver::solve(m);
  if (out.status == solver::Status::Unsat) return {out.status, std::nullopt};
  return {out.status, model::decode(m, *out.assignment)};
}

void criterion_4() {
  std::vector<std::string> programs{test_support::read_data("zebra_4x4.py"), test_support::read_data("six_houses.py")};
  for (int i = 0; i < 60; ++i) {
    const auto [n, f] = oracle_shapes()[static_cast<std::size_t>(i) % oracle_shapes().size()];
    auto p = bench::generate_puzzle(static_cast<std::uint64_t>(5000 + i), n, f);
    programs.push_back(bench::render_dsl(p).text);
    if (p.clues.size() > 1) {
      p.clues.pop_back();
      programs.push_back(bench::render_dsl(p).text);
    }
  }
  for (std::size_t i = 0; i < programs.size(); ++i) {
    const auto base = outcome(programs[i], false);
    const auto swapped = outcome(programs[i], true);
    expect(base == swapped, "program " + std::to_string(i) + " changes under assert/assume swap");
  }
}

std::size_t count(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string_view::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

void criterion_5() {
  const auto program =
      frontend::parse_and_check(frontend::SourceText{test_support::read_data("six_houses.py"), "six_houses.py"});
  const auto h = cemit::emit(program);
  std::size_t unique_fields = 0;
  for (const auto& c : program.program.classes) {
    for (const auto& f : c.fields) unique_fields += f.unique ? 1 : 0;
  }
  std::size_t checks = 0;
  for (const auto& s : program.entry().body) checks += s.kind != frontend::Stmt::Kind::Assign ? 1 : 0;
  expect(count(h.section(h.structs), "struct ") == program.program.classes.size() + 1,  // +1 nested field
         "struct count");
  expect(count(h.section(h.structs), "};") == program.program.classes.size(), "one struct per class");
  expect(count(h.section(h.init_helpers), "__CPROVER_unique_domain(\n") == unique_fields,
         "one unique-domain init per Unique field");
  expect(count(h.section(h.validate), "__CPROVER_assume(") == checks, "one assume per assume/assert");
  const auto main_text = h.section(h.main);
  expect(main_text.find("  __CPROVER_assert(false, \"\");\n}") != std::string_view::npos &&
             count(h.text, "__CPROVER_assert(false, \"\");") == 1,
         "main must end with the reachability assertion");
  expect(cemit::emit(program).text == h.text, "emission is not byte-stable");
  const auto zebra =
      cemit::emit(frontend::parse_and_check(frontend::SourceText{test_support::read_data("zebra_4x4.py"), "z"}));
  expect(zebra.text == test_support::read_data("zebra_4x4.c"), "zebra_4x4.c golden differs");
}

bench::TaskResult task(std::optional<SolutionTable> predicted) {
  bench::TaskResult r;
  r.id = "t";
  r.size = "4x4";
  r.status = predicted ? "Solved" : "FailedUnsat";
  r.predicted = std::move(predicted);
  r.truth = example_table(false);
  return r;
}

bool near(double a, double b) { return std::abs(a - b) <= kAccuracyTolerance; }

void criterion_6() {
  const SolutionTable truth = example_table(false);
  SolutionTable partial = truth;
  for (std::size_t c = 1; c < partial.columns.size(); ++c) partial.rows[0][c] = std::string("wrong");
  const auto mixed = bench::score({task(truth), task(partial)});
  expect(near(mixed.overall.puzzle_accuracy(), 0.5) && near(mixed.overall.cell_accuracy(), 0.875),
         "mixed fixture");
  const auto good = bench::score({task(truth), task(truth)});
  expect(near(good.overall.puzzle_accuracy(), 1.0) && near(good.overall.cell_accuracy(), 1.0), "all-correct");
  const auto none = bench::score({task(std::nullopt), task(std::nullopt)});
  expect(near(none.overall.puzzle_accuracy(), 0.0) && near(none.overall.cell_accuracy(), 0.0), "all-missing");
}

void criterion_7() {
  std::atomic<bool> stop{false};
  bench::BenchConfig config;
  config.gen = bench::GenSpec{1, kBenchPuzzles, {{2, 3}, {2, 6}, {3, 3}, {3, 5}, {4, 4}, {4, 6}, {5, 5}, {6, 6}}};
  config.concurrency = kBenchConcurrency;
  config.stop = &stop;
  const auto start = Clock::now();
  const auto parallel = bench::run_bench(config);
  const double s = seconds_since(start);
  expect(parallel.overall.tasks == static_cast<std::size_t>(kBenchPuzzles), "task count");
  expect(near(parallel.overall.puzzle_accuracy(), 1.0), "puzzle accuracy below 1");
  expect(s < kBenchSeconds, "took " + std::to_string(s) + " s");
  config.concurrency = 1;
  const auto serial = bench::run_bench(config);
  expect(serial.to_json(false) == parallel.to_json(false), "concurrency 1 and 8 reports differ");
}

void criterion_8() {
  const auto p = bench::example_puzzle();
  auto replay = std::make_shared<agent::ReplayTransport>(test_support::data_path("transcript_4x4.jsonl"));
  agent::LlmFormalizer formalizer(replay);
  const auto r = agent::run_pipeline(p.text, agent::OutputFormat{{"house", "name", "occupation", "book", "phone"}},
                                     formalizer);
  expect(replay->remaining() == 0, "transcript not fully consumed");
  expect(r.to_json().dump(2) + "\n" == test_support::read_data("transcript_4x4_result.json"),
         "replayed result differs from the stored one");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"worked example solves to the published table and is unique", criterion_1},
      {"solver agrees with brute force on generated puzzles", criterion_2},
      {"unsat, syntax and ambiguity recovery edges", criterion_3},
      {"assert and assume are interchangeable", criterion_4},
      {"C harness structure and golden", criterion_5},
      {"puzzle and cell accuracy fixtures", criterion_6},
      {"benchmark run with the oracle formalizer", criterion_7},
      {"recorded transcript replays to the stored result (headline LLM accuracy is not reproduced locally)",
       criterion_8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      criteria[i].second();
    } catch (const Failed& f) {
      verdict = "FAIL";
      detail = f.why;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    failures += verdict == "FAIL" ? 1 : 0;
    std::printf("criterion %zu: %s: %s (%.2f s)%s%s\n", i + 1, verdict.c_str(), criteria[i].first.c_str(),
                seconds_since(start), detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
