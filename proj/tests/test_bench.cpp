#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "logic_forge/agent/check_solution.hpp"
#include "logic_forge/bench/dataset.hpp"
#include "logic_forge/bench/generator.hpp"
#include "logic_forge/bench/render_dsl.hpp"
#include "logic_forge/bench/runner.hpp"
#include "logic_forge/bench/score.hpp"
#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/lower.hpp"
#include "logic_forge/solver/brute_force.hpp"
#include "logic_forge/solver/solver.hpp"

using namespace logic_forge;
using namespace logic_forge::bench;

namespace {

// Published solution of the 4-house example, lowercased.
SolutionTable expected_example_table() {
  SolutionTable t;
  t.columns = {"house", "name", "occupation", "book", "phone"};
  t.rows = {
      {std::int64_t{1}, std::string("alice"), std::string("engineer"), std::string("romance"),
       std::string("google pixel 6")},
      {std::int64_t{2}, std::string("peter"), std::string("artist"), std::string("fantasy"),
       std::string("samsung galaxy s21")},
      {std::int64_t{3}, std::string("eric"), std::string("teacher"), std::string("science fiction"),
       std::string("iphone 13")},
      {std::int64_t{4}, std::string("arnold"), std::string("doctor"), std::string("mystery"),
       std::string("oneplus 9")},
  };
  t.key_column = 0;
  return t;
}

model::ConstraintModel model_of(const PuzzleInstance& p) {
  return model::lower(frontend::parse_and_check(render_dsl(p)));
}

/// Copy of `truth` with `wrong` non-key cells replaced.
SolutionTable damaged(SolutionTable t, std::size_t wrong) {
  for (std::size_t r = 0; r < t.rows.size() && wrong > 0; ++r) {
    for (std::size_t c = 1; c < t.columns.size() && wrong > 0; ++c, --wrong) {
      t.rows[r][c] = std::string("wrong");
    }
  }
  return t;
}

TaskResult result(std::string id, std::string size, std::optional<SolutionTable> predicted,
                  SolutionTable truth) {
  TaskResult r;
  r.id = std::move(id);
  r.size = std::move(size);
  r.status = predicted ? "Solved" : "FailedUnsat";
  r.predicted = std::move(predicted);
  r.truth = std::move(truth);
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lf_bench_" + name)).string();
}

}  // namespace

TEST_CASE("example puzzle: truth table and clue consistency") {
  const PuzzleInstance p = example_puzzle();
  CHECK(p.truth == expected_example_table());
  for (const Clue& c : p.clues) CHECK_MESSAGE(clue_holds(c, p.truth), render_clue(c));
}

TEST_CASE("render_dsl of the example solves to the published table and is unique") {
  const PuzzleInstance p = example_puzzle();
  const auto m = model_of(p);
  const auto out = solver::solve(m);
  REQUIRE(out.status == solver::Status::Sat);
  CHECK(model::decode(m, *out.assignment) == expected_example_table());
  CHECK_FALSE(solver::find_second(m, *out.assignment).second.has_value());
  CHECK(has_unique_solution(p));
}

TEST_CASE("render_dsl shapes") {
  PuzzleInstance p = example_puzzle();
  const std::string text = render_dsl(p).text;
  CHECK(text.find("    house: Unique[Domain[int, range(1, 5)]]\n") != std::string::npos);
  CHECK(text.find("    houses: list[House, 4]\n") != std::string::npos);
  CHECK(text.find("    assert a1.house == b1.house - 1\n") != std::string::npos);
  CHECK(text.find("    assert a7.house < b7.house\n") != std::string::npos);

  p.clues = {{ClueKind::NextTo, {"name", "alice"}, {"name", "eric"}, 0}};
  CHECK(render_dsl(p).text.find("    assert abs(a1.house - b1.house) == 1\n") != std::string::npos);

  SUBCASE("zero clues parse and are ambiguous") {
    p.clues.clear();
    const std::string src = render_dsl(p).text;
    CHECK(src.find("    pass\n") != std::string::npos);
    const auto m = model_of(p);
    const auto out = solver::solve(m);
    REQUIRE(out.status == solver::Status::Sat);
    CHECK(solver::find_second(m, *out.assignment).second.has_value());
  }
}

TEST_CASE("puzzle text round-trips through parse_text") {
  const PuzzleInstance p = example_puzzle();
  const PuzzleInstance back = parse_text(p.text);
  CHECK(back.n_entities == 4);
  CHECK(back.features == p.features);
  CHECK(back.clues == p.clues);
  CHECK_THROWS_AS(parse_text("There are 2 houses in a row.\nsomething else\n"), PuzzleTextError);
  CHECK_THROWS_AS(parse_text(p.text + "11. The person whose name is zoe lives in house 1.\n"),
                  PuzzleTextError);
}

TEST_CASE("oracle formalizer output equals render_dsl") {
  const PuzzleInstance p = example_puzzle();
  OracleFormalizer oracle;
  const auto ds = oracle.gen_data_structure(p.text, {});
  const auto validator = oracle.gen_constraints(ds, p.text);
  CHECK(agent::merge_sources(ds, validator, 1).text == render_dsl(p).text);
  CHECK_THROWS_AS(oracle.gen_data_structure("not a puzzle", {}), agent::ExtractionError);
}

TEST_CASE("shape classes") {
  CHECK(classify_shape(3, 3) == ShapeClass::Easy);
  CHECK(classify_shape(2, 6) == ShapeClass::Easy);
  CHECK(classify_shape(3, 2) == ShapeClass::Easy);
  CHECK(classify_shape(3, 4) == ShapeClass::Hard);
  CHECK(classify_shape(4, 2) == ShapeClass::Hard);
  CHECK(classify_shape(6, 6) == ShapeClass::Hard);
  CHECK(classify_shape(2, 2) == ShapeClass::Unclassified);
  CHECK(parse_size("4x5") == std::make_pair(4, 5));
  CHECK_FALSE(parse_size("4 by 5").has_value());
}

TEST_CASE("generate_puzzle: seed 42, 4x4 is unique by brute force and deterministic") {
  const PuzzleInstance p = generate_puzzle(42, 4, 4);
  CHECK(p.n_entities == 4);
  CHECK(p.features.size() == 4);
  for (const Feature& f : p.features) CHECK(f.values.size() == 4);
  const auto bf = solver::brute_force(model_of(p));
  REQUIRE_FALSE(bf.truncated);
  REQUIRE(bf.solutions.size() == 1);
  CHECK(model::decode(model_of(p), bf.solutions[0]) == p.truth);

  const PuzzleInstance again = generate_puzzle(42, 4, 4);
  CHECK(again.text == p.text);
  CHECK(render_dsl(again).text == render_dsl(p).text);
  CHECK(again.truth == p.truth);
  CHECK(generate_puzzle(43, 4, 4).text != p.text);
}

TEST_CASE("generate_puzzle rejects sizes outside 2..6") {
  CHECK_THROWS_AS(generate_puzzle(1, 1, 3), GenerationError);
  CHECK_THROWS_AS(generate_puzzle(1, 3, 7), GenerationError);
  CHECK_THROWS_AS(generate_puzzle(1, 7, 2), GenerationError);
}

TEST_CASE("Rng is a fixed stream") {
  Rng a(5489);
  Rng b(5489);
  for (int i = 0; i < 100; ++i) CHECK(a.below(1000) == b.below(1000));
  Rng c(7);
  for (int i = 0; i < 1000; ++i) CHECK(c.below(3) < 3);
}

TEST_CASE("property: generated instances are consistent, unique and locally minimal") {
  const std::vector<std::pair<int, int>> shapes = {{2, 3}, {3, 2}, {3, 3}, {2, 6}, {4, 3},
                                                   {3, 4}, {4, 4}, {5, 3}, {5, 5}, {6, 4}};
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto [n, f] = shapes[seed % shapes.size()];
    const PuzzleInstance p = generate_puzzle(seed, n, f);
    CAPTURE(p.id);
    for (const Feature& feature : p.features) {
      REQUIRE(feature.values.size() == static_cast<std::size_t>(n));
      auto sorted = feature.values;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
    for (const Clue& c : p.clues) CHECK(clue_holds(c, p.truth));
    const auto checked = frontend::parse_and_check(render_dsl(p));
    CHECK(agent::check_solution(checked, p.truth));
    const auto m = model::lower(checked);
    const auto out = solver::solve(m);
    REQUIRE(out.status == solver::Status::Sat);
    CHECK(model::decode(m, *out.assignment) == p.truth);
    CHECK_FALSE(solver::find_second(m, *out.assignment).second.has_value());
    if (n * f <= 12) {
      for (std::size_t i = 0; i < p.clues.size(); ++i) {
        PuzzleInstance fewer = p;
        fewer.clues.erase(fewer.clues.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK_FALSE(has_unique_solution(fewer));
      }
    }
    CHECK(parse_text(p.text).clues == p.clues);
  }
}

TEST_CASE("score: two 16-cell tasks, one exact and one with 12 correct") {
  const SolutionTable truth = expected_example_table();
  const auto report = score({result("a", "4x4", truth, truth), result("b", "4x4", damaged(truth, 4), truth)});
  CHECK(report.overall.tasks == 2);
  CHECK(report.overall.total_cells == 32);
  CHECK(report.overall.correct_cells == 28);
  CHECK(report.overall.puzzle_accuracy() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.overall.cell_accuracy() == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(report.hard.tasks == 2);
  CHECK(report.easy.tasks == 0);
}

TEST_CASE("score: all correct, all missing, empty input") {
  const SolutionTable truth = expected_example_table();
  const auto good = score({result("a", "4x4", truth, truth), result("b", "3x3", truth, truth)});
  CHECK(good.overall.puzzle_accuracy() == 1.0);
  CHECK(good.overall.cell_accuracy() == 1.0);
  CHECK(good.easy.tasks == 1);
  const auto none = score({result("a", "4x4", std::nullopt, truth), result("b", "4x4", std::nullopt, truth)});
  CHECK(none.overall.puzzle_accuracy() == 0.0);
  CHECK(none.overall.cell_accuracy() == 0.0);
  CHECK(none.status_counts.at("FailedUnsat") == 2);
  CHECK_THROWS_AS(score({}), EmptyInput);
}

TEST_CASE("score: rows are matched by key, casing and spacing ignored") {
  const SolutionTable truth = expected_example_table();
  SolutionTable shuffled = truth;
  std::reverse(shuffled.rows.begin(), shuffled.rows.end());
  shuffled.columns = {"House", "Name", "Occupation", "Book", "Phone"};
  std::get<std::string>(shuffled.rows[0][1]) = "  ARNOLD ";
  const auto s = score_task(result("a", "4x4", shuffled, truth));
  CHECK(s.exact);
  CHECK(s.correct_cells == 16);

  SolutionTable missing_column = truth;
  missing_column.columns[4] = "gadget";
  const auto partial = score_task(result("a", "4x4", missing_column, truth));
  CHECK(partial.correct_cells == 12);
  CHECK_FALSE(partial.exact);
  CHECK(cells_match(std::string("3"), std::int64_t{3}));
}

TEST_CASE("property: score is invariant under task permutation") {
  const SolutionTable truth = expected_example_table();
  std::vector<TaskResult> results;
  for (std::size_t i = 0; i < 9; ++i) {
    results.push_back(result("t" + std::to_string(i), i % 2 ? "3x3" : "4x4",
                             i % 3 ? std::optional(damaged(truth, i)) : std::nullopt, truth));
  }
  const auto base = score(results);
  Rng rng(11);
  for (int round = 0; round < 20; ++round) {
    rng.shuffle(results);
    const auto s = score(results);
    CHECK(s.overall.exact == base.overall.exact);
    CHECK(s.overall.correct_cells == base.overall.correct_cells);
    CHECK(s.easy.correct_cells == base.easy.correct_cells);
    CHECK(s.hard.exact == base.hard.exact);
    CHECK(s.status_counts == base.status_counts);
  }
  std::size_t counted = 0;
  for (const auto& [status, n] : base.status_counts) counted += n;
  CHECK(counted == base.tasks.size());
}

TEST_CASE("load_dataset") {
  const PuzzleTask task = task_from_instance(example_puzzle());
  const std::string path = temp_path("dataset.jsonl");

  SUBCASE("three good lines") {
    write_dataset(path, {task, task, task});
    const Dataset d = load_dataset(path);
    CHECK(d.tasks.size() == 3);
    CHECK(d.issues.empty());
    CHECK(d.tasks[0].truth == task.truth);
    CHECK(d.tasks[0].format.columns == task.format.columns);
  }
  SUBCASE("a line without truth is reported, others load") {
    auto broken = task_to_json(task);
    broken.erase("truth");
    std::ofstream(path) << task_to_json(task).dump() << '\n' << broken.dump() << "\n\n" << "{oops\n";
    const Dataset d = load_dataset(path);
    CHECK(d.tasks.size() == 1);
    REQUIRE(d.issues.size() == 2);
    CHECK(d.issues[0].line == 2);
    CHECK(d.issues[0].message.find("truth") != std::string::npos);
    CHECK(d.issues[1].line == 4);
  }
  SUBCASE("empty file") {
    std::ofstream(path).close();
    CHECK(load_dataset(path).tasks.empty());
  }
  SUBCASE("all lines bad") {
    std::ofstream(path) << "[]\n{}\n";
    CHECK_THROWS_AS(load_dataset(path), SchemaError);
  }
  SUBCASE("adapter") {
    std::ofstream(path) << R"({"name": "x"})" << '\n';
    const Dataset d = load_dataset(path, [&](const nlohmann::json& j) {
      PuzzleTask t = task;
      t.id = j.at("name").get<std::string>();
      return t;
    });
    REQUIRE(d.tasks.size() == 1);
    CHECK(d.tasks[0].id == "x");
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_dataset(temp_path("does_not_exist.jsonl")), IoError);
}

TEST_CASE("run_bench: generated tasks with the oracle, concurrency 1 and 4 agree") {
  std::atomic<bool> stop{false};
  BenchConfig config;
  config.gen = GenSpec{7, 12, {{2, 3}, {3, 3}, {4, 4}, {3, 4}}};
  config.stop = &stop;
  config.results_path = temp_path("results.jsonl");
  config.concurrency = 1;
  const auto serial = run_bench(config);
  config.concurrency = 4;
  const auto parallel = run_bench(config);
  CHECK(serial.overall.tasks == 12);
  CHECK(serial.overall.puzzle_accuracy() == 1.0);
  CHECK(serial.overall.cell_accuracy() == 1.0);
  CHECK_FALSE(serial.interrupted);
  CHECK(serial.to_json(false) == parallel.to_json(false));

  std::ifstream in(config.results_path);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("status") == "Solved");
    ++lines;
  }
  CHECK(lines == 12);
  std::remove(config.results_path.c_str());
}

TEST_CASE("run_bench: configuration errors come before any output") {
  BenchConfig config;
  config.results_path = temp_path("never.jsonl");
  std::remove(config.results_path.c_str());
  CHECK_THROWS_AS(run_bench(config), ConfigError);
  config.dataset_path = temp_path("missing_dataset.jsonl");
  CHECK_THROWS_AS(run_bench(config), ConfigError);
  config.gen = GenSpec{1, 1, {{2, 3}}};
  CHECK_THROWS_AS(run_bench(config), ConfigError);  // both sources
  config.dataset_path.reset();
  config.concurrency = 0;
  CHECK_THROWS_AS(run_bench(config), ConfigError);
  CHECK_FALSE(std::filesystem::exists(config.results_path));
  CHECK_THROWS_AS(GenSpec::from_json(nlohmann::json::parse(R"({"count": 3, "sizes": ["1x3"]})")),
                  ConfigError);
}

namespace {

/// Oracle that raises the stop flag once it has handled `limit` puzzles.
class StoppingOracle : public OracleFormalizer {
 public:
  StoppingOracle(std::atomic<int>& seen, std::atomic<bool>& stop, int limit)
      : seen_(seen), stop_(stop), limit_(limit) {}
  frontend::SourceText gen_data_structure(const std::string& text, const agent::OutputFormat& f) override {
    if (++seen_ >= limit_) stop_.store(true);
    return OracleFormalizer::gen_data_structure(text, f);
  }

 private:
  std::atomic<int>& seen_;
  std::atomic<bool>& stop_;
  int limit_;
};

}  // namespace

TEST_CASE("run_bench: an interrupt keeps the finished tasks") {
  std::atomic<bool> stop{false};
  std::atomic<int> seen{0};
  BenchConfig config;
  config.gen = GenSpec{3, 10, {{3, 3}}};
  config.stop = &stop;
  config.results_path = temp_path("interrupted.jsonl");
  config.make_formalizer = [&] { return std::make_unique<StoppingOracle>(seen, stop, 3); };
  const auto report = run_bench(config);
  CHECK(report.interrupted);
  CHECK(report.tasks.size() == 3);
  std::ifstream in(config.results_path);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 3);

  stop.store(true);
  const auto nothing = run_bench(config);
  CHECK(nothing.interrupted);
  CHECK(nothing.tasks.empty());
  std::remove(config.results_path.c_str());
}
