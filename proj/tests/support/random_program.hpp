#pragma once

// Hand-rolled generator of small, well-typed Logic.py programs for property
// tests. Every program it emits parses and checks.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace test_support {

struct RandomProgramOptions {
  int min_instances = 2;
  int max_instances = 4;
  int max_str_fields = 3;
  int max_clues = 11;
};

class RandomProgram {
 public:
  RandomProgram(std::uint64_t seed, RandomProgramOptions options = {})
      : rng_(seed), options_(options) {}

  std::string generate() {
    n_ = pick(options_.min_instances, options_.max_instances);
    has_position_ = coin(0.75);
    str_fields_ = pick(1, options_.max_str_fields);
    has_score_ = (n_ < 4 || str_fields_ < 3) && coin(0.3);
    has_root_ = coin(0.25);
    std::ostringstream out;
    out << "class Item:\n";
    if (has_position_) out << "    pos: Unique[Domain[int, range(1, " << n_ + 1 << ")]]\n";
    for (int f = 0; f < str_fields_; ++f) {
      out << "    f" << f << ": Unique[Domain[str";
      for (int k = 0; k < n_; ++k) out << ", \"" << label(f, k) << "\"";
      out << "]]\n";
    }
    if (has_score_) out << "    score: Domain[int, range(0, 3)]\n";
    out << "\nclass PuzzleSolution:\n";
    if (has_root_) out << "    bonus: Domain[int, range(0, 4)]\n";
    out << "    items: list[Item, " << n_ << "]\n";
    out << "\ndef validate(solution: PuzzleSolution) -> None:\n";
    const int clues = pick(0, options_.max_clues);
    if (clues == 0) out << "    pass\n";
    for (int c = 0; c < clues; ++c) clue(out, c);
    return out.str();
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  static std::string label(int f, int k) { return "v" + std::to_string(f) + "_" + std::to_string(k); }

  std::string bind(std::ostream& out, int c, const std::string& tag) {
    const std::string name = tag + std::to_string(c);
    const int f = pick(0, str_fields_ - 1);
    out << "    " << name << " = nondet(solution.items)\n";
    out << "    assume(" << name << ".f" << f << " == \"" << label(f, pick(0, n_ - 1)) << "\")\n";
    return name;
  }

  std::string str_test(const std::string& obj) {
    const int f = pick(0, str_fields_ - 1);
    const char* op = coin(0.7) ? " == " : " != ";
    return obj + ".f" + std::to_string(f) + op + "\"" + label(f, pick(0, n_ - 1)) + "\"";
  }

  void clue(std::ostream& out, int c) {
    const int kind = pick(0, 7);
    if (kind == 0 || !has_position_) {
      const std::string a = bind(out, c, "a");
      out << "    assert " << str_test(a) << "\n";
      return;
    }
    if (kind == 1) {
      const std::string a = bind(out, c, "a");
      out << "    assert " << a << ".pos == " << pick(1, n_) << "\n";
      return;
    }
    if (kind == 2 || kind == 3) {
      const std::string a = bind(out, c, "a");
      const std::string b = bind(out, c, "b");
      static const char* forms[] = {"{a}.pos < {b}.pos", "{a}.pos == {b}.pos - 1",
                                    "abs({a}.pos - {b}.pos) == 1", "{a}.pos + 1 >= {b}.pos",
                                    "{a}.pos * 2 > {b}.pos"};
      std::string form = forms[pick(0, 4)];
      for (auto at = form.find("{a}"); at != std::string::npos; at = form.find("{a}")) form.replace(at, 3, a);
      for (auto at = form.find("{b}"); at != std::string::npos; at = form.find("{b}")) form.replace(at, 3, b);
      out << "    assert " << form << "\n";
      return;
    }
    if (kind == 4) {
      const std::string a = bind(out, c, "a");
      out << "    assert " << str_test(a) << " or " << str_test(a) << "\n";
      return;
    }
    if (kind == 5) {
      const std::string a = bind(out, c, "a");
      out << "    assert not (" << str_test(a) << ")\n";
      return;
    }
    if (kind == 6 && coin(0.5)) {
      out << "    assert " << str_test("solution.items[" + std::to_string(pick(0, n_ - 1)) + "]") << "\n";
      return;
    }
    if (has_root_) {
      const std::string a = bind(out, c, "a");
      out << "    assert solution.bonus " << (coin(0.5) ? ">" : "<=") << " " << a << ".pos\n";
      return;
    }
    if (has_score_) {
      const std::string a = bind(out, c, "a");
      out << "    assert " << a << ".score + " << a << ".pos != 3\n";
      return;
    }
    const std::string a = bind(out, c, "a");
    out << "    assert " << a << ".pos != " << pick(1, n_) << "\n";
  }

  std::mt19937_64 rng_;
  RandomProgramOptions options_;
  int n_ = 0;
  bool has_position_ = false;
  int str_fields_ = 0;
  bool has_score_ = false;
  bool has_root_ = false;
};

}  // namespace test_support
