#pragma once

#include <cstdint>

#include "logic_forge/bench/puzzle.hpp"
#include "logic_forge/solver/solver.hpp"

namespace logic_forge::bench {

/// Small seeded generator over a fixed 64-bit Mersenne twister stream, with
/// its own range reduction so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::uint64_t next();
  std::uint64_t state_[312];
  std::size_t index_ = 312;
};

struct GeneratorOptions {
  solver::Budget budget{1'000'000, std::chrono::milliseconds{10'000}};
};

/// Puzzle with `n` houses and `f` features whose clue set has exactly one
/// solution and stays minimal: dropping any clue admits a second solution.
/// Same seed and size give the same puzzle. Throws GenerationError for sizes
/// outside 2..6 or when the solver budget runs out.
PuzzleInstance generate_puzzle(std::uint64_t seed, int n, int f, const GeneratorOptions& options = {});

/// True iff the clues of `p` admit exactly the table `p.truth`.
bool has_unique_solution(const PuzzleInstance& p, const solver::Budget& budget = {});

}  // namespace logic_forge::bench
