#include "logic_forge/bench/generator.hpp"

#include <algorithm>
#include <limits>

#include "logic_forge/bench/render_dsl.hpp"
#include "logic_forge/frontend/checker.hpp"
#include "logic_forge/model/decode.hpp"
#include "logic_forge/model/lower.hpp"

namespace logic_forge::bench {

// MT19937-64 written out so the stream is fixed by this file alone.
Rng::Rng(std::uint64_t seed) {
  state_[0] = seed;
  for (std::size_t i = 1; i < 312; ++i) {
    state_[i] = 6364136223846793005ULL * (state_[i - 1] ^ (state_[i - 1] >> 62)) + i;
  }
}

std::uint64_t Rng::next() {
  constexpr std::uint64_t upper = 0xFFFFFFFF80000000ULL;
  constexpr std::uint64_t lower = 0x7FFFFFFFULL;
  if (index_ >= 312) {
    for (std::size_t i = 0; i < 312; ++i) {
      const std::uint64_t x = (state_[i] & upper) | (state_[(i + 1) % 312] & lower);
      std::uint64_t xa = x >> 1;
      if (x & 1U) xa ^= 0xB5026F5AA96619E9ULL;
      state_[i] = state_[(i + 156) % 312] ^ xa;
    }
    index_ = 0;
  }
  std::uint64_t y = state_[index_++];
  y ^= (y >> 29) & 0x5555555555555555ULL;
  y ^= (y << 17) & 0x71D67FFFEDA60000ULL;
  y ^= (y << 37) & 0xFFF7EEE000000000ULL;
  y ^= y >> 43;
  return y;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound);
  for (;;) {
    const std::uint64_t r = next();
    if (r < limit) return r % bound;
  }
}

namespace {

const std::vector<Feature>& feature_pool() {
  static const std::vector<Feature> pool = {
      {"name", {"alice", "bob", "carol", "david", "eric", "fiona", "george", "hannah"}},
      {"occupation", {"artist", "engineer", "teacher", "doctor", "chef", "pilot", "nurse", "lawyer"}},
      {"book", {"fantasy", "mystery", "romance", "science fiction", "biography", "history", "poetry"}},
      {"pet", {"cat", "dog", "parrot", "hamster", "rabbit", "goldfish", "turtle"}},
      {"drink", {"coffee", "tea", "milk", "water", "juice", "cocoa", "lemonade"}},
      {"color", {"red", "green", "blue", "yellow", "white", "purple", "orange"}},
      {"sport", {"tennis", "soccer", "chess", "cycling", "rowing", "swimming", "golf"}},
      {"music", {"jazz", "rock", "classical", "pop", "folk", "blues", "hip hop"}},
      {"flower", {"rose", "tulip", "lily", "daisy", "orchid", "iris", "carnation"}},
      {"food", {"pizza", "soup", "salad", "sushi", "tacos", "curry", "pasta"}},
  };
  return pool;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

struct Layout {
  std::vector<Feature> features;
  std::vector<std::vector<std::size_t>> at;  // at[f][h]: value index in house h
  FeatureRef ref(std::size_t f, std::size_t h) const { return {features[f].name, features[f].values[at[f][h]]}; }
};

struct Candidates {
  std::vector<Clue> sampled;
  std::vector<Clue> unused_positions;
};

Candidates candidate_clues(const Layout& l, Rng& rng, int n, int f) {
  using K = ClueKind;
  const auto N = static_cast<std::size_t>(n);
  const auto F = static_cast<std::size_t>(f);
  std::vector<Clue> same, at, not_at, directly, left, next;
  for (std::size_t h = 0; h < N; ++h) {
    for (std::size_t a = 0; a < F; ++a) {
      at.push_back({K::AtPosition, l.ref(a, h), {}, static_cast<int>(h + 1)});
      for (std::size_t p = 0; p < N; ++p) {
        if (p != h) not_at.push_back({K::NotAtPosition, l.ref(a, h), {}, static_cast<int>(p + 1)});
      }
      for (std::size_t b = a + 1; b < F; ++b) {
        if (rng.below(2) == 0) {
          same.push_back({K::SamePerson, l.ref(a, h), l.ref(b, h), 0});
        } else {
          same.push_back({K::SamePerson, l.ref(b, h), l.ref(a, h), 0});
        }
      }
    }
  }
  for (std::size_t h1 = 0; h1 < N; ++h1) {
    for (std::size_t h2 = h1 + 1; h2 < N; ++h2) {
      for (std::size_t a = 0; a < F; ++a) {
        for (std::size_t b = 0; b < F; ++b) {
          left.push_back({K::LeftOf, l.ref(a, h1), l.ref(b, h2), 0});
          if (h2 == h1 + 1) {
            directly.push_back({K::DirectlyLeft, l.ref(a, h1), l.ref(b, h2), 0});
            if (rng.below(2) == 0) {
              next.push_back({K::NextTo, l.ref(a, h1), l.ref(b, h2), 0});
            } else {
              next.push_back({K::NextTo, l.ref(b, h2), l.ref(a, h1), 0});
            }
          }
        }
      }
    }
  }
  std::vector<Clue> out;
  auto take = [&](std::vector<Clue>& kind, std::size_t quota) {
    rng.shuffle(kind);
    for (std::size_t i = 0; i < std::min(quota, kind.size()); ++i) out.push_back(kind[i]);
  };
  take(same, N * F);
  take(at, std::max<std::size_t>(1, N / 2));
  take(not_at, N * F / 2 + 1);
  take(directly, N);
  take(left, N);
  take(next, N);
  rng.shuffle(out);
  Candidates c{std::move(out), {}};
  for (const Clue& clue : at) {
    if (std::find(c.sampled.begin(), c.sampled.end(), clue) == c.sampled.end()) {
      c.unused_positions.push_back(clue);
    }
  }
  return c;
}

}  // namespace

bool has_unique_solution(const PuzzleInstance& p, const solver::Budget& budget) {
  const auto checked = frontend::parse_and_check(render_dsl(p));
  const auto model = model::lower(checked);
  const auto truth = model::encode(model, p.truth);
  solver::SolveOptions options;
  options.budget = budget;
  return !solver::find_second(model, truth, options).second.has_value();
}

PuzzleInstance generate_puzzle(std::uint64_t seed, int n, int f, const GeneratorOptions& options) {
  if (n < 2 || n > 6 || f < 2 || f > 6) {
    throw GenerationError("puzzle size " + size_label(n, f) + " is outside 2..6 x 2..6");
  }
  Rng rng(seed);
  Layout layout;
  auto pool_order = iota(feature_pool().size());
  rng.shuffle(pool_order);
  for (int i = 0; i < f; ++i) {
    const Feature& source = feature_pool()[pool_order[static_cast<std::size_t>(i)]];
    auto picks = iota(source.values.size());
    rng.shuffle(picks);
    picks.resize(static_cast<std::size_t>(n));
    std::sort(picks.begin(), picks.end());
    Feature feature{source.name, {}};
    for (std::size_t v : picks) feature.values.push_back(source.values[v]);
    layout.features.push_back(std::move(feature));
    auto perm = iota(static_cast<std::size_t>(n));
    rng.shuffle(perm);
    layout.at.push_back(std::move(perm));
  }

  PuzzleInstance p;
  p.id = "gen-" + std::to_string(seed) + "-" + size_label(n, f);
  p.n_entities = n;
  p.n_features = f;
  p.features = layout.features;
  p.truth = make_truth(layout.features, layout.at);

  Candidates candidates = candidate_clues(layout, rng, n, f);
  // Pinning every feature of every house is always unique.
  try {
    p.clues = std::move(candidates.sampled);
    if (!has_unique_solution(p, options.budget)) {
      p.clues.insert(p.clues.end(), candidates.unused_positions.begin(), candidates.unused_positions.end());
    }
    if (!has_unique_solution(p, options.budget)) throw GenerationError("candidate clues are not unique");
  } catch (const solver::BudgetExceeded& e) {
    throw GenerationError(std::string("solver budget exhausted while generating: ") + e.what());
  }

  for (std::size_t i = 0; i < p.clues.size();) {
    PuzzleInstance trial = p;
    trial.clues.erase(trial.clues.begin() + static_cast<std::ptrdiff_t>(i));
    bool unique = false;
    try {
      unique = has_unique_solution(trial, options.budget);
    } catch (const solver::BudgetExceeded&) {
      unique = false;  // keep the clue
    }
    if (unique) {
      p.clues = std::move(trial.clues);
    } else {
      ++i;
    }
  }
  p.text = render_text(p);
  return p;
}

}  // namespace logic_forge::bench
