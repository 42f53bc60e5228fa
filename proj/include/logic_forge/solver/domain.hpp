#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "logic_forge/model/model.hpp"

namespace logic_forge::solver {

using model::Value;

/// Bitset over a contiguous value window `[base, base + span)`.
class Domain {
 public:
  Domain() = default;
  Domain(Value lo, Value hi_exclusive);

  bool contains(Value v) const {
    if (v < base_ || v >= base_ + static_cast<Value>(span_)) return false;
    const auto i = static_cast<std::size_t>(v - base_);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool is_fixed() const { return count_ == 1; }
  Value min() const;
  Value max() const;

  /// Removes `v`; returns true when the domain changed.
  bool remove(Value v);
  /// Restricts the domain to `{v}` (or empties it when `v` is absent).
  bool assign(Value v);

  template <class Pred>
  bool retain_if(Pred keep) {
    bool changed = false;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const Value v = base_ + static_cast<Value>(w * 64 + static_cast<std::size_t>(b));
        if (!keep(v)) {
          words_[w] &= ~(std::uint64_t{1} << b);
          --count_;
          changed = true;
        }
      }
    }
    return changed;
  }

  template <class F>
  void for_each(F f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        f(base_ + static_cast<Value>(w * 64 + static_cast<std::size_t>(b)));
      }
    }
  }

  std::vector<Value> values() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Value base_ = 0;
  std::size_t span_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

}  // namespace logic_forge::solver
