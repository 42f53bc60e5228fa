#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "logic_forge/solver/domain.hpp"

namespace logic_forge::solver {

/// Over-approximation of the values an expression can take: either an
/// explicit sorted set or a closed interval.
struct ValueSet {
  static constexpr std::size_t kExplicitCap = 4096;

  bool exact = true;
  std::vector<Value> vals;
  Value lo = 1;
  Value hi = 0;

  bool empty() const { return lo > hi; }

  static ValueSet none() { return {}; }
  static ValueSet single(Value v) {
    ValueSet s;
    s.vals = {v};
    s.lo = s.hi = v;
    return s;
  }
  static ValueSet interval(Value lo, Value hi) {
    ValueSet s;
    s.exact = false;
    s.lo = lo;
    s.hi = hi;
    if (lo == hi) s = single(lo);
    return s;
  }
  static ValueSet of(std::vector<Value> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) return none();
    if (v.size() > kExplicitCap) return interval(v.front(), v.back());
    ValueSet s;
    s.lo = v.front();
    s.hi = v.back();
    s.vals = std::move(v);
    return s;
  }
  static ValueSet of_domain(const Domain& d) {
    if (d.empty()) return none();
    if (d.size() > kExplicitCap) return interval(d.min(), d.max());
    ValueSet s;
    s.vals = d.values();
    s.lo = s.vals.front();
    s.hi = s.vals.back();
    return s;
  }
  static ValueSet booleans(bool can_false, bool can_true) {
    std::vector<Value> v;
    if (can_false) v.push_back(0);
    if (can_true) v.push_back(1);
    return of(std::move(v));
  }

  bool contains(Value v) const {
    if (empty() || v < lo || v > hi) return false;
    return !exact || std::binary_search(vals.begin(), vals.end(), v);
  }
  std::optional<Value> singleton() const {
    if (!empty() && lo == hi) return lo;
    return std::nullopt;
  }
  std::size_t size_hint() const {
    if (empty()) return 0;
    if (exact) return vals.size();
    return std::numeric_limits<std::size_t>::max();
  }
};

/// Values an expression is allowed to take. A negated set is always exact.
struct Allowed {
  ValueSet set;
  bool negated = false;

  static Allowed in(ValueSet s) { return {std::move(s), false}; }
  static Allowed except(ValueSet s) { return {std::move(s), true}; }

  bool contains(Value v) const { return set.contains(v) != negated; }
};

}  // namespace logic_forge::solver
