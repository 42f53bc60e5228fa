#pragma once

#include <limits>

#include "logic_forge/model/model.hpp"

namespace logic_forge::solver {

using model::Value;

// Integer arithmetic used by both evaluation and propagation. Results
// saturate at the int64 limits instead of wrapping.
inline Value sat_add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r)) {
    return b > 0 ? std::numeric_limits<Value>::max() : std::numeric_limits<Value>::min();
  }
  return r;
}

inline Value sat_sub(Value a, Value b) {
  Value r;
  if (__builtin_sub_overflow(a, b, &r)) {
    return b < 0 ? std::numeric_limits<Value>::max() : std::numeric_limits<Value>::min();
  }
  return r;
}

inline Value sat_mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r)) {
    return (a < 0) != (b < 0) ? std::numeric_limits<Value>::min()
                              : std::numeric_limits<Value>::max();
  }
  return r;
}

inline Value sat_abs(Value a) {
  return a == std::numeric_limits<Value>::min() ? std::numeric_limits<Value>::max()
                                                : (a < 0 ? -a : a);
}

}  // namespace logic_forge::solver
