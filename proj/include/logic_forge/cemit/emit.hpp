#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::cemit {

/// Half-open byte range into CHarness::text.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// C search harness for CBMC: a nondeterministic solution object, the
/// validator with every check as an assumption, and one reachability assert.
struct CHarness {
  std::string text;
  ByteRange structs;
  ByteRange domain_arrays;
  ByteRange init_helpers;
  ByteRange validate;
  ByteRange main;

  std::string_view section(const ByteRange& r) const {
    return std::string_view(text).substr(r.begin, r.end - r.begin);
  }
};

/// Reserved for checked constructs without a C mapping.
class EmitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CHarness emit(const frontend::CheckedProgram& program);

}  // namespace logic_forge::cemit
