#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace test_support {

inline std::string data_path(const std::string& name) {
  return std::string(LF_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace test_support

namespace test_support {

/// Compares `actual` with a golden file; rewrites the file instead when
/// LF_UPDATE_GOLDEN is set in the environment.
inline bool matches_golden(const std::string& name, const std::string& actual) {
  if (std::getenv("LF_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(data_path(name), std::ios::binary) << actual;
    return true;
  }
  return read_data(name) == actual;
}

}  // namespace test_support
