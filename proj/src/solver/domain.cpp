#include "logic_forge/solver/domain.hpp"

#include <stdexcept>

namespace logic_forge::solver {

Domain::Domain(Value lo, Value hi_exclusive)
    : base_(lo), span_(hi_exclusive > lo ? static_cast<std::size_t>(hi_exclusive - lo) : 0) {
  words_.assign((span_ + 63) / 64, ~std::uint64_t{0});
  if (span_ % 64 != 0) words_.back() = (std::uint64_t{1} << (span_ % 64)) - 1;
  count_ = span_;
}

Value Domain::min() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return base_ + static_cast<Value>(w * 64 + std::countr_zero(words_[w]));
  }
  throw std::logic_error("min() of an empty domain");
}

Value Domain::max() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return base_ + static_cast<Value>(w * 64 + 63 - std::countl_zero(words_[w]));
  }
  throw std::logic_error("max() of an empty domain");
}

bool Domain::remove(Value v) {
  if (!contains(v)) return false;
  const auto i = static_cast<std::size_t>(v - base_);
  words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  --count_;
  return true;
}

bool Domain::assign(Value v) {
  if (count_ == 1 && contains(v)) return false;
  const bool had = contains(v);
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
  if (had) {
    const auto i = static_cast<std::size_t>(v - base_);
    words_[i >> 6] = std::uint64_t{1} << (i & 63);
    count_ = 1;
  }
  return true;
}

std::vector<Value> Domain::values() const {
  std::vector<Value> out;
  out.reserve(count_);
  for_each([&](Value v) { out.push_back(v); });
  return out;
}

}  // namespace logic_forge::solver
