#include "logic_forge/agent/prompts.hpp"

#include <stdexcept>
#include <string>

namespace logic_forge::agent {

std::string_view prompt_text(std::string_view name) {
  for (const auto& p : embedded_prompts()) {
    if (p.name == name) return p.text;
  }
  throw std::out_of_range("no prompt asset named " + std::string(name));
}

}  // namespace logic_forge::agent
