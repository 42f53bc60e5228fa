#pragma once

#include <string_view>
#include <vector>

namespace logic_forge::agent {

struct EmbeddedPrompt {
  std::string_view name;
  std::string_view text;
};

/// Prompt assets compiled into the library, sorted by name.
const std::vector<EmbeddedPrompt>& embedded_prompts();

/// Text of the named prompt; throws std::out_of_range when absent.
std::string_view prompt_text(std::string_view name);

}  // namespace logic_forge::agent
