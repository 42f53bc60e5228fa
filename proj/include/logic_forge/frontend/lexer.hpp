#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logic_forge/frontend/ast.hpp"

namespace logic_forge::frontend {

enum class TokenKind { Name, Int, String, Op, Newline, Indent, Dedent, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier, operator spelling, or decoded string value
  std::int64_t int_value = 0;
  SourcePos pos;
};

/// Splits indentation-sensitive source into tokens. Newlines inside brackets
/// are joined, `#` comments are dropped, and INDENT/DEDENT tokens bracket
/// nested blocks. Throws SyntaxError.
std::vector<Token> tokenize(const SourceText& source);

}  // namespace logic_forge::frontend
