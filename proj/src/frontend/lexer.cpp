#include "logic_forge/frontend/lexer.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace logic_forge::frontend {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(const SourceText& source) : src_(source.text), origin_(source.origin) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    while (i_ < src_.size()) {
      if (at_line_start_ && depth_ == 0) {
        if (!handle_indentation()) continue;
      }
      lex_token();
    }
    if (!open_brackets_.empty()) {
      fail(open_brackets_.back().second,
           std::string("'") + open_brackets_.back().first + "' was never closed");
    }
    if (line_has_tokens_) push(TokenKind::Newline, "", here());
    while (indents_.size() > 1) {
      indents_.pop_back();
      push(TokenKind::Dedent, "", here());
    }
    push(TokenKind::End, "", here());
    return std::move(tokens_);
  }

 private:
  SourcePos here() const { return SourcePos{line_, col_}; }

  [[noreturn]] void fail(SourcePos pos, const std::string& message) const {
    throw SyntaxError(origin_, pos, message);
  }

  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void push(TokenKind kind, std::string text, SourcePos pos) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.pos = pos;
    tokens_.push_back(std::move(t));
  }

  // Measures the indentation of a fresh logical line. Returns false when the
  // line was blank or comment-only and has been consumed.
  bool handle_indentation() {
    int width = 0;
    while (peek() == ' ' || peek() == '\t') {
      width = peek() == '\t' ? (width / 8 + 1) * 8 : width + 1;
      advance();
    }
    if (peek() == '#') {
      while (i_ < src_.size() && peek() != '\n') advance();
    }
    if (i_ >= src_.size()) return false;
    if (peek() == '\n' || peek() == '\r') {
      while (peek() == '\r') advance();
      if (peek() == '\n') advance();
      return false;
    }
    at_line_start_ = false;
    const SourcePos pos = here();
    if (width > indents_.back()) {
      indents_.push_back(width);
      push(TokenKind::Indent, "", pos);
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        push(TokenKind::Dedent, "", pos);
      }
      if (width != indents_.back()) fail(pos, "unindent does not match any outer indentation level");
    }
    return true;
  }

  void end_line() {
    if (depth_ == 0) {
      if (line_has_tokens_) push(TokenKind::Newline, "", here());
      line_has_tokens_ = false;
      at_line_start_ = true;
    }
    advance();
  }

  void lex_token() {
    const char c = peek();
    if (c == '\n') {
      end_line();
      return;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
      advance();
      return;
    }
    if (c == '#') {
      while (i_ < src_.size() && peek() != '\n') advance();
      return;
    }
    if (c == '\\') {
      const SourcePos pos = here();
      advance();
      while (peek() == '\r') advance();
      if (peek() != '\n') fail(pos, "unexpected character after line continuation");
      advance();
      return;
    }
    line_has_tokens_ = true;
    const SourcePos pos = here();
    if (is_ident_start(c)) {
      std::string ident;
      while (is_ident_char(peek())) {
        ident += peek();
        advance();
      }
      push(TokenKind::Name, std::move(ident), pos);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_int(pos);
      return;
    }
    if (c == '"' || c == '\'') {
      lex_string(pos);
      return;
    }
    lex_operator(pos);
  }

  void lex_int(SourcePos pos) {
    std::int64_t value = 0;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const int d = peek() - '0';
      if (value > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
        fail(pos, "integer literal out of range");
      }
      value = value * 10 + d;
      digits += peek();
      advance();
    }
    if (is_ident_char(peek()) || peek() == '.') fail(here(), "malformed number literal");
    Token t;
    t.kind = TokenKind::Int;
    t.text = std::move(digits);
    t.int_value = value;
    t.pos = pos;
    tokens_.push_back(std::move(t));
  }

  void lex_string(SourcePos pos) {
    const char quote = peek();
    const bool triple = peek(1) == quote && peek(2) == quote;
    for (int k = 0; k < (triple ? 3 : 1); ++k) advance();
    std::string value;
    while (true) {
      if (i_ >= src_.size()) fail(pos, "unterminated string literal");
      const char c = peek();
      if (c == quote) {
        if (!triple) {
          advance();
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          for (int k = 0; k < 3; ++k) advance();
          break;
        }
      }
      if (c == '\n' && !triple) fail(pos, "unterminated string literal");
      if (c == '\\') {
        advance();
        if (i_ >= src_.size()) fail(pos, "unterminated string literal");
        const char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '\\': value += '\\'; break;
          case '\'': value += '\''; break;
          case '"': value += '"'; break;
          case '\n': break;
          default:
            value += '\\';
            value += e;
            break;
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    push(TokenKind::String, std::move(value), pos);
  }

  void lex_operator(SourcePos pos) {
    static constexpr std::string_view kTwoChar[] = {"->", "==", "!=", "<=", ">="};
    for (std::string_view op : kTwoChar) {
      if (peek() == op[0] && peek(1) == op[1]) {
        advance();
        advance();
        push(TokenKind::Op, std::string(op), pos);
        return;
      }
    }
    const char c = peek();
    switch (c) {
      case '(': case '[':
        ++depth_;
        open_brackets_.emplace_back(c, pos);
        break;
      case ')': case ']':
        if (depth_ == 0) fail(pos, std::string("unmatched '") + c + "'");
        if ((c == ')') != (open_brackets_.back().first == '(')) {
          fail(pos, std::string("closing '") + c + "' does not match '" +
                        open_brackets_.back().first + "'");
        }
        --depth_;
        open_brackets_.pop_back();
        break;
      case '+': case '-': case '*': case ':': case ',': case '.': case '=': case '<': case '>':
        break;
      default:
        if (std::isprint(static_cast<unsigned char>(c))) {
          fail(pos, std::string("unsupported character '") + c + "'");
        }
        fail(pos, "unsupported character");
    }
    if (c == '*' && peek(1) == '*') fail(pos, "unsupported operator '**'");
    advance();
    push(TokenKind::Op, std::string(1, c), pos);
  }

  const std::string& src_;
  const std::string& origin_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  bool line_has_tokens_ = false;
  std::vector<int> indents_;
  std::vector<std::pair<char, SourcePos>> open_brackets_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(const SourceText& source) { return Lexer(source).run(); }

}  // namespace logic_forge::frontend
