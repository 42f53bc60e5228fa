#include "logic_forge/frontend/parser.hpp"

#include <set>

#include "logic_forge/frontend/lexer.hpp"

namespace logic_forge::frontend {

namespace {

const std::set<std::string, std::less<>> kUnsupportedStatements = {
    "import", "from", "for",    "while", "if",     "elif",   "else", "with",   "try",
    "return", "del",  "global", "yield", "lambda", "raise", "async", "nonlocal"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string origin)
      : toks_(std::move(tokens)), origin_(std::move(origin)) {}

  DslProgram run() {
    DslProgram program;
    program.origin = origin_;
    while (!at(TokenKind::End)) {
      if (accept(TokenKind::Newline)) continue;
      if (at_name("class")) {
        program.classes.push_back(parse_class());
      } else if (at_name("def")) {
        program.functions.push_back(parse_function());
      } else if (at(TokenKind::Indent)) {
        fail(cur().pos, "unexpected indent");
      } else if (at(TokenKind::String)) {
        parse_docstring();
      } else {
        fail_unsupported_top_level();
      }
    }
    return program;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
  bool at(TokenKind kind) const { return cur().kind == kind; }
  bool at_name(std::string_view name) const { return at(TokenKind::Name) && cur().text == name; }
  bool at_op(std::string_view op) const { return at(TokenKind::Op) && cur().text == op; }

  [[noreturn]] void fail(SourcePos pos, const std::string& message) const {
    throw SyntaxError(origin_, pos, message);
  }

  std::string describe(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Name: return "'" + t.text + "'";
      case TokenKind::Int: return "integer " + t.text;
      case TokenKind::String: return "string literal";
      case TokenKind::Op: return "'" + t.text + "'";
      case TokenKind::Newline: return "end of line";
      case TokenKind::Indent: return "indent";
      case TokenKind::Dedent: return "dedent";
      case TokenKind::End: return "end of input";
    }
    return "token";
  }

  [[noreturn]] void fail_expected(const std::string& what) const {
    fail(cur().pos, "expected " + what + ", found " + describe(cur()));
  }

  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }

  bool accept_op(std::string_view op) {
    if (!at_op(op)) return false;
    take();
    return true;
  }

  void expect_op(std::string_view op) {
    if (!accept_op(op)) fail_expected("'" + std::string(op) + "'");
  }

  void expect_close(std::string_view op, const Token& open) {
    if (accept_op(op)) return;
    if (cur().pos.line != open.pos.line) {
      fail(open.pos, "'" + open.text + "' was never closed");
    }
    fail_expected("'" + std::string(op) + "'");
  }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (!at(kind)) fail_expected(what);
    return take();
  }

  std::string expect_identifier(const std::string& what) {
    return expect(TokenKind::Name, what).text;
  }

  void expect_line_end() {
    if (at(TokenKind::End)) return;
    if (!accept(TokenKind::Newline)) fail_expected("end of line");
  }

  [[noreturn]] void fail_unsupported_top_level() const {
    const Token& t = cur();
    if (t.kind == TokenKind::Name && kUnsupportedStatements.count(t.text) != 0) {
      fail(t.pos, "'" + t.text + "' statements are not supported");
    }
    if (t.kind == TokenKind::Op && t.text == "@") fail(t.pos, "decorators are not supported");
    fail(t.pos, "expected a class or function definition, found " + describe(t));
  }

  void parse_docstring() {
    take();
    expect_line_end();
  }

  // class NAME ['(' ')'] ':' NEWLINE INDENT field+ DEDENT
  ClassDecl parse_class() {
    ClassDecl decl;
    decl.pos = take().pos;
    decl.name = expect_identifier("class name");
    if (at_op("(")) {
      const Token open = take();
      expect_close(")", open);
    }
    expect_op(":");
    expect(TokenKind::Newline, "end of line after ':'");
    if (!accept(TokenKind::Indent)) fail_expected("an indented class body");
    while (!accept(TokenKind::Dedent)) {
      if (at(TokenKind::End)) break;
      if (at(TokenKind::String)) {
        parse_docstring();
        continue;
      }
      if (at_name("pass")) {
        take();
        expect_line_end();
        continue;
      }
      if (at(TokenKind::Name) && next().kind == TokenKind::Op && next().text == ":") {
        decl.fields.push_back(parse_field());
        continue;
      }
      fail_expected("a field declaration 'name: Type'");
    }
    if (decl.fields.empty()) fail(decl.pos, "class '" + decl.name + "' declares no fields");
    return decl;
  }

  FieldDecl parse_field() {
    FieldDecl field;
    field.pos = cur().pos;
    field.name = take().text;
    expect_op(":");
    parse_annotation(field);
    expect_line_end();
    return field;
  }

  // annotation := base
  //             | 'Unique' '[' (domain | base) ']'
  //             | domain
  //             | 'list' '[' NAME ',' INT ']'
  // domain     := 'Domain' '[' base ',' domain_values ']'
  void parse_annotation(FieldDecl& field) {
    if (at_name("Unique")) {
      take();
      const Token open = cur();
      expect_op("[");
      field.unique = true;
      if (at_name("Domain")) {
        parse_domain(field);
      } else {
        parse_base(field);
      }
      expect_close("]", open);
      return;
    }
    if (at_name("Domain")) {
      parse_domain(field);
      return;
    }
    if (at_name("list") || at_name("List")) {
      take();
      const Token open = cur();
      expect_op("[");
      parse_base(field);
      expect_op(",");
      const Token& len = expect(TokenKind::Int, "list length");
      if (len.int_value <= 0) fail(len.pos, "list length must be positive");
      field.list_len = len.int_value;
      expect_close("]", open);
      return;
    }
    parse_base(field);
  }

  void parse_base(FieldDecl& field) {
    if (!at(TokenKind::Name)) fail_expected("a type name");
    const Token& t = take();
    if (t.text == "int") {
      field.base = BaseKind::Int;
    } else if (t.text == "str") {
      field.base = BaseKind::Str;
    } else if (t.text == "Unique" || t.text == "Domain" || t.text == "list" ||
               t.text == "List") {
      fail(t.pos, "unsupported nesting of type decorator '" + t.text + "'");
    } else {
      field.base = BaseKind::ClassRef;
      field.class_name = t.text;
    }
  }

  void parse_domain(FieldDecl& field) {
    take();
    const Token open = cur();
    expect_op("[");
    parse_base(field);
    expect_op(",");
    DomainSpec spec;
    if (at_name("range")) {
      take();
      const Token paren = cur();
      expect_op("(");
      const std::int64_t first = parse_signed_int();
      spec.kind = DomainSpec::Kind::Range;
      if (accept_op(",")) {
        spec.lo = first;
        spec.hi = parse_signed_int();
      } else {
        spec.lo = 0;
        spec.hi = first;
      }
      expect_close(")", paren);
    } else {
      spec.kind = DomainSpec::Kind::Values;
      spec.values.push_back(parse_literal());
      while (accept_op(",")) {
        if (at_op("]")) break;
        spec.values.push_back(parse_literal());
      }
    }
    field.domain = std::move(spec);
    expect_close("]", open);
  }

  std::int64_t parse_signed_int() {
    const bool negative = accept_op("-");
    const Token& t = expect(TokenKind::Int, "an integer literal");
    return negative ? -t.int_value : t.int_value;
  }

  Literal parse_literal() {
    if (at(TokenKind::String)) return take().text;
    if (at(TokenKind::Int) || at_op("-")) return parse_signed_int();
    fail_expected("a literal value");
  }

  // def NAME '(' NAME ':' NAME ')' ['->' NAME] ':' NEWLINE INDENT stmt+ DEDENT
  FuncDecl parse_function() {
    FuncDecl fn;
    fn.pos = take().pos;
    fn.name = expect_identifier("function name");
    const Token open = cur();
    expect_op("(");
    if (at_op(")")) fail(cur().pos, "the validation function must take exactly one parameter");
    fn.param_name = expect_identifier("parameter name");
    if (!at_op(":")) fail_expected("a type annotation for parameter '" + fn.param_name + "'");
    take();
    fn.param_type = expect_identifier("parameter type");
    if (at_op(",")) fail(cur().pos, "the validation function must take exactly one parameter");
    expect_close(")", open);
    if (accept_op("->")) expect_identifier("return type");
    expect_op(":");
    expect(TokenKind::Newline, "end of line after ':'");
    if (!accept(TokenKind::Indent)) fail_expected("an indented function body");
    while (!accept(TokenKind::Dedent)) {
      if (at(TokenKind::End)) break;
      parse_statement(fn.body);
    }
    return fn;
  }

  void parse_statement(std::vector<Stmt>& body) {
    const Token& t = cur();
    if (t.kind == TokenKind::String) {
      parse_docstring();
      return;
    }
    if (t.kind == TokenKind::Indent) fail(t.pos, "unexpected indent");
    if (t.kind != TokenKind::Name) fail_expected("a statement");
    if (t.text == "pass") {
      take();
      expect_line_end();
      return;
    }
    if (kUnsupportedStatements.count(t.text) != 0) {
      fail(t.pos, "'" + t.text + "' statements are not supported");
    }
    if (t.text == "class" || t.text == "def") {
      fail(t.pos, "nested definitions are not supported");
    }
    Stmt stmt;
    stmt.pos = t.pos;
    if (t.text == "assert") {
      take();
      stmt.kind = Stmt::Kind::Assert;
      stmt.value = parse_expr();
      if (accept_op(",")) expect(TokenKind::String, "an assertion message string");
    } else if (t.text == "assume" && next().kind == TokenKind::Op && next().text == "(") {
      take();
      const Token open = take();
      stmt.kind = Stmt::Kind::Assume;
      stmt.value = parse_expr();
      expect_close(")", open);
    } else if (next().kind == TokenKind::Op && next().text == "=") {
      stmt.kind = Stmt::Kind::Assign;
      stmt.target = take().text;
      take();
      check_assignable(stmt.target, stmt.pos);
      stmt.value = parse_expr();
    } else {
      parse_expr();
      fail(t.pos, "expression statements are not supported; use assume(...) or assert");
    }
    expect_line_end();
    body.push_back(std::move(stmt));
  }

  void check_assignable(const std::string& name, SourcePos pos) const {
    static const std::set<std::string, std::less<>> kReserved = {
        "assume", "nondet", "abs", "and", "or", "not", "True", "False", "None", "in", "is"};
    if (kReserved.count(name) != 0) fail(pos, "cannot assign to '" + name + "'");
  }

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    const SourcePos pos = cur().pos;
    Expr first = parse_and();
    if (!at_name("or")) return first;
    std::vector<Expr> operands;
    operands.push_back(std::move(first));
    while (at_name("or")) {
      take();
      operands.push_back(parse_and());
    }
    return Expr::bool_op_of(BoolOpKind::Or, std::move(operands), pos);
  }

  Expr parse_and() {
    const SourcePos pos = cur().pos;
    Expr first = parse_not();
    if (!at_name("and")) return first;
    std::vector<Expr> operands;
    operands.push_back(std::move(first));
    while (at_name("and")) {
      take();
      operands.push_back(parse_not());
    }
    return Expr::bool_op_of(BoolOpKind::And, std::move(operands), pos);
  }

  Expr parse_not() {
    if (at_name("not")) {
      const SourcePos pos = take().pos;
      return Expr::negate(parse_not(), pos);
    }
    return parse_comparison();
  }

  std::optional<CompareOp> compare_op() const {
    if (!at(TokenKind::Op)) {
      if (at_name("in") || at_name("is")) {
        fail(cur().pos, "'" + cur().text + "' comparisons are not supported");
      }
      return std::nullopt;
    }
    const std::string& op = cur().text;
    if (op == "==") return CompareOp::Eq;
    if (op == "!=") return CompareOp::Ne;
    if (op == "<") return CompareOp::Lt;
    if (op == "<=") return CompareOp::Le;
    if (op == ">") return CompareOp::Gt;
    if (op == ">=") return CompareOp::Ge;
    return std::nullopt;
  }

  // Chained comparisons `a < b < c` become `(a < b) and (b < c)`.
  Expr parse_comparison() {
    const SourcePos pos = cur().pos;
    Expr lhs = parse_arith();
    std::vector<Expr> links;
    while (auto op = compare_op()) {
      const SourcePos op_pos = take().pos;
      Expr rhs = parse_arith();
      links.push_back(Expr::compare(*op, lhs, rhs, links.empty() ? pos : op_pos));
      lhs = std::move(rhs);
    }
    if (links.empty()) return lhs;
    if (links.size() == 1) return std::move(links.front());
    return Expr::bool_op_of(BoolOpKind::And, std::move(links), pos);
  }

  Expr parse_arith() {
    Expr lhs = parse_term();
    while (at_op("+") || at_op("-")) {
      const Token& op = take();
      Expr rhs = parse_term();
      lhs = Expr::binary(op.text == "+" ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs),
                         std::move(rhs), op.pos);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (at_op("*")) {
      const SourcePos pos = take().pos;
      Expr rhs = parse_unary();
      lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at_op("-")) {
      const SourcePos pos = take().pos;
      Expr operand = parse_unary();
      if (operand.kind == ExprKind::IntLit) {
        operand.int_value = -operand.int_value;
        operand.pos = pos;
        return operand;
      }
      return Expr::binary(BinaryOp::Sub, Expr::int_lit(0, pos), std::move(operand), pos);
    }
    if (at_op("+")) {
      take();
      return parse_unary();
    }
    return parse_postfix();
  }

  Expr parse_postfix() {
    Expr e = parse_atom();
    while (true) {
      if (at_op(".")) {
        const SourcePos pos = take().pos;
        std::string name = expect_identifier("a field name after '.'");
        if (at_op("(")) fail(cur().pos, "method calls are not supported");
        e = Expr::field(std::move(e), std::move(name), pos);
      } else if (at_op("[")) {
        const Token open = take();
        if (!at(TokenKind::Int)) {
          fail(cur().pos, "list index must be a non-negative integer literal");
        }
        const std::int64_t index = take().int_value;
        expect_close("]", open);
        e = Expr::index(std::move(e), index, open.pos);
      } else if (at_op("(")) {
        fail(cur().pos, "only nondet(...) and abs(...) may be called");
      } else {
        return e;
      }
    }
  }

  Expr parse_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Int:
        take();
        return Expr::int_lit(t.int_value, t.pos);
      case TokenKind::String:
        take();
        return Expr::str_lit(t.text, t.pos);
      case TokenKind::Op:
        if (t.text == "(") {
          const Token open = take();
          Expr inner = parse_expr();
          expect_close(")", open);
          return inner;
        }
        if (t.text == "[") fail(t.pos, "list literals are not supported");
        fail_expected("an expression");
      case TokenKind::Name:
        return parse_name_atom();
      default:
        fail_expected("an expression");
    }
  }

  Expr parse_name_atom() {
    const Token name = take();
    if (name.text == "True" || name.text == "False" || name.text == "None") {
      fail(name.pos, "'" + name.text + "' literals are not supported");
    }
    if (name.text == "lambda" || name.text == "if" || name.text == "for") {
      fail(name.pos, "'" + name.text + "' expressions are not supported");
    }
    if (!at_op("(")) return Expr::local(name.text, name.pos);
    if (name.text != "nondet" && name.text != "abs") {
      if (name.text == "assume") fail(name.pos, "assume(...) is a statement, not an expression");
      fail(name.pos, "call to '" + name.text + "' is not supported; only nondet and abs");
    }
    const Token open = take();
    if (at_op(")")) fail(cur().pos, name.text + "() takes exactly one argument");
    Expr arg = parse_expr();
    if (at_op(",")) fail(cur().pos, name.text + "() takes exactly one argument");
    expect_close(")", open);
    return name.text == "nondet" ? Expr::nondet(std::move(arg), name.pos)
                                 : Expr::abs(std::move(arg), name.pos);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string origin_;
};

}  // namespace

DslProgram parse(const SourceText& source) {
  return Parser(tokenize(source), source.origin).run();
}

}  // namespace logic_forge::frontend
