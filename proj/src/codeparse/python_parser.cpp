#include <unordered_set>

#include "parser_base.hpp"
#include "parsers.hpp"

namespace qqual::codeparse::detail {

namespace {

const std::unordered_set<std::string_view> kAugAssign{"+=", "-=", "*=", "/=",  "//=", "%=", "@=",
                                                      "&=", "|=", "^=", ">>=", "<<=", "**="};

class PyParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  void file_input() {
    while (!at_end()) {
      if (at_kind(TokKind::Newline)) {
        advance();
        continue;
      }
      if (at_kind(TokKind::Indent)) fail("unexpected indent");
      statement();
    }
  }

 private:
  void expect_newline() {
    if (!at_kind(TokKind::Newline)) fail("expected end of line");
    advance();
  }

  void statement() {
    if (at("if") || at("while") || at("for") || at("try") || at("with") || at("def") || at("class") ||
        at("@") || (at("async") && (at("def", 1) || at("for", 1) || at("with", 1)))) {
      compound_statement();
    } else {
      simple_statements();
    }
  }

  void simple_statements() {
    small_statement();
    while (accept(";")) {
      if (at_kind(TokKind::Newline)) break;
      small_statement();
    }
    expect_newline();
  }

  void suite() {
    if (!at_kind(TokKind::Newline)) {
      simple_statements();
      return;
    }
    advance();
    if (!at_kind(TokKind::Indent)) fail("expected an indented block");
    advance();
    while (!at_kind(TokKind::Dedent)) {
      if (at_end()) fail("unexpected end of input in block");
      statement();
    }
    advance();
  }

  void dotted_name() {
    expect_identifier();
    while (accept(".")) expect_identifier();
  }

  void name_list() {
    do {
      expect_identifier();
    } while (accept(","));
  }

  void small_statement() {
    if (accept("pass") || accept("break") || accept("continue")) return;
    if (at("yield")) {
      yield_expression();
      return;
    }
    if (accept("return")) {
      if (!at_statement_end()) star_expressions();
      return;
    }
    if (accept("raise")) {
      if (!at_statement_end()) {
        test();
        if (accept("from")) test();
      }
      return;
    }
    if (accept("global") || accept("nonlocal")) {
      name_list();
      return;
    }
    if (accept("del")) {
      expression_list();
      return;
    }
    if (accept("assert")) {
      test();
      if (accept(",")) test();
      return;
    }
    if (accept("import")) {
      do {
        dotted_name();
        if (accept("as")) expect_identifier();
      } while (accept(","));
      return;
    }
    if (accept("from")) {
      bool dots = false;
      while (accept(".") || accept("...")) dots = true;
      if (!at("import")) dotted_name();
      else if (!dots) fail("expected module name");
      expect("import");
      if (accept("*")) return;
      bool paren = accept("(");
      do {
        if (paren && at(")")) break;
        expect_identifier();
        if (accept("as")) expect_identifier();
      } while (accept(","));
      if (paren) expect(")");
      return;
    }
    expression_statement();
  }

  bool at_statement_end() const { return at_kind(TokKind::Newline) || at(";"); }

  void expression_statement() {
    bool assignable = star_expressions();
    if (accept(":")) {  // annotated assignment
      if (!assignable) fail("illegal target for annotation");
      test();
      if (accept("=")) yield_or_star_expressions();
      return;
    }
    if (peek().kind == TokKind::Punct && kAugAssign.count(peek().text)) {
      if (!assignable) fail("illegal expression for augmented assignment");
      advance();
      yield_or_star_expressions();
      return;
    }
    while (accept("=")) {
      if (!assignable) fail("cannot assign to expression");
      assignable = yield_or_star_expressions();
    }
  }

  bool yield_or_star_expressions() {
    if (at("yield")) {
      yield_expression();
      return false;
    }
    return star_expressions();
  }

  void yield_expression() {
    expect("yield");
    if (accept("from")) {
      test();
      return;
    }
    if (!at_statement_end() && !at(")") && !at("=")) star_expressions();
  }

  // testlist_star_expr; returns whether the result is an assignment target
  bool star_expressions() {
    bool assignable = star_or_test();
    while (accept(",")) {
      if (at_expression_list_end()) break;
      assignable = star_or_test() && assignable;
    }
    return assignable;
  }

  bool at_expression_list_end() const {
    return at_statement_end() || at("=") || at(")") || at("]") || at("}") || at(":") || at("in") ||
           (peek().kind == TokKind::Punct && kAugAssign.count(peek().text));
  }

  bool star_or_test() {
    if (accept("*")) {
      expr();
      return true;
    }
    return test();
  }

  void expression_list() {
    do {
      if (accept("*")) {
        expr();
      } else {
        expr();
      }
    } while (accept(",") && !at_expression_list_end());
  }

  // ------------------------------------------------------------ compound statements

  void compound_statement() {
    if (at("@")) {
      while (accept("@")) {
        named_expression();
        expect_newline();
      }
      if (at("def") || at("class") || (at("async") && at("def", 1))) {
        compound_statement();
        return;
      }
      fail("expected def or class after decorator");
    }
    bool is_async = accept("async");
    if (accept("def")) {
      expect_identifier();
      parameters(true);
      if (accept("->")) test();
      expect(":");
      suite();
      return;
    }
    if (accept("for")) {
      target_list();
      expect("in");
      star_expressions();
      expect(":");
      suite();
      if (accept("else")) {
        expect(":");
        suite();
      }
      return;
    }
    if (accept("with")) {
      bool paren = at("(") && with_items_parenthesized();
      if (paren) {
        advance();
        do {
          if (at(")")) break;
          test();
          if (accept("as")) target();
        } while (accept(","));
        expect(")");
      } else {
        do {
          test();
          if (accept("as")) target();
        } while (accept(","));
      }
      expect(":");
      suite();
      return;
    }
    if (is_async) fail("expected def, for or with after async");
    if (accept("if")) {
      named_expression();
      expect(":");
      suite();
      while (accept("elif")) {
        named_expression();
        expect(":");
        suite();
      }
      if (accept("else")) {
        expect(":");
        suite();
      }
      return;
    }
    if (accept("while")) {
      named_expression();
      expect(":");
      suite();
      if (accept("else")) {
        expect(":");
        suite();
      }
      return;
    }
    if (accept("try")) {
      expect(":");
      suite();
      bool handled = false;
      bool bare_seen = false;
      while (accept("except")) {
        if (bare_seen) fail("default 'except:' must be last");
        handled = true;
        if (at(":")) {
          bare_seen = true;
        } else {
          test();
          if (accept("as")) expect_identifier();
        }
        expect(":");
        suite();
      }
      if (handled && accept("else")) {
        expect(":");
        suite();
      }
      if (accept("finally")) {
        handled = true;
        expect(":");
        suite();
      }
      if (!handled) fail("expected except or finally");
      return;
    }
    if (accept("class")) {
      expect_identifier();
      if (accept("(")) {
        if (!at(")")) arguments();
        expect(")");
      }
      expect(":");
      suite();
      return;
    }
    fail("expected compound statement");
  }

  // Python 3.9+ allows with (a as b, c as d):; distinguished from a parenthesized expression.
  bool with_items_parenthesized() const {
    std::size_t close = matching_close(0);
    if (close == std::string::npos) return false;
    if (!at(":", close + 1)) return false;
    for (std::size_t i = 1, depth = 0; i < close; ++i) {
      const Token& t = peek(i);
      if (t.kind == TokKind::Punct && (t.text == "(" || t.text == "[" || t.text == "{")) ++depth;
      if (t.kind == TokKind::Punct && (t.text == ")" || t.text == "]" || t.text == "}")) --depth;
      if (depth == 0 && t.kind == TokKind::Keyword && t.text == "as") return true;
    }
    return false;
  }

  void parameters(bool annotations) {
    expect("(");
    parameter_list(annotations, ")");
    expect(")");
  }

  void parameter_list(bool annotations, std::string_view close) {
    bool seen_default = false;
    bool seen_star = false;
    bool seen_kwargs = false;
    bool seen_slash = false;
    while (!at(close)) {
      if (seen_kwargs) fail("arguments cannot follow var-keyword argument");
      if (accept("**")) {
        expect_identifier();
        if (annotations && accept(":")) test();
        seen_kwargs = true;
      } else if (accept("*")) {
        if (seen_star) fail("* argument may appear only once");
        seen_star = true;
        if (at_kind(TokKind::Identifier)) {
          advance();
          if (annotations && accept(":")) test();
        } else if (at(close) || !at(",")) {
          fail("named arguments must follow bare *");
        }
      } else if (accept("/")) {
        if (seen_slash || seen_star) fail("/ must be ahead of *");
        seen_slash = true;
      } else {
        expect_identifier();
        if (annotations && accept(":")) test();
        if (accept("=")) {
          test();
          seen_default = true;
        } else if (seen_default && !seen_star) {
          fail("non-default argument follows default argument");
        }
      }
      if (!accept(",")) break;
    }
  }

  void target() {
    if (!star_or_expr_target()) fail("cannot assign to expression");
  }

  bool star_or_expr_target() {
    if (accept("*")) {
      expr();
      return true;
    }
    return expr();
  }

  void target_list() {
    target();
    while (accept(",")) {
      if (at("in") || at("=")) break;
      target();
    }
  }

  // ------------------------------------------------------------ expressions

  void named_expression() {
    if (at_kind(TokKind::Identifier) && at(":=", 1)) {
      advance(), advance();
      test();
      return;
    }
    test();
  }

  // Returns whether the expression can be an assignment target.
  bool test() {
    if (at("lambda")) {
      lambda();
      return false;
    }
    bool assignable = or_test();
    if (accept("if")) {
      or_test();
      expect("else");
      test();
      return false;
    }
    return assignable;
  }

  void test_no_cond() {
    if (at("lambda")) {
      advance();
      parameter_list(false, ":");
      expect(":");
      test_no_cond();
      return;
    }
    or_test();
  }

  void lambda() {
    expect("lambda");
    parameter_list(false, ":");
    expect(":");
    test();
  }

  bool or_test() {
    bool a = and_test();
    while (accept("or")) {
      and_test();
      a = false;
    }
    return a;
  }

  bool and_test() {
    bool a = not_test();
    while (accept("and")) {
      not_test();
      a = false;
    }
    return a;
  }

  bool not_test() {
    if (accept("not")) {
      not_test();
      return false;
    }
    return comparison();
  }

  bool at_comparison_operator() const {
    return at("<") || at(">") || at("==") || at(">=") || at("<=") || at("!=") || at("in") ||
           (at("not") && at("in", 1)) || at("is");
  }

  bool comparison() {
    bool a = expr();
    while (at_comparison_operator()) {
      if (accept("not")) {
        expect("in");
      } else if (accept("is")) {
        accept("not");
      } else {
        advance();
      }
      expr();
      a = false;
    }
    return a;
  }

  int binary_precedence() const {
    const Token& t = peek();
    if (t.kind != TokKind::Punct) return 0;
    static const std::pair<std::string_view, int> table[] = {
        {"|", 1}, {"^", 2}, {"&", 3}, {"<<", 4}, {">>", 4}, {"+", 5},
        {"-", 5}, {"*", 6}, {"/", 6}, {"//", 6}, {"%", 6},  {"@", 6}};
    for (auto [op, p] : table)
      if (t.text == op) return p;
    return 0;
  }

  bool expr() { return binary(0); }

  bool binary(int min_prec) {
    bool a = factor();
    while (true) {
      int prec = binary_precedence();
      if (prec == 0 || prec <= min_prec) return a;
      advance();
      binary(prec);
      a = false;
    }
  }

  bool factor() {
    if (at("+") || at("-") || at("~")) {
      advance();
      factor();
      return false;
    }
    return power();
  }

  bool power() {
    bool a = await_primary();
    if (accept("**")) {
      factor();
      return false;
    }
    return a;
  }

  bool await_primary() {
    if (accept("await")) {
      primary();
      return false;
    }
    return primary();
  }

  bool primary() {
    bool a = atom();
    while (true) {
      if (accept(".")) {
        expect_identifier();
        a = true;
      } else if (at("(")) {
        advance();
        if (!at(")")) arguments();
        expect(")");
        a = false;
      } else if (accept("[")) {
        subscripts();
        expect("]");
        a = true;
      } else {
        return a;
      }
    }
  }

  void subscripts() {
    do {
      if (at("]")) break;
      subscript();
    } while (accept(","));
  }

  void subscript() {
    if (accept("*")) {
      expr();
      return;
    }
    if (!at(":")) named_expression();
    if (accept(":")) {
      if (!at(":") && !at(",") && !at("]")) test();
      if (accept(":")) {
        if (!at(",") && !at("]")) test();
      }
    }
  }

  void arguments() {
    bool seen_keyword = false;
    bool seen_kwunpack = false;
    while (!at(")")) {
      if (accept("**")) {
        test();
        seen_kwunpack = true;
      } else if (accept("*")) {
        if (seen_kwunpack) fail("iterable argument unpacking follows keyword argument unpacking");
        test();
      } else if (at_kind(TokKind::Identifier) && at("=", 1)) {
        advance(), advance();
        test();
        seen_keyword = true;
      } else {
        if (seen_keyword || seen_kwunpack) fail("positional argument follows keyword argument");
        named_expression();
        if (at("for") || (at("async") && at("for", 1))) comprehension_clauses();
      }
      if (!accept(",")) break;
    }
  }

  void comprehension_clauses() {
    while (at("for") || (at("async") && at("for", 1)) || at("if")) {
      if (accept("if")) {
        test_no_cond();
        continue;
      }
      accept("async");
      expect("for");
      target_list();
      expect("in");
      or_test();
    }
  }

  // Returns whether the atom is an assignment target (names, tuples and lists).
  bool atom() {
    const Token& t = peek();
    if (t.kind == TokKind::Identifier) {
      advance();
      return true;
    }
    if (t.kind == TokKind::Number) {
      advance();
      return false;
    }
    if (t.kind == TokKind::String) {
      while (at_kind(TokKind::String)) advance();
      return false;
    }
    if (accept("None") || accept("True") || accept("False") || accept("...")) return false;
    if (accept("(")) {
      if (accept(")")) return true;
      bool assignable;
      if (at("yield")) {
        yield_expression();
        assignable = false;
      } else {
        assignable = sequence_body(")");
      }
      expect(")");
      return assignable;
    }
    if (accept("[")) {
      bool assignable = at("]") ? true : sequence_body("]");
      expect("]");
      return assignable;
    }
    if (accept("{")) {
      dict_or_set();
      expect("}");
      return false;
    }
    fail("invalid syntax");
  }

  bool sequence_body(std::string_view close) {
    bool assignable = star_or_named();
    if (at("for") || (at("async") && at("for", 1))) {
      comprehension_clauses();
      return false;
    }
    while (accept(",")) {
      if (at(close)) break;
      assignable = star_or_named() && assignable;
    }
    return assignable;
  }

  bool star_or_named() {
    if (accept("*")) {
      expr();
      return true;
    }
    if (at_kind(TokKind::Identifier) && at(":=", 1)) {
      advance(), advance();
      test();
      return false;
    }
    return test();
  }

  void dict_or_set() {
    if (at("}")) return;
    bool dict;
    if (accept("**")) {
      expr();
      dict = true;
    } else if (accept("*")) {
      expr();
      dict = false;
    } else {
      named_expression();
      dict = accept(":");
      if (dict) test();
    }
    if (at("for") || (at("async") && at("for", 1))) {
      comprehension_clauses();
      return;
    }
    while (accept(",")) {
      if (at("}")) break;
      if (dict) {
        if (accept("**")) {
          expr();
        } else {
          test();
          expect(":");
          test();
        }
      } else {
        if (accept("*")) {
          expr();
        } else {
          named_expression();
        }
      }
    }
  }
};

}  // namespace

void parse_python(std::string_view src) {
  PyParser p(lex_python(src));
  p.file_input();
}

}  // namespace qqual::codeparse::detail
