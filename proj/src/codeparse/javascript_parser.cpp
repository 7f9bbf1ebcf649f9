#include <unordered_set>

#include "parser_base.hpp"
#include "parsers.hpp"

namespace qqual::codeparse::detail {

namespace {

const std::unordered_set<std::string_view> kAssignOps{"=",  "+=", "-=",  "*=",  "/=",   "%=",  "**=", "<<=",
                                                      ">>=", ">>>=", "&=", "|=", "^=", "&&=", "||=", "?\?="};

class JsParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  void program() {
    while (!at_end()) module_item();
  }

  void lone_expression() {
    expression();
    if (!at_end()) fail("unexpected token in template substitution");
  }

 private:
  int generator_depth_ = 0;

  void consume_semicolon() {
    if (accept(";")) return;
    if (at("}") || at_end() || peek().newline_before) return;
    fail("expected ';'");
  }

  bool at_property_name() const {
    TokKind k = peek().kind;
    return k == TokKind::Identifier || k == TokKind::Keyword || k == TokKind::String || k == TokKind::Number ||
           at("[") || at("#");
  }

  void property_name() {
    if (accept("[")) {
      assignment();
      expect("]");
      return;
    }
    if (accept("#")) {
      expect_identifier();
      return;
    }
    if (!at_property_name()) fail("expected property name");
    advance();
  }

  // ------------------------------------------------------------ modules

  void module_item() {
    if (at("import") && !at("(", 1) && !at(".", 1)) {
      import_declaration();
      return;
    }
    if (at("export")) {
      export_declaration();
      return;
    }
    statement();
  }

  void module_specifier() {
    if (!at_kind(TokKind::String)) fail("expected module specifier");
    advance();
  }

  void named_bindings() {
    expect("{");
    while (!at("}")) {
      if (!at_kind(TokKind::Identifier) && !at_kind(TokKind::Keyword) && !at_kind(TokKind::String))
        fail("expected import or export name");
      advance();
      if (accept_word("as")) {
        if (!at_kind(TokKind::Identifier) && !at_kind(TokKind::Keyword) && !at_kind(TokKind::String))
          fail("expected name after as");
        advance();
      }
      if (!accept(",")) break;
    }
    expect("}");
  }

  void import_declaration() {
    expect("import");
    if (at_kind(TokKind::String)) {
      module_specifier();
      consume_semicolon();
      return;
    }
    if (at_kind(TokKind::Identifier)) {
      advance();
      if (!accept(",")) {
        if (!accept_word("from")) fail("expected from");
        module_specifier();
        consume_semicolon();
        return;
      }
    }
    if (accept("*")) {
      if (!accept_word("as")) fail("expected as");
      expect_identifier();
    } else {
      named_bindings();
    }
    if (!accept_word("from")) fail("expected from");
    module_specifier();
    consume_semicolon();
  }

  void export_declaration() {
    expect("export");
    if (accept("default")) {
      if (at("function") || (at_word("async") && at("function", 1) && !peek(1).newline_before)) {
        accept_word("async");
        function_rest(true, false);
      } else if (at("class")) {
        class_rest(false);
      } else {
        assignment();
        consume_semicolon();
      }
      return;
    }
    if (accept("*")) {
      if (accept_word("as")) advance();
      if (!accept_word("from")) fail("expected from");
      module_specifier();
      consume_semicolon();
      return;
    }
    if (at("{")) {
      named_bindings();
      if (accept_word("from")) module_specifier();
      consume_semicolon();
      return;
    }
    if (at("var") || at("const") || at_word("let")) {
      variable_statement();
      return;
    }
    if (at("function") || at_word("async")) {
      accept_word("async");
      function_rest(false, false);
      return;
    }
    if (at("class")) {
      class_rest(false);
      return;
    }
    fail("unexpected token after export");
  }

  // ------------------------------------------------------------ statements

  bool at_let_declaration() const {
    return at_word("let") && (at_kind(TokKind::Identifier, 1) || at("[", 1) || at("{", 1));
  }

  void block() {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in block");
      statement();
    }
    expect("}");
  }

  void variable_declarations(bool no_in) {
    do {
      binding_target();
      if (accept("=")) assignment(no_in);
    } while (accept(","));
  }

  void variable_statement() {
    advance();  // var / let / const
    variable_declarations(false);
    consume_semicolon();
  }

  void binding_target() {
    if (at("[")) {
      array_binding_pattern();
    } else if (at("{")) {
      object_binding_pattern();
    } else {
      expect_identifier();
    }
  }

  void binding_element() {
    binding_target();
    if (accept("=")) assignment();
  }

  void array_binding_pattern() {
    expect("[");
    while (!at("]")) {
      if (accept(",")) continue;
      if (accept("...")) {
        binding_target();
        break;
      }
      binding_element();
      if (!accept(",")) break;
    }
    expect("]");
  }

  void object_binding_pattern() {
    expect("{");
    while (!at("}")) {
      if (accept("...")) {
        expect_identifier();
        break;
      }
      if (at_kind(TokKind::Identifier) && !at(":", 1)) {
        advance();
        if (accept("=")) assignment();
      } else {
        property_name();
        expect(":");
        binding_element();
      }
      if (!accept(",")) break;
    }
    expect("}");
  }

  void statement() {
    if (at("{")) {
      block();
      return;
    }
    if (accept(";")) return;
    if (at("var") || at("const") || at_let_declaration()) {
      variable_statement();
      return;
    }
    if (at("function")) {
      function_rest(false, false);
      return;
    }
    if (at_word("async") && at("function", 1) && !peek(1).newline_before) {
      advance();
      function_rest(false, false);
      return;
    }
    if (at("class")) {
      class_rest(false);
      return;
    }
    if (at("import") && !at("(", 1) && !at(".", 1)) fail("import declaration outside module top level");
    if (at("export")) fail("export declaration outside module top level");
    if (accept("if")) {
      paren_expression();
      statement();
      if (accept("else")) statement();
      return;
    }
    if (accept("while")) {
      paren_expression();
      statement();
      return;
    }
    if (accept("do")) {
      statement();
      expect("while");
      paren_expression();
      accept(";");
      return;
    }
    if (accept("for")) {
      for_rest();
      return;
    }
    if (accept("return")) {
      if (!at(";") && !at("}") && !at_end() && !peek().newline_before) expression();
      consume_semicolon();
      return;
    }
    if (accept("break") || accept("continue")) {
      if (at_kind(TokKind::Identifier) && !peek().newline_before) advance();
      consume_semicolon();
      return;
    }
    if (accept("throw")) {
      if (peek().newline_before) fail("illegal newline after throw");
      expression();
      consume_semicolon();
      return;
    }
    if (accept("try")) {
      block();
      bool handlers = false;
      if (accept("catch")) {
        handlers = true;
        if (accept("(")) {
          binding_target();
          expect(")");
        }
        block();
      }
      if (accept("finally")) {
        handlers = true;
        block();
      }
      if (!handlers) fail("missing catch or finally after try");
      return;
    }
    if (accept("switch")) {
      paren_expression();
      expect("{");
      bool seen_default = false;
      while (!at("}")) {
        if (accept("case")) {
          expression();
        } else if (accept("default")) {
          if (seen_default) fail("more than one default clause");
          seen_default = true;
        } else {
          fail("expected case or default");
        }
        expect(":");
        while (!at("case") && !at("default") && !at("}")) {
          if (at_end()) fail("unexpected end of input in switch");
          statement();
        }
      }
      expect("}");
      return;
    }
    if (accept("with")) {
      paren_expression();
      statement();
      return;
    }
    if (accept("debugger")) {
      consume_semicolon();
      return;
    }
    if (at_kind(TokKind::Identifier) && at(":", 1)) {
      advance(), advance();
      statement();
      return;
    }
    expression();
    consume_semicolon();
  }

  void paren_expression() {
    expect("(");
    expression();
    expect(")");
  }

  void for_rest() {
    if (at_word("await")) advance();
    expect("(");
    bool declaration = at("var") || at("const") || at_let_declaration();
    if (declaration) {
      advance();
      binding_target();
      if (accept("in") || accept_word("of")) {
        expression();
        expect(")");
        statement();
        return;
      }
      if (accept("=")) assignment(true);
      while (accept(",")) {
        binding_target();
        if (accept("=")) assignment(true);
      }
    } else if (!at(";")) {
      std::size_t saved = pos_;
      // for (lhs in/of expr)
      if (speculate([&] {
            left_hand_side();
            if (!(at("in") || at_word("of"))) fail("not a for-in");
          })) {
        advance();
        expression();
        expect(")");
        statement();
        return;
      }
      pos_ = saved;
      expression(true);
    }
    expect(";");
    if (!at(";")) expression();
    expect(";");
    if (!at(")")) expression();
    expect(")");
    statement();
  }

  // ------------------------------------------------------------ functions and classes

  void formal_parameters() {
    expect("(");
    while (!at(")")) {
      if (accept("...")) {
        binding_target();
        break;
      }
      binding_element();
      if (!accept(",")) break;
    }
    expect(")");
  }

  void function_body(bool generator) {
    if (generator) ++generator_depth_;
    int saved = generator_depth_;
    if (!generator) generator_depth_ = 0;
    block();
    generator_depth_ = saved;
    if (generator) --generator_depth_;
  }

  // At 'function'; name optional for expressions and export default.
  void function_rest(bool name_optional, bool /*expression*/) {
    expect("function");
    bool generator = accept("*");
    if (at_kind(TokKind::Identifier)) {
      advance();
    } else if (!name_optional) {
      fail("expected function name");
    }
    formal_parameters();
    function_body(generator);
  }

  void class_rest(bool /*expression*/) {
    expect("class");
    if (at_kind(TokKind::Identifier) && !at("extends")) advance();
    if (accept("extends")) left_hand_side();
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in class body");
      if (accept(";")) continue;
      class_member();
    }
    expect("}");
  }

  void class_member() {
    if (at_word("static") && at("{", 1)) {
      advance();
      block();
      return;
    }
    if (at_word("static") && !at("(", 1) && !at("=", 1)) advance();
    method_or_field(true);
  }

  // Shared by class members and object literal methods.
  void method_or_field(bool in_class) {
    bool generator = false;
    if (at_word("async") && !at("(", 1) && !at("=", 1) && !at(":", 1) && !at(",", 1) && !at("}", 1) &&
        !peek(1).newline_before) {
      advance();
    }
    if (accept("*")) generator = true;
    if ((at_word("get") || at_word("set")) && !at("(", 1) && !at("=", 1) && !at(":", 1) && !at(",", 1) &&
        !at("}", 1) && !at(";", 1)) {
      advance();
    }
    property_name();
    if (at("(")) {
      formal_parameters();
      function_body(generator);
      return;
    }
    if (!in_class || generator) fail("expected '('");
    if (accept("=")) assignment();
    consume_semicolon();
  }

  // ------------------------------------------------------------ expressions

  void expression(bool no_in = false) {
    do {
      assignment(no_in);
    } while (accept(","));
  }

  bool arrow_ahead() const {
    std::size_t k = 0;
    if (at_word("async") && !peek(1).newline_before && (at_kind(TokKind::Identifier, 1) || at("(", 1))) k = 1;
    if (peek(k).kind == TokKind::Identifier && at("=>", k + 1) && !peek(k + 1).newline_before) return true;
    if (at("(", k)) {
      std::size_t close = matching_close(k);
      return close != std::string::npos && at("=>", close + 1) && !peek(close + 1).newline_before;
    }
    return false;
  }

  void arrow_function() {
    if (at_word("async") && !at("=>", 1)) advance();
    if (at_kind(TokKind::Identifier)) {
      advance();
    } else {
      formal_parameters();
    }
    expect("=>");
    if (at("{")) {
      function_body(false);
    } else {
      assignment();
    }
  }

  void assignment(bool no_in = false) {
    if (arrow_ahead()) {
      arrow_function();
      return;
    }
    if (generator_depth_ > 0 && at_word("yield")) {
      advance();
      accept("*");
      if (!peek().newline_before && !at(")") && !at("]") && !at("}") && !at(",") && !at(";") && !at(":") &&
          !at_end())
        assignment(no_in);
      return;
    }
    conditional(no_in);
    if (peek().kind == TokKind::Punct && kAssignOps.count(peek().text)) {
      advance();
      assignment(no_in);
    }
  }

  void conditional(bool no_in) {
    binary(0, no_in);
    if (accept("?")) {
      assignment();
      expect(":");
      assignment(no_in);
    }
  }

  int binary_precedence(bool no_in) const {
    const Token& t = peek();
    if (t.kind == TokKind::Keyword) {
      if (t.text == "instanceof") return 7;
      if (t.text == "in" && !no_in) return 7;
      return 0;
    }
    if (t.kind != TokKind::Punct) return 0;
    static const std::pair<std::string_view, int> table[] = {
        {"??", 1}, {"||", 1}, {"&&", 2},  {"|", 3},   {"^", 4},   {"&", 5},   {"==", 6}, {"!=", 6},
        {"===", 6}, {"!==", 6}, {"<", 7}, {">", 7},   {"<=", 7},  {">=", 7},  {"<<", 8}, {">>", 8},
        {">>>", 8}, {"+", 9},  {"-", 9},  {"*", 10},  {"/", 10},  {"%", 10},  {"**", 11}};
    for (auto [op, p] : table)
      if (t.text == op) return p;
    return 0;
  }

  void binary(int min_prec, bool no_in) {
    unary();
    while (true) {
      int prec = binary_precedence(no_in);
      if (prec == 0 || prec <= min_prec) return;
      advance();
      // '**' is right-associative
      binary(prec == 11 ? prec - 1 : prec, no_in);
    }
  }

  void unary() {
    if (at("delete") || at("void") || at("typeof") || at("+") || at("-") || at("~") || at("!")) {
      advance();
      unary();
      return;
    }
    if (at("++") || at("--")) {
      advance();
      unary();
      return;
    }
    if (at_word("await") && !at("=>", 1) && !at(")", 1) && !at(";", 1) && !at(",", 1) && !at("=", 1) &&
        !at(".", 1) && !at(":", 1) && !peek(1).newline_before) {
      advance();
      unary();
      return;
    }
    left_hand_side();
    if ((at("++") || at("--")) && !peek().newline_before) advance();
  }

  void arguments() {
    expect("(");
    while (!at(")")) {
      accept("...");
      assignment();
      if (!accept(",")) break;
    }
    expect(")");
  }

  void left_hand_side() {
    if (at("new")) {
      new_expression();
    } else {
      primary();
    }
    call_tail(true);
  }

  void new_expression() {
    expect("new");
    if (accept(".")) {
      if (!accept_word("target")) fail("expected new.target");
      return;
    }
    if (at("new")) {
      new_expression();
    } else {
      primary();
    }
    call_tail(false);
    if (at("(")) arguments();
  }

  void call_tail(bool allow_call) {
    while (true) {
      if (accept(".")) {
        if (accept("#")) {
          expect_identifier();
        } else if (at_kind(TokKind::Identifier) || at_kind(TokKind::Keyword)) {
          advance();
        } else {
          fail("expected property name after '.'");
        }
      } else if (allow_call && accept("?.")) {
        if (at("(")) {
          arguments();
        } else if (accept("[")) {
          expression();
          expect("]");
        } else if (accept("#")) {
          expect_identifier();
        } else if (at_kind(TokKind::Identifier) || at_kind(TokKind::Keyword)) {
          advance();
        } else {
          fail("expected property after '?.'");
        }
      } else if (accept("[")) {
        expression();
        expect("]");
      } else if (allow_call && at("(")) {
        arguments();
      } else if (at_kind(TokKind::Template)) {
        template_literal();
      } else {
        return;
      }
    }
  }

  void template_literal() {
    const Token& t = advance();
    for (const std::string& hole : t.holes) {
      JsParser inner(lex_javascript(hole));
      inner.generator_depth_ = generator_depth_;
      inner.lone_expression();
    }
  }

  void primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Identifier:
      case TokKind::Number:
      case TokKind::String:
      case TokKind::Regex:
        advance();
        return;
      case TokKind::Template:
        template_literal();
        return;
      default:
        break;
    }
    if (accept("this") || accept("null") || accept("true") || accept("false")) return;
    if (accept("super")) {
      if (!(at("(") || at(".") || at("["))) fail("unexpected super");
      return;
    }
    if (accept("import")) {
      if (accept(".")) {
        if (!accept_word("meta")) fail("expected import.meta");
        return;
      }
      if (!at("(")) fail("unexpected import");
      return;
    }
    if (at("function")) {
      function_rest(true, true);
      return;
    }
    if (at_word("async") && at("function", 1)) {
      advance();
      function_rest(true, true);
      return;
    }
    if (at("class")) {
      class_rest(true);
      return;
    }
    if (accept("(")) {
      expression();
      expect(")");
      return;
    }
    if (at("[")) {
      array_literal();
      return;
    }
    if (at("{")) {
      object_literal();
      return;
    }
    fail("expected expression");
  }

  void array_literal() {
    expect("[");
    while (!at("]")) {
      if (accept(",")) continue;
      accept("...");
      assignment();
      if (!accept(",")) break;
    }
    expect("]");
  }

  void object_literal() {
    expect("{");
    while (!at("}")) {
      if (accept("...")) {
        assignment();
      } else if (at_kind(TokKind::Identifier) && (at(",", 1) || at("}", 1))) {
        advance();  // shorthand
      } else if (at_kind(TokKind::Identifier) && at("=", 1)) {
        advance(), advance();  // shorthand with initializer, valid in destructuring targets
        assignment();
      } else if (at_property_name() && at(":", 1)) {
        advance(), advance();
        assignment();
      } else if (at("[") && !at("#")) {
        std::size_t close = matching_close(0);
        if (close != std::string::npos && at(":", close + 1)) {
          property_name();
          expect(":");
          assignment();
        } else {
          method_or_field(false);
        }
      } else {
        method_or_field(false);
      }
      if (!accept(",")) break;
    }
    expect("}");
  }
};

}  // namespace

void parse_javascript(std::string_view src) {
  JsParser p(lex_javascript(src));
  p.program();
}

}  // namespace qqual::codeparse::detail
