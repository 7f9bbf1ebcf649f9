#include <unordered_set>

#include "parser_base.hpp"
#include "parsers.hpp"

namespace qqual::codeparse::detail {

namespace {

// What the outermost node of an expression is; Java only admits some of them as statements.
enum class Expr { Other, Assignment, Call, New, IncDec, Lambda };

const std::unordered_set<std::string_view> kPrimitive{"boolean", "byte", "char", "short",
                                                      "int",     "long", "float", "double"};
const std::unordered_set<std::string_view> kModifiers{
    "public",   "protected", "private",      "static",    "abstract", "final",
    "native",   "synchronized", "transient", "volatile",  "strictfp", "default"};
const std::unordered_set<std::string_view> kAssignOps{"=",  "+=", "-=", "*=",  "/=",  "%=",
                                                      "&=", "|=", "^=", "<<=", ">>=", ">>>="};

class JavaParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  void compilation_unit() {
    if (speculate([&] {
          annotations();
          expect("package");
        })) {
      qualified_name();
      expect(";");
    }
    while (at("import")) {
      advance();
      accept("static");
      expect_identifier();
      while (accept(".")) {
        if (accept("*")) break;
        expect_identifier();
      }
      expect(";");
    }
    while (!at_end()) {
      if (accept(";")) continue;
      modifiers();
      type_declaration();
    }
  }

 private:
  // ------------------------------------------------------------ declarations

  void qualified_name() {
    expect_identifier();
    while (at(".") && at_kind(TokKind::Identifier, 1)) {
      advance();
      advance();
    }
  }

  void annotation() {
    expect("@");
    qualified_name();
    if (accept("(")) {
      if (!at(")")) {
        if (at_kind(TokKind::Identifier) && at("=", 1)) {
          do {
            expect_identifier();
            expect("=");
            element_value();
          } while (accept(","));
        } else {
          element_value();
        }
      }
      expect(")");
    }
  }

  void element_value() {
    if (at("@")) {
      annotation();
    } else if (at("{")) {
      advance();
      while (!at("}")) {
        element_value();
        if (!accept(",")) break;
      }
      expect("}");
    } else {
      conditional();
    }
  }

  void annotations() {
    while (at("@") && !at("interface", 1)) annotation();
  }

  void modifiers() {
    while (true) {
      if (at("@") && !at("interface", 1)) {
        annotation();
      } else if (peek().kind == TokKind::Keyword && kModifiers.count(peek().text)) {
        advance();
      } else if (at_word("sealed") && (at_kind(TokKind::Keyword, 1) || at("@", 1))) {
        advance();
      } else if (at_word("non") && at("-", 1) && at_word("sealed", 2)) {
        advance(), advance(), advance();
      } else {
        return;
      }
    }
  }

  bool at_type_declaration() const {
    return at("class") || at("interface") || at("enum") || (at("@") && at("interface", 1)) ||
           (at_word("record") && at_kind(TokKind::Identifier, 1));
  }

  void type_declaration() {
    if (accept("class")) {
      expect_identifier();
      if (at("<")) type_parameters();
      if (accept("extends")) type();
      if (accept("implements")) type_list();
      if (accept_word("permits")) type_list();
      class_body();
    } else if (accept("interface")) {
      expect_identifier();
      if (at("<")) type_parameters();
      if (accept("extends")) type_list();
      if (accept_word("permits")) type_list();
      class_body();
    } else if (accept("enum")) {
      expect_identifier();
      if (accept("implements")) type_list();
      enum_body();
    } else if (at("@") && at("interface", 1)) {
      advance();
      advance();
      expect_identifier();
      class_body();
    } else if (at_word("record")) {
      advance();
      expect_identifier();
      if (at("<")) type_parameters();
      formal_parameters();
      if (accept("implements")) type_list();
      class_body();
    } else {
      fail("expected type declaration");
    }
  }

  void type_list() {
    do {
      type();
    } while (accept(","));
  }

  void type_parameters() {
    expect("<");
    do {
      annotations();
      expect_identifier();
      if (accept("extends")) {
        type();
        while (accept("&")) type();
      }
    } while (accept(","));
    expect(">");
  }

  void enum_body() {
    expect("{");
    while (!at(";") && !at("}")) {
      annotations();
      expect_identifier();
      if (at("(")) arguments();
      if (at("{")) class_body();
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!at("}")) class_body_declaration();
    }
    expect("}");
  }

  void class_body() {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in class body");
      class_body_declaration();
    }
    expect("}");
  }

  void class_body_declaration() {
    if (accept(";")) return;
    if (at("{")) {
      block();
      return;
    }
    if (at("static") && at("{", 1)) {
      advance();
      block();
      return;
    }
    modifiers();
    if (at_type_declaration()) {
      type_declaration();
      return;
    }
    if (at("<")) type_parameters();
    // constructor (also compact record constructor)
    if (at_kind(TokKind::Identifier) && (at("(", 1) || at("{", 1))) {
      advance();
      if (at("(")) {
        formal_parameters();
        if (accept("throws")) type_list();
      }
      block();
      return;
    }
    if (at("void")) {
      advance();
    } else {
      type();
    }
    expect_identifier();
    if (at("(")) {
      formal_parameters();
      dims();
      if (accept("throws")) type_list();
      if (accept("default")) {
        element_value();
        expect(";");
      } else if (!accept(";")) {
        block();
      }
      return;
    }
    variable_declarators_rest();
    expect(";");
  }

  void formal_parameters() {
    expect("(");
    if (!at(")")) {
      do {
        modifiers();
        type();
        accept("...");
        if (at("this")) {
          advance();
        } else {
          expect_identifier();
          if (accept(".")) expect("this");
        }
        dims();
      } while (accept(","));
    }
    expect(")");
  }

  // after the first declarator name
  void variable_declarators_rest() {
    dims();
    if (accept("=")) variable_initializer();
    while (accept(",")) {
      expect_identifier();
      dims();
      if (accept("=")) variable_initializer();
    }
  }

  void variable_initializer() {
    if (at("{")) {
      array_initializer();
    } else {
      expression();
    }
  }

  void array_initializer() {
    expect("{");
    while (!at("}")) {
      variable_initializer();
      if (!accept(",")) break;
    }
    expect("}");
  }

  // ------------------------------------------------------------ types

  void type() {
    annotations();
    if (peek().kind == TokKind::Keyword && kPrimitive.count(peek().text)) {
      advance();
    } else {
      class_type();
    }
    dims();
  }

  void class_type() {
    expect_identifier();
    if (at("<")) type_arguments();
    while (at(".") && (at_kind(TokKind::Identifier, 1) || at("@", 1))) {
      advance();
      annotations();
      expect_identifier();
      if (at("<")) type_arguments();
    }
  }

  void type_arguments() {
    expect("<");
    if (accept(">")) return;  // diamond
    do {
      annotations();
      if (accept("?")) {
        if (accept("extends") || accept("super")) type();
      } else {
        type();
      }
    } while (accept(","));
    expect(">");
  }

  void dims() {
    while (true) {
      std::size_t saved = pos_;
      annotations();
      if (at("[") && at("]", 1)) {
        advance();
        advance();
      } else {
        pos_ = saved;
        return;
      }
    }
  }

  // ------------------------------------------------------------ statements

  void block() {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in block");
      block_statement();
    }
    expect("}");
  }

  bool try_local_variable_declaration(bool require_semicolon) {
    return speculate([&] {
      modifiers();
      type();
      expect_identifier();
      if (!(at("=") || at(",") || at(";") || at("[") || at(":") || at(")"))) fail("not a declaration");
      variable_declarators_rest();
      if (require_semicolon) expect(";");
    });
  }

  void block_statement() {
    std::size_t saved = pos_;
    if (speculate([&] { modifiers(); }) && at_type_declaration()) {
      type_declaration();
      return;
    }
    pos_ = saved;
    if (at_word("yield") && !at("=", 1) && !at("(", 1) && !at(".", 1) && !at("[", 1)) {
      advance();
      expression();
      expect(";");
      return;
    }
    if (try_local_variable_declaration(true)) return;
    statement();
  }

  void statement() {
    if (at("{")) {
      block();
    } else if (accept(";")) {
    } else if (accept("if")) {
      par_expression();
      statement();
      if (accept("else")) statement();
    } else if (accept("while")) {
      par_expression();
      statement();
    } else if (accept("do")) {
      statement();
      expect("while");
      par_expression();
      expect(";");
    } else if (accept("for")) {
      for_statement();
    } else if (accept("try")) {
      try_statement();
    } else if (accept("switch")) {
      par_expression();
      switch_body();
    } else if (accept("return")) {
      if (!at(";")) expression();
      expect(";");
    } else if (accept("break") || accept("continue")) {
      if (at_kind(TokKind::Identifier)) advance();
      expect(";");
    } else if (accept("throw")) {
      expression();
      expect(";");
    } else if (accept("synchronized")) {
      par_expression();
      block();
    } else if (accept("assert")) {
      expression();
      if (accept(":")) expression();
      expect(";");
    } else if (at_kind(TokKind::Identifier) && at(":", 1)) {
      advance();
      advance();
      statement();
    } else {
      Expr kind = expression();
      if (kind == Expr::Other || kind == Expr::Lambda) fail("not a statement");
      expect(";");
    }
  }

  void par_expression() {
    expect("(");
    expression();
    expect(")");
  }

  void for_statement() {
    expect("(");
    if (speculate([&] {
          modifiers();
          type();
          expect_identifier();
          dims();
          expect(":");
        })) {
      expression();
      expect(")");
      statement();
      return;
    }
    if (!at(";")) {
      if (!try_local_variable_declaration(false)) statement_expression_list();
    }
    expect(";");
    if (!at(";")) expression();
    expect(";");
    if (!at(")")) statement_expression_list();
    expect(")");
    statement();
  }

  void statement_expression_list() {
    do {
      Expr k = expression();
      if (k == Expr::Other || k == Expr::Lambda) fail("not a statement");
    } while (accept(","));
  }

  void try_statement() {
    bool resources = false;
    if (accept("(")) {
      resources = true;
      while (!at(")")) {
        if (!try_local_variable_declaration(false)) expression();
        if (!accept(";")) break;
      }
      expect(")");
    }
    block();
    bool handlers = false;
    while (accept("catch")) {
      handlers = true;
      expect("(");
      modifiers();
      type();
      while (accept("|")) type();
      expect_identifier();
      expect(")");
      block();
    }
    if (accept("finally")) {
      handlers = true;
      block();
    }
    if (!handlers && !resources) fail("try without catch or finally");
  }

  void switch_body() {
    expect("{");
    while (!at("}")) {
      if (accept("default")) {
        // fallthrough to label terminator
      } else if (accept("case")) {
        do {
          if (at_word("null") || !speculate([&] { case_pattern(); })) conditional();
        } while (accept(","));
        if (at_word("when")) {
          advance();
          expression();
        }
      } else {
        fail("expected case or default");
      }
      if (accept("->")) {
        if (at("{")) {
          block();
        } else if (accept("throw")) {
          expression();
          expect(";");
        } else {
          expression();
          expect(";");
        }
      } else {
        expect(":");
        while (!at("case") && !at("default") && !at("}")) {
          if (at_end()) fail("unexpected end of input in switch");
          block_statement();
        }
      }
    }
    expect("}");
  }

  // "case Type name" type patterns
  void case_pattern() {
    modifiers();
    type();
    expect_identifier();
    if (!(at("->") || at(":") || at(",") || at_word("when"))) fail("not a pattern");
  }

  // ------------------------------------------------------------ expressions

  bool lambda_ahead() const {
    if (at_kind(TokKind::Identifier) && at("->", 1)) return true;
    if (at("(")) {
      std::size_t close = matching_close(0);
      return close != std::string::npos && at("->", close + 1);
    }
    return false;
  }

  Expr expression() {
    if (lambda_ahead()) {
      lambda();
      return Expr::Lambda;
    }
    Expr lhs = conditional();
    if (std::string op = assignment_operator(); !op.empty()) {
      expression();
      return Expr::Assignment;
    }
    return lhs;
  }

  // Consumes an assignment operator (possibly split '>' tokens) and returns it.
  std::string assignment_operator() {
    if (peek().kind == TokKind::Punct && kAssignOps.count(peek().text)) return advance().text;
    if (at(">") && adjacent(0) && at(">", 1)) {
      if (adjacent(1) && at("=", 2)) {
        advance(), advance(), advance();
        return ">>=";
      }
      if (adjacent(1) && at(">", 2) && adjacent(2) && at("=", 3)) {
        advance(), advance(), advance(), advance();
        return ">>>=";
      }
    }
    return {};
  }

  void lambda() {
    if (at_kind(TokKind::Identifier)) {
      advance();
    } else {
      expect("(");
      if (!at(")")) {
        bool inferred = speculate([&] {
          do {
            expect_identifier();
          } while (accept(","));
          if (!at(")")) fail("typed lambda parameters");
        });
        if (!inferred) {
          do {
            modifiers();
            type();
            accept("...");
            expect_identifier();
            dims();
          } while (accept(","));
        }
      }
      expect(")");
    }
    expect("->");
    if (at("{")) {
      block();
    } else {
      expression();
    }
  }

  Expr conditional() {
    Expr e = binary(0);
    if (accept("?")) {
      expression();
      expect(":");
      if (lambda_ahead()) {
        lambda();
      } else {
        conditional();
      }
      return Expr::Other;
    }
    return e;
  }

  // Binary operator at the cursor with its precedence, recombining split '>' tokens.
  // Returns {op, token count}; precedence 0 means none.
  std::pair<std::string, std::size_t> peek_binary(int& prec) const {
    prec = 0;
    const Token& t = peek();
    if (t.kind == TokKind::Keyword && t.text == "instanceof") {
      prec = 7;
      return {"instanceof", 1};
    }
    if (t.kind != TokKind::Punct) return {};
    if (t.text == ">") {
      if (adjacent(0) && at(">", 1)) {
        if (adjacent(1) && at(">", 2)) {
          if (adjacent(2) && at("=", 3)) return {};
          prec = 8;
          return {">>>", 3};
        }
        if (adjacent(1) && at("=", 2)) return {};
        prec = 8;
        return {">>", 2};
      }
      if (adjacent(0) && at("=", 1) && !(adjacent(1) && at("=", 2))) {
        prec = 7;
        return {">=", 2};
      }
      prec = 7;
      return {">", 1};
    }
    static const std::pair<std::string_view, int> table[] = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6},
        {"<", 7},  {"<=", 7}, {"<<", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
    for (auto [op, p] : table) {
      if (t.text == op) {
        prec = p;
        return {std::string(op), 1};
      }
    }
    return {};
  }

  Expr binary(int min_prec) {
    Expr left = unary();
    while (true) {
      int prec = 0;
      auto [op, count] = peek_binary(prec);
      if (prec == 0 || prec <= min_prec) return left;
      for (std::size_t i = 0; i < count; ++i) advance();
      if (op == "instanceof") {
        accept("final");
        type();
        if (at_kind(TokKind::Identifier)) advance();  // pattern binding
      } else {
        binary(prec);
      }
      left = Expr::Other;
    }
  }

  bool starts_unary_not_plus_minus() const {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Identifier:
      case TokKind::Number:
      case TokKind::String:
      case TokKind::Char:
        return true;
      case TokKind::Keyword:
        return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "true" ||
               t.text == "false" || t.text == "null" || t.text == "switch" || kPrimitive.count(t.text);
      case TokKind::Punct:
        return t.text == "(" || t.text == "!" || t.text == "~";
      default:
        return false;
    }
  }

  Expr unary() {
    if (at("++") || at("--")) {
      advance();
      unary();
      return Expr::IncDec;
    }
    if (at("+") || at("-") || at("!") || at("~")) {
      advance();
      unary();
      return Expr::Other;
    }
    if (at("(")) {
      // primitive cast
      if (peek(1).kind == TokKind::Keyword && kPrimitive.count(peek(1).text)) {
        if (speculate([&] {
              expect("(");
              type();
              expect(")");
            })) {
          unary();
          return Expr::Other;
        }
      }
      std::size_t saved = pos_;
      if (speculate([&] {
            expect("(");
            type();
            while (accept("&")) type();
            expect(")");
            if (!starts_unary_not_plus_minus()) fail("not a cast");
          })) {
        if (lambda_ahead()) {
          lambda();
        } else {
          unary();
        }
        return Expr::Other;
      }
      pos_ = saved;
    }
    Expr e = postfix();
    while (at("++") || at("--")) {
      advance();
      e = Expr::IncDec;
    }
    return e;
  }

  void arguments() {
    expect("(");
    if (!at(")")) {
      do {
        expression();
      } while (accept(","));
    }
    expect(")");
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      if (at(".")) {
        advance();
        if (at("<")) {
          type_arguments();
          expect_identifier();
          arguments();
          e = Expr::Call;
        } else if (accept("new")) {
          creator_rest();
          e = Expr::New;
        } else if (accept("this") || accept("class")) {
          e = Expr::Other;
        } else if (accept("super")) {
          if (at("(")) {
            arguments();
            e = Expr::Call;
          } else {
            e = Expr::Other;
          }
        } else {
          expect_identifier();
          if (at("(")) {
            arguments();
            e = Expr::Call;
          } else {
            e = Expr::Other;
          }
        }
      } else if (at("[")) {
        if (at("]", 1)) {
          dims();
          if (accept("::")) {
            if (!accept("new")) expect_identifier();
          } else {
            expect(".");
            expect("class");
          }
        } else {
          advance();
          expression();
          expect("]");
        }
        e = Expr::Other;
      } else if (at("::")) {
        advance();
        if (at("<")) type_arguments();
        if (!accept("new")) expect_identifier();
        e = Expr::Other;
      } else if (at("<") && generic_type_reference_ahead()) {
        // Type<Args>::method or Type<Args>.class is not allowed; only ::
        type_arguments();
        expect("::");
        if (!accept("new")) expect_identifier();
        e = Expr::Other;
      } else {
        return e;
      }
    }
  }

  // "List<String>::new" style method references
  bool generic_type_reference_ahead() {
    std::size_t saved = pos_;
    bool ok = speculate([&] {
      type_arguments();
      if (!at("::")) fail("no method reference");
    });
    pos_ = saved;
    return ok;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Number:
      case TokKind::String:
      case TokKind::Char:
        advance();
        return Expr::Other;
      case TokKind::Identifier:
        advance();
        if (at("(")) {
          arguments();
          return Expr::Call;
        }
        return Expr::Other;
      default:
        break;
    }
    if (accept("true") || accept("false") || accept("null")) return Expr::Other;
    if (accept("this")) {
      if (at("(")) {
        arguments();
        return Expr::Call;
      }
      return Expr::Other;
    }
    if (accept("super")) {
      if (at("(")) {
        arguments();
        return Expr::Call;
      }
      if (at("::")) return Expr::Other;
      expect(".");
      if (at("<")) type_arguments();
      expect_identifier();
      if (at("(")) {
        arguments();
        return Expr::Call;
      }
      return Expr::Other;
    }
    if (accept("new")) {
      creator_rest();
      return Expr::New;
    }
    if (accept("(")) {
      expression();
      expect(")");
      return Expr::Other;
    }
    if (accept("switch")) {
      par_expression();
      switch_body();
      return Expr::Other;
    }
    if (peek().kind == TokKind::Keyword && (kPrimitive.count(peek().text) || peek().text == "void")) {
      advance();
      dims();
      if (accept("::")) {
        expect("new");
      } else {
        expect(".");
        expect("class");
      }
      return Expr::Other;
    }
    fail("expected expression");
  }

  // after 'new'
  void creator_rest() {
    if (at("<")) type_arguments();
    annotations();
    bool primitive = peek().kind == TokKind::Keyword && kPrimitive.count(peek().text);
    if (primitive) {
      advance();
    } else {
      class_type();
    }
    if (at("[")) {
      if (at("]", 1)) {
        dims();
        array_initializer();
        return;
      }
      while (at("[") && !at("]", 1)) {
        advance();
        expression();
        expect("]");
      }
      dims();
      return;
    }
    if (primitive) fail("primitive type needs array dimensions");
    arguments();
    if (at("{")) class_body();
  }
};

}  // namespace

void parse_java(std::string_view src) {
  JavaParser p(lex_java(src));
  p.compilation_unit();
}

}  // namespace qqual::codeparse::detail
