#include <unordered_set>

#include "parser_base.hpp"
#include "parsers.hpp"

namespace qqual::codeparse::detail {

namespace {

enum class Expr { Other, Assignment, Call, New, IncDec, Await, Lambda };

const std::unordered_set<std::string_view> kPredefined{
    "bool", "byte", "char", "decimal", "double", "float", "int",    "long",
    "object", "sbyte", "short", "string", "uint", "ulong", "ushort", "void"};
const std::unordered_set<std::string_view> kModifierKeywords{
    "public", "private",  "protected", "internal", "static",   "abstract", "sealed", "virtual",
    "override", "readonly", "unsafe",  "extern",   "new",      "volatile", "const",  "fixed"};
const std::unordered_set<std::string_view> kModifierWords{"partial", "async", "required", "file"};
const std::unordered_set<std::string_view> kAssignOps{"=",  "+=", "-=", "*=", "/=",  "%=",
                                                      "&=", "|=", "^=", "<<=", "?\?="};
const std::unordered_set<std::string_view> kQueryKeywords{"where", "select", "group", "into", "orderby",
                                                          "join",  "let",    "from",  "on",   "equals",
                                                          "by",    "ascending", "descending"};

class CSharpParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  void compilation_unit() {
    while (at("extern") && at_word("alias", 1)) {
      advance(), advance();
      expect_identifier();
      expect(";");
    }
    using_directives();
    namespace_members(true);
    if (!at_end()) fail("unexpected token at top level");
  }

 private:
  // ------------------------------------------------------------ namespaces and types

  void using_directives() {
    while ((at("using") && !at("(", 1) && !at_word("var", 1)) || (at_word("global") && at("using", 1))) {
      accept_word("global");
      expect("using");
      accept("static");
      if (at_kind(TokKind::Identifier) && at("=", 1)) {
        advance(), advance();
        type();
      } else {
        qualified_name();
      }
      expect(";");
    }
  }

  void qualified_name() {
    expect_identifier();
    if (at("::")) {
      advance();
      expect_identifier();
    }
    if (at("<")) type_arguments();
    while (at(".")) {
      advance();
      expect_identifier();
      if (at("<")) type_arguments();
    }
  }

  void namespace_members(bool top_level) {
    while (!at_end() && !at("}")) {
      if (accept(";")) continue;
      attributes();
      modifiers();
      if (accept("namespace")) {
        qualified_name();
        if (accept(";")) {
          if (!top_level) fail("file-scoped namespace must be at top level");
          using_directives();
          continue;
        }
        expect("{");
        while (at("extern") && at_word("alias", 1)) {
          advance(), advance();
          expect_identifier();
          expect(";");
        }
        using_directives();
        namespace_members(false);
        expect("}");
        accept(";");
        continue;
      }
      if (!at_type_declaration()) fail("expected type or namespace declaration");
      type_declaration();
    }
  }

  void attributes() {
    while (at("[")) {
      advance();
      if ((at_kind(TokKind::Identifier) || at_kind(TokKind::Keyword)) && at(":", 1)) advance(), advance();
      do {
        if (at("]")) break;
        qualified_name();
        if (accept("(")) {
          if (!at(")")) {
            do {
              if (at_kind(TokKind::Identifier) && (at("=", 1) || at(":", 1))) advance(), advance();
              expression();
            } while (accept(","));
          }
          expect(")");
        }
      } while (accept(","));
      expect("]");
    }
  }

  bool at_modifier() const {
    if (peek().kind == TokKind::Keyword && kModifierKeywords.count(peek().text)) return true;
    if (peek().kind == TokKind::Identifier && kModifierWords.count(peek().text)) {
      // a modifier word is followed by another modifier, a type keyword or a type name
      const Token& n = peek(1);
      return n.kind == TokKind::Keyword || n.kind == TokKind::Identifier;
    }
    return false;
  }

  void modifiers() {
    while (at_modifier()) {
      if (at("new") && (at("(", 1) || at("[", 1) || at("{", 1))) return;
      advance();
    }
  }

  bool at_type_declaration() const {
    return at("class") || at("struct") || at("interface") || at("enum") || at("delegate") ||
           (at_word("record") && (at_kind(TokKind::Identifier, 1) || at("class", 1) || at("struct", 1))) ||
           (at("ref") && at("struct", 1));
  }

  void type_declaration() {
    if (accept("ref")) {
      expect("struct");
      type_rest(false);
    } else if (accept("class") || accept("struct") || accept("interface")) {
      type_rest(false);
    } else if (accept_word("record")) {
      if (!accept("class")) accept("struct");
      type_rest(true);
    } else if (accept("enum")) {
      expect_identifier();
      if (accept(":")) type();
      expect("{");
      while (!at("}")) {
        attributes();
        expect_identifier();
        if (accept("=")) expression();
        if (!accept(",")) break;
      }
      expect("}");
      accept(";");
    } else if (accept("delegate")) {
      return_type();
      expect_identifier();
      if (at("<")) type_parameters();
      parameters("(", ")");
      constraints();
      expect(";");
    } else {
      fail("expected type declaration");
    }
  }

  void type_rest(bool record) {
    expect_identifier();
    if (at("<")) type_parameters();
    if (at("(")) {
      if (!record) fail("unexpected parameter list");
      parameters("(", ")");
    }
    if (accept(":")) {
      do {
        type();
        if (record && at("(")) arguments("(", ")");
      } while (accept(","));
    }
    constraints();
    if (record && accept(";")) return;
    class_body();
    accept(";");
  }

  void type_parameters() {
    expect("<");
    do {
      attributes();
      if (!accept_word("in")) accept("in");
      accept_word("out") || accept("out");
      expect_identifier();
    } while (accept(","));
    expect(">");
  }

  void constraints() {
    while (accept_word("where")) {
      expect_identifier();
      expect(":");
      do {
        if (accept("class") || accept("struct")) {
          accept("?");
        } else if (accept_word("unmanaged") || accept_word("notnull") || accept("default")) {
        } else if (accept("new")) {
          expect("(");
          expect(")");
        } else {
          type();
        }
      } while (accept(","));
    }
  }

  void class_body() {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in type body");
      member_declaration();
    }
    expect("}");
  }

  void method_body() {
    if (accept(";")) return;
    if (accept("=>")) {
      expression();
      expect(";");
      return;
    }
    block();
  }

  void member_declaration() {
    if (accept(";")) return;
    attributes();
    modifiers();
    if (at_type_declaration()) {
      type_declaration();
      return;
    }
    if (accept("~")) {
      expect_identifier();
      expect("(");
      expect(")");
      method_body();
      return;
    }
    if (accept("implicit") || accept("explicit")) {
      expect("operator");
      accept_word("checked");
      type();
      parameters("(", ")");
      method_body();
      return;
    }
    if (accept("event")) {
      type();
      member_name();
      if (at("{")) {
        accessor_block();
        return;
      }
      if (accept("=")) variable_initializer();
      while (accept(",")) {
        expect_identifier();
        if (accept("=")) variable_initializer();
      }
      expect(";");
      return;
    }
    // constructor
    if (at_kind(TokKind::Identifier) && at("(", 1)) {
      advance();
      parameters("(", ")");
      if (accept(":")) {
        if (!accept("base")) expect("this");
        arguments("(", ")");
      }
      method_body();
      return;
    }
    return_type();
    if (accept("operator")) {
      overloadable_operator();
      parameters("(", ")");
      method_body();
      return;
    }
    if (accept("this")) {
      parameters("[", "]");
      property_body();
      return;
    }
    member_name();
    if (at("this") && !at("(", 1)) {
      advance();
      parameters("[", "]");
      property_body();
      return;
    }
    if (at("<") || at("(")) {
      if (at("<")) type_parameters();
      parameters("(", ")");
      constraints();
      method_body();
      return;
    }
    if (at("{") || at("=>")) {
      property_body();
      return;
    }
    // field
    if (accept("[")) {  // fixed-size buffer
      expression();
      expect("]");
    }
    if (accept("=")) variable_initializer();
    while (accept(",")) {
      expect_identifier();
      if (accept("=")) variable_initializer();
    }
    expect(";");
  }

  // possibly qualified for explicit interface implementation: IList<T>.Add
  void member_name() {
    expect_identifier();
    while (true) {
      std::size_t saved = pos_;
      if (at("<") && speculate([&] {
            type_arguments();
            if (!at(".")) fail("no qualified member");
          })) {
      } else {
        pos_ = saved;
      }
      if (at(".") && (at_kind(TokKind::Identifier, 1) || at("this", 1))) {
        advance();
        if (at("this")) return;
        advance();
        continue;
      }
      return;
    }
  }

  void overloadable_operator() {
    accept_word("checked");
    if (at(">")) {
      advance();
      if (at(">")) advance();
      if (at("=")) advance();
      return;
    }
    static const std::unordered_set<std::string_view> ops{"+",  "-",  "!",  "~",  "++", "--", "*",  "/",
                                                          "%",  "&",  "|",  "^",  "<<", "==", "!=", "<",
                                                          "<=", ">>", "true", "false"};
    if (peek().kind == TokKind::Punct && ops.count(peek().text)) {
      advance();
      return;
    }
    fail("expected overloadable operator");
  }

  void property_body() {
    if (accept("=>")) {
      expression();
      expect(";");
      return;
    }
    accessor_block();
    if (accept("=")) {
      variable_initializer();
      expect(";");
    }
  }

  void accessor_block() {
    expect("{");
    while (!at("}")) {
      attributes();
      modifiers();
      if (!(accept_word("get") || accept_word("set") || accept_word("init") || accept_word("add") ||
            accept_word("remove")))
        fail("expected accessor");
      method_body();
    }
    expect("}");
  }

  void parameters(std::string_view open, std::string_view close) {
    expect(open);
    if (!at(close)) {
      do {
        attributes();
        while (accept("ref") || accept("out") || accept("in") || accept("params") || accept("this") ||
               accept_word("scoped")) {
        }
        if (at("__arglist")) {
          advance();
          continue;
        }
        type();
        expect_identifier();
        if (accept("=")) expression();
      } while (accept(","));
    }
    expect(close);
  }

  // ------------------------------------------------------------ types

  void return_type() {
    if (accept("ref")) accept("readonly");
    type();
  }

  void type() {
    non_array_type();
    type_suffixes();
  }

  void type_suffixes() {
    while (true) {
      if (at("?") && !at_expression_continuation_after_question()) {
        advance();
      } else if (at("*")) {
        advance();
      } else if (at("[") && (at("]", 1) || at(",", 1))) {
        advance();
        while (accept(",")) {
        }
        expect("]");
      } else {
        return;
      }
    }
  }

  // "T?" is nullable unless the '?' begins a conditional ("a ? b : c").
  bool at_expression_continuation_after_question() const {
    const Token& n = peek(1);
    if (n.kind == TokKind::Identifier || n.kind == TokKind::Number || n.kind == TokKind::String ||
        n.kind == TokKind::Char)
      return !(n.kind == TokKind::Identifier &&
               (at("=", 2) || at(";", 2) || at(",", 2) || at(")", 2) || at("{", 2) || at("=>", 2) ||
                at_word("in", 2) || at("in", 2)));
    if (n.kind == TokKind::Keyword)
      return n.text == "new" || n.text == "null" || n.text == "true" || n.text == "false" || n.text == "this" ||
             n.text == "typeof" || n.text == "default" || n.text == "throw" || n.text == "base";
    return n.kind == TokKind::Punct && (n.text == "(" || n.text == "-" || n.text == "!" || n.text == "[");
  }

  void non_array_type() {
    if (peek().kind == TokKind::Keyword && kPredefined.count(peek().text)) {
      advance();
      return;
    }
    if (at("(")) {  // tuple type
      advance();
      int n = 0;
      do {
        type();
        if (at_kind(TokKind::Identifier)) advance();
        ++n;
      } while (accept(","));
      expect(")");
      if (n < 2) fail("tuple type needs two elements");
      return;
    }
    if (at("delegate") && at("*", 1)) {  // function pointer
      advance(), advance();
      if (at_word("managed") || at_word("unmanaged")) advance();
      expect("<");
      do {
        accept("ref") || accept("out") || accept("in");
        type();
      } while (accept(","));
      expect(">");
      return;
    }
    qualified_name();
  }

  void type_arguments() {
    expect("<");
    if (at(",") || at(">")) {  // unbound generic in typeof(Dictionary<,>)
      while (accept(",")) {
      }
      expect(">");
      return;
    }
    do {
      attributes();
      type();
    } while (accept(","));
    expect(">");
  }

  // Speculative "<...>" followed by a token that disambiguates it as type arguments.
  bool try_generic_arguments_in_expression() {
    std::size_t saved = pos_;
    if (speculate([&] {
          type_arguments();
          const Token& n = peek();
          static const std::unordered_set<std::string_view> follow{
              "(", ")", "]", "}", ":", ";", ",", ".", "?", "==", "!=", "|", "^", "&&", "||", "&", "[", "?."};
          bool ok = (n.kind == TokKind::Punct && follow.count(n.text)) || n.kind == TokKind::End ||
                    (n.kind == TokKind::Punct && n.text == ">") || at("=>");
          if (!ok) fail("not type arguments");
        }))
      return true;
    pos_ = saved;
    return false;
  }

  // ------------------------------------------------------------ statements

  void block() {
    expect("{");
    while (!at("}")) {
      if (at_end()) fail("unexpected end of input in block");
      statement();
    }
    expect("}");
  }

  bool try_local_declaration(bool require_semicolon) {
    return speculate([&] {
      accept_word("scoped");
      if (accept("ref")) accept("readonly");
      bool is_const = accept("const");
      (void)is_const;
      type();
      expect_identifier();
      if (!(at("=") || at(",") || at(";") || at("["))) fail("not a declaration");
      if (accept("[")) {  // stackalloc-free fixed buffers are not locals; reject
        fail("not a declaration");
      }
      if (accept("=")) {
        accept("ref");
        variable_initializer();
      }
      while (accept(",")) {
        expect_identifier();
        if (accept("=")) variable_initializer();
      }
      if (require_semicolon) expect(";");
    });
  }

  bool try_local_function() {
    return speculate([&] {
      while (accept("static") || accept("unsafe") || accept("extern") || accept_word("async")) {
      }
      return_type();
      expect_identifier();
      if (at("<")) type_parameters();
      if (!at("(")) fail("not a local function");
      parameters("(", ")");
      constraints();
      if (!(at("{") || at("=>"))) fail("not a local function");
      method_body();
    });
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

  void embedded_statement() { statement(); }

  void statement() {
    if (at("{")) {
      block();
      return;
    }
    if (accept(";")) return;
    if (at_kind(TokKind::Identifier) && at(":", 1) && !at(":", 2)) {
      advance(), advance();
      statement();
      return;
    }
    if (accept("if")) {
      par_expression();
      embedded_statement();
      if (accept("else")) embedded_statement();
      return;
    }
    if (accept("while")) {
      par_expression();
      embedded_statement();
      return;
    }
    if (accept("do")) {
      embedded_statement();
      expect("while");
      par_expression();
      expect(";");
      return;
    }
    if (accept("for")) {
      expect("(");
      if (!at(";") && !try_local_declaration(false)) statement_expression_list();
      expect(";");
      if (!at(";")) expression();
      expect(";");
      if (!at(")")) statement_expression_list();
      expect(")");
      embedded_statement();
      return;
    }
    if (accept("foreach") || (at_word("await") && at("foreach", 1) && (advance(), advance(), true))) {
      expect("(");
      accept("ref");
      accept("readonly");
      type();
      if (at("(")) {
        deconstruction_designation();
      } else {
        expect_identifier();
      }
      expect("in");
      expression();
      expect(")");
      embedded_statement();
      return;
    }
    if (accept("switch")) {
      switch_statement_rest();
      return;
    }
    if (accept("try")) {
      block();
      bool handlers = false;
      while (accept("catch")) {
        handlers = true;
        if (accept("(")) {
          type();
          if (at_kind(TokKind::Identifier)) advance();
          expect(")");
        }
        if (accept_word("when")) par_expression();
        block();
      }
      if (accept("finally")) {
        handlers = true;
        block();
      }
      if (!handlers) fail("try without catch or finally");
      return;
    }
    if (accept("return")) {
      if (!at(";")) {
        accept("ref");
        expression();
      }
      expect(";");
      return;
    }
    if (accept("break") || accept("continue")) {
      expect(";");
      return;
    }
    if (accept("goto")) {
      if (accept("case")) {
        expression();
      } else if (!accept("default")) {
        expect_identifier();
      }
      expect(";");
      return;
    }
    if (accept("throw")) {
      if (!at(";")) expression();
      expect(";");
      return;
    }
    if (at_word("yield") && (at("return", 1) || at("break", 1))) {
      advance();
      if (accept("return")) expression();
      else advance();
      expect(";");
      return;
    }
    if (accept("lock")) {
      par_expression();
      embedded_statement();
      return;
    }
    if (at("using") || (at_word("await") && at("using", 1))) {
      accept_word("await");
      expect("using");
      if (accept("(")) {
        if (!try_local_declaration(false)) expression();
        expect(")");
        embedded_statement();
      } else {
        if (!try_local_declaration(true)) fail("expected using declaration");
      }
      return;
    }
    if ((at("checked") || at("unchecked") || at("unsafe")) && at("{", 1)) {
      advance();
      block();
      return;
    }
    if (accept("fixed")) {
      expect("(");
      if (!try_local_declaration(false)) fail("expected fixed declaration");
      expect(")");
      embedded_statement();
      return;
    }
    if (at_type_declaration() && !at("delegate")) {
      fail("type declaration inside a method body");
    }
    if (try_local_declaration(true)) return;
    if (try_local_function()) return;
    Expr kind = expression();
    if (kind == Expr::Other || kind == Expr::Lambda) fail("only assignment, call, increment, decrement, await and new can be statements");
    expect(";");
  }

  void deconstruction_designation() {
    expect("(");
    do {
      if (at("(")) {
        deconstruction_designation();
      } else {
        expect_identifier();
      }
    } while (accept(","));
    expect(")");
  }

  void statement_expression_list() {
    do {
      Expr k = expression();
      if (k == Expr::Other || k == Expr::Lambda) fail("not a statement expression");
    } while (accept(","));
  }

  void par_expression() {
    expect("(");
    expression();
    expect(")");
  }

  void switch_statement_rest() {
    if (at("(")) {
      // parenthesized governing expression or a tuple
      expression();
    } else {
      fail("expected '('");
    }
    expect("{");
    while (!at("}")) {
      bool labels = false;
      while (at("case") || at("default")) {
        labels = true;
        if (accept("default")) {
          expect(":");
          continue;
        }
        advance();
        pattern();
        if (accept_word("when")) expression();
        expect(":");
      }
      if (!labels) fail("expected case or default");
      while (!at("case") && !at("default") && !at("}")) {
        if (at_end()) fail("unexpected end of input in switch");
        statement();
      }
    }
    expect("}");
  }

  // ------------------------------------------------------------ patterns

  void pattern() {
    primary_pattern_combined();
  }

  void primary_pattern_combined() {
    unary_pattern();
    while (accept_word("and") || accept_word("or")) unary_pattern();
  }

  void unary_pattern() {
    if (accept_word("not")) {
      unary_pattern();
      return;
    }
    if (at("<") || at("<=") || at(">") || at("==") || at("!=")) {
      if (at(">") && adjacent(0) && at("=", 1)) advance();
      advance();
      shift_expression();
      return;
    }
    if (at("(")) {
      std::size_t saved = pos_;
      if (speculate([&] {
            // positional pattern or parenthesized pattern
            advance();
            if (!at(")")) {
              do {
                if (at_kind(TokKind::Identifier) && at(":", 1)) advance(), advance();
                pattern();
              } while (accept(","));
            }
            expect(")");
            if (at("{")) property_subpattern();
            if (at_kind(TokKind::Identifier) && !is_pattern_word()) advance();
          }))
        return;
      pos_ = saved;
    }
    if (at("{")) {
      property_subpattern();
      if (at_kind(TokKind::Identifier) && !is_pattern_word()) advance();
      return;
    }
    if (at("[")) {  // list pattern
      advance();
      if (!at("]")) {
        do {
          if (accept("..")) {
            if (!at(",") && !at("]")) pattern();
          } else {
            pattern();
          }
        } while (accept(","));
      }
      expect("]");
      return;
    }
    if (at_word("var")) {
      advance();
      if (at("(")) {
        deconstruction_designation();
      } else {
        expect_identifier();
      }
      return;
    }
    if (at_word("_") && (at(")", 1) || at(",", 1) || at("=>", 1) || at(":", 1) || at("}", 1))) {
      advance();
      return;
    }
    // type pattern with optional designation / recursive pattern, or constant pattern
    std::size_t saved = pos_;
    if (speculate([&] {
          type();
          if (at("(") || at("{")) {
            if (at("(")) {
              advance();
              if (!at(")")) {
                do {
                  if (at_kind(TokKind::Identifier) && at(":", 1)) advance(), advance();
                  pattern();
                } while (accept(","));
              }
              expect(")");
            }
            if (at("{")) property_subpattern();
            if (at_kind(TokKind::Identifier) && !is_pattern_word()) advance();
            return;
          }
          if (at_kind(TokKind::Identifier) && !is_pattern_word()) {
            advance();
            return;
          }
          // bare type pattern only when a pattern terminator follows
          if (!(at(")") || at(":") || at(",") || at("=>") || at("}") || at("]") || at_word("when") ||
                at_word("and") || at_word("or") || at("&&") || at("||") || at(";") || at("?")))
            fail("not a type pattern");
        }))
      return;
    pos_ = saved;
    shift_expression();  // constant pattern
  }

  bool is_pattern_word() const {
    return at_word("and") || at_word("or") || at_word("when") || at_word("not");
  }

  void property_subpattern() {
    expect("{");
    while (!at("}")) {
      expression_name_chain();
      expect(":");
      pattern();
      if (!accept(",")) break;
    }
    expect("}");
  }

  void expression_name_chain() {
    expect_identifier();
    while (accept(".")) expect_identifier();
  }

  // ------------------------------------------------------------ expressions

  bool lambda_ahead() const {
    std::size_t k = 0;
    if (at_word("async") && (at_kind(TokKind::Identifier, 1) || at("(", 1))) k = 1;
    while (at("static", k)) ++k;
    if (peek(k).kind == TokKind::Identifier && at("=>", k + 1)) return true;
    if (at("(", k)) {
      std::size_t close = matching_close(k);
      return close != std::string::npos && at("=>", close + 1);
    }
    return false;
  }

  void lambda() {
    accept_word("async");
    while (accept("static")) {
    }
    if (at_kind(TokKind::Identifier)) {
      advance();
    } else {
      expect("(");
      if (!at(")")) {
        do {
          attributes();
          while (accept("ref") || accept("out") || accept("in") || accept("params")) {
          }
          if (at_kind(TokKind::Identifier) && (at(",", 1) || at(")", 1))) {
            advance();
          } else {
            type();
            expect_identifier();
            if (accept("=")) expression();
          }
        } while (accept(","));
      }
      expect(")");
    }
    expect("=>");
    if (at("{")) {
      block();
    } else {
      accept("ref");
      expression();
    }
  }

  bool query_ahead() const {
    if (!at_word("from")) return false;
    if (at_kind(TokKind::Identifier, 1) && (at("in", 2))) return true;
    // from Type x in ...
    return (at_kind(TokKind::Identifier, 1) || at_kind(TokKind::Keyword, 1)) &&
           at_kind(TokKind::Identifier, 2) && at("in", 3);
  }

  void query_expression() {
    from_clause();
    query_body();
  }

  void from_clause() {
    if (!accept_word("from") && !accept_word("join")) fail("expected from");
    if (!(at_kind(TokKind::Identifier) && at("in", 1))) type();
    expect_identifier();
    expect("in");
    expression();
  }

  void query_body() {
    while (true) {
      if (at_word("from")) {
        from_clause();
      } else if (at_word("let")) {
        advance();
        expect_identifier();
        expect("=");
        expression();
      } else if (at_word("where")) {
        advance();
        expression();
      } else if (at_word("join")) {
        from_clause();
        if (!accept_word("on")) fail("expected on");
        expression();
        if (!accept_word("equals")) fail("expected equals");
        expression();
        if (accept_word("into")) expect_identifier();
      } else if (at_word("orderby")) {
        advance();
        do {
          expression();
          if (!accept_word("ascending")) accept_word("descending");
        } while (accept(","));
      } else {
        break;
      }
    }
    if (accept_word("select")) {
      expression();
    } else if (accept_word("group")) {
      expression();
      if (!accept_word("by")) fail("expected by");
      expression();
    } else {
      fail("query body must end with select or group");
    }
    if (accept_word("into")) {
      expect_identifier();
      query_body();
    }
  }

  Expr expression() {
    if (lambda_ahead()) {
      lambda();
      return Expr::Lambda;
    }
    if (query_ahead()) {
      query_expression();
      return Expr::Other;
    }
    if (at("throw")) {  // throw expression
      advance();
      expression();
      return Expr::Other;
    }
    Expr lhs = conditional();
    if (assignment_operator()) {
      if (at("ref")) advance();
      if (at("{")) {
        array_initializer();
      } else {
        expression();
      }
      return Expr::Assignment;
    }
    return lhs;
  }

  bool assignment_operator() {
    if (peek().kind == TokKind::Punct && kAssignOps.count(peek().text)) {
      advance();
      return true;
    }
    if (at(">") && adjacent(0) && at(">", 1) && adjacent(1) && at("=", 2)) {
      advance(), advance(), advance();
      return true;
    }
    if (at(">") && adjacent(0) && at(">", 1) && adjacent(1) && at(">", 2) && adjacent(2) && at("=", 3)) {
      advance(), advance(), advance(), advance();
      return true;
    }
    return false;
  }

  Expr conditional() {
    Expr e = coalescing();
    if (at("?") && !at("[", 1)) {
      advance();
      accept("ref");
      expression();
      expect(":");
      accept("ref");
      expression();
      return Expr::Other;
    }
    return e;
  }

  Expr coalescing() {
    Expr e = binary(0);
    if (accept("??")) {
      if (at("throw")) {
        advance();
        expression();
      } else {
        coalescing();
      }
      return Expr::Other;
    }
    return e;
  }

  std::pair<std::string, std::size_t> peek_binary(int& prec) const {
    prec = 0;
    const Token& t = peek();
    if (t.kind == TokKind::Keyword && (t.text == "is" || t.text == "as")) {
      prec = 7;
      return {t.text, 1};
    }
    if (t.kind == TokKind::Identifier && t.text == "with" && at("{", 1)) {
      prec = 11;
      return {"with", 1};
    }
    if (t.kind != TokKind::Punct) return {};
    if (t.text == ">") {
      if (adjacent(0) && at(">", 1)) {
        if (adjacent(1) && at("=", 2)) return {};
        if (adjacent(1) && at(">", 2)) {
          if (adjacent(2) && at("=", 3)) return {};
          prec = 8;
          return {">>>", 3};
        }
        prec = 8;
        return {">>", 2};
      }
      if (adjacent(0) && at("=", 1)) {
        prec = 7;
        return {">=", 2};
      }
      prec = 7;
      return {">", 1};
    }
    static const std::pair<std::string_view, int> table[] = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6}, {"<", 7},
        {"<=", 7}, {"<<", 8}, {"+", 9},  {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}, {"..", 12}};
    for (auto [op, p] : table) {
      if (t.text == op) {
        prec = p;
        return {std::string(op), 1};
      }
    }
    return {};
  }

  Expr binary(int min_prec) {
    Expr left = at("..") ? Expr::Other : unary();
    while (true) {
      int prec = 0;
      auto [op, count] = peek_binary(prec);
      if (prec == 0 || prec <= min_prec) return left;
      for (std::size_t i = 0; i < count; ++i) advance();
      if (op == "is") {
        pattern();
      } else if (op == "as") {
        type();
      } else if (op == "with") {
        object_initializer();
      } else if (op == "..") {
        if (!at(")") && !at("]") && !at(",") && !at(";")) binary(prec);
      } else {
        binary(prec);
      }
      left = Expr::Other;
    }
  }

  Expr shift_expression() { return binary(7); }

  bool starts_cast_operand() const {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Identifier:
      case TokKind::Number:
      case TokKind::String:
      case TokKind::Char:
        return true;
      case TokKind::Keyword:
        return t.text != "as" && t.text != "is";
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
    if (at("+") || at("-") || at("!") || at("~") || at("^") || at("&") || at("*")) {
      advance();
      unary();
      return Expr::Other;
    }
    if (at_word("await") && !at(";", 1) && !at(")", 1) && !at("=", 1) && !at(".", 1) && !at(",", 1)) {
      advance();
      unary();
      return Expr::Await;
    }
    if (at("(")) {
      std::size_t saved = pos_;
      bool predefined = peek(1).kind == TokKind::Keyword && kPredefined.count(peek(1).text);
      if (speculate([&] {
            expect("(");
            type();
            expect(")");
            if (predefined) {
              if (at(")") || at(";") || at(",") || at(".") || at("]")) fail("not a cast");
            } else if (!starts_cast_operand()) {
              fail("not a cast");
            }
          })) {
        unary();
        return Expr::Other;
      }
      pos_ = saved;
    }
    Expr e = postfix();
    if (at("switch") && at("{", 1)) {
      advance();
      switch_expression_arms();
      e = Expr::Other;
    }
    return e;
  }

  void switch_expression_arms() {
    expect("{");
    while (!at("}")) {
      pattern();
      if (accept_word("when")) expression();
      expect("=>");
      expression();
      if (!accept(",")) break;
    }
    expect("}");
  }

  void arguments(std::string_view open, std::string_view close) {
    expect(open);
    if (!at(close)) {
      do {
        if (at_kind(TokKind::Identifier) && at(":", 1) && !at(":", 2)) advance(), advance();
        if (accept("out")) {
          if (!speculate([&] {
                type();
                if (at("(")) {
                  deconstruction_designation();
                } else {
                  expect_identifier();
                }
                if (!at(",") && !at(close)) fail("not a declaration");
              }))
            expression();
        } else {
          accept("ref") || accept("in");
          expression();
        }
      } while (accept(","));
    }
    expect(close);
  }

  Expr postfix() {
    Expr e = primary();
    while (true) {
      if (at(".") || at("?.") || at("->")) {
        advance();
        expect_identifier();
        if (at("<")) try_generic_arguments_in_expression();
        e = Expr::Other;
      } else if (at("?") && at("[", 1) && adjacent(0)) {
        advance();
        arguments("[", "]");
        e = Expr::Other;
      } else if (at("[")) {
        arguments("[", "]");
        e = Expr::Other;
      } else if (at("(")) {
        arguments("(", ")");
        e = Expr::Call;
      } else if (at("++") || at("--")) {
        advance();
        e = Expr::IncDec;
      } else if (at("!") && (at(".", 1) || at(";", 1) || at(")", 1) || at(",", 1) || at("]", 1) ||
                             at("?.", 1) || at("[", 1))) {
        advance();  // null-forgiving
      } else {
        return e;
      }
    }
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Number:
      case TokKind::String:
      case TokKind::Char:
        advance();
        while (at_kind(TokKind::String) && t.kind == TokKind::String) fail("adjacent string literals");
        return Expr::Other;
      case TokKind::Identifier:
        advance();
        if (at("::")) {
          advance();
          expect_identifier();
        }
        if (at("<")) try_generic_arguments_in_expression();
        return Expr::Other;
      default:
        break;
    }
    if (accept("true") || accept("false") || accept("null") || accept("this") || accept("base"))
      return Expr::Other;
    if (peek().kind == TokKind::Keyword && kPredefined.count(peek().text)) {
      advance();
      if (!at(".")) fail("expected member access on predefined type");
      return Expr::Other;
    }
    if (accept("new")) {
      object_creation();
      return Expr::New;
    }
    if (at("(")) {
      advance();
      expression();
      if (accept(",")) {  // tuple
        do {
          if (at_kind(TokKind::Identifier) && at(":", 1)) advance(), advance();
          expression();
        } while (accept(","));
      }
      expect(")");
      return Expr::Other;
    }
    if (accept("typeof") || accept("sizeof")) {
      expect("(");
      type();
      expect(")");
      return Expr::Other;
    }
    if (accept("default")) {
      if (accept("(")) {
        type();
        expect(")");
      }
      return Expr::Other;
    }
    if (accept("checked") || accept("unchecked")) {
      par_expression();
      return Expr::Other;
    }
    if (accept("delegate")) {
      if (at("(")) parameters("(", ")");
      block();
      return Expr::Other;
    }
    if (accept("stackalloc")) {
      if (at("[")) {
        advance();
        expect("]");
        array_initializer();
        return Expr::Other;
      }
      type();
      if (at("{")) array_initializer();
      return Expr::Other;
    }
    if (at("[")) {  // collection expression
      advance();
      while (!at("]")) {
        accept("..");
        expression();
        if (!accept(",")) break;
      }
      expect("]");
      return Expr::Other;
    }
    fail("expected expression");
  }

  void object_creation() {
    if (at("(")) {  // target-typed new()
      arguments("(", ")");
      if (at("{")) object_initializer();
      return;
    }
    if (at("{")) {  // anonymous type
      object_initializer();
      return;
    }
    if (at("[")) {  // implicitly typed array
      advance();
      while (accept(",")) {
      }
      expect("]");
      array_initializer();
      return;
    }
    non_array_type();
    while (at("?")) advance();
    if (at("[")) {
      if (at("]", 1) || at(",", 1)) {
        type_suffixes();
        array_initializer();
        return;
      }
      arguments("[", "]");
      type_suffixes();
      if (at("{")) array_initializer();
      return;
    }
    bool any = false;
    if (at("(")) {
      arguments("(", ")");
      any = true;
    }
    if (at("{")) {
      object_initializer();
      any = true;
    }
    if (!any) fail("expected '(' or '{' after new");
  }

  void object_initializer() {
    expect("{");
    while (!at("}")) {
      if (at_kind(TokKind::Identifier) && at("=", 1)) {
        advance(), advance();
        if (at("{")) {
          object_initializer();
        } else {
          expression();
        }
      } else if (at("[")) {
        arguments("[", "]");
        expect("=");
        if (at("{")) {
          object_initializer();
        } else {
          expression();
        }
      } else if (at("{")) {
        object_initializer();
      } else {
        expression();
      }
      if (!accept(",")) break;
    }
    expect("}");
  }
};

}  // namespace

void parse_csharp(std::string_view src) {
  CSharpParser p(lex_csharp(src));
  p.compilation_unit();
}

}  // namespace qqual::codeparse::detail
