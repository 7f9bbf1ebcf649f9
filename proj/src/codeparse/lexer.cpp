#include "lexer.hpp"

#include <algorithm>
#include <unordered_set>

namespace qqual::codeparse::detail {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c, bool dollar) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || (dollar && c == '$') ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_ident_part(char c, bool dollar) { return is_ident_start(c, dollar) || is_digit(c); }

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  bool done() const { return pos_ >= src_.size(); }
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char at(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
  std::size_t pos() const { return pos_; }
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  std::string_view slice(std::size_t from) const { return src_.substr(from, pos_ - from); }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void error(std::string msg) const { throw LexError{line_, col_, std::move(msg)}; }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

enum class Dialect { Java, CSharp, JavaScript };

struct CConfig {
  Dialect dialect;
  const std::unordered_set<std::string_view>* keywords;
  std::vector<std::string_view> puncts;  // longest first
};

const std::unordered_set<std::string_view> kJavaKeywords{
    "abstract", "assert",     "boolean",   "break",    "byte",     "case",      "catch",  "char",
    "class",    "const",      "continue",  "default",  "do",       "double",    "else",   "enum",
    "extends",  "final",      "finally",   "float",    "for",      "goto",      "if",     "implements",
    "import",   "instanceof", "int",       "interface", "long",    "native",    "new",    "package",
    "private",  "protected",  "public",    "return",   "short",    "static",    "strictfp", "super",
    "switch",   "synchronized", "this",    "throw",    "throws",   "transient", "try",    "void",
    "volatile", "while",      "true",      "false",    "null"};

const std::unordered_set<std::string_view> kCSharpKeywords{
    "abstract", "as",       "base",      "bool",     "break",    "byte",     "case",     "catch",
    "char",     "checked",  "class",     "const",    "continue", "decimal",  "default",  "delegate",
    "do",       "double",   "else",      "enum",     "event",    "explicit", "extern",   "false",
    "finally",  "fixed",    "float",     "for",      "foreach",  "goto",     "if",       "implicit",
    "in",       "int",      "interface", "internal", "is",       "lock",     "long",     "namespace",
    "new",      "null",     "object",    "operator", "out",      "override", "params",   "private",
    "protected", "public",  "readonly",  "ref",      "return",   "sbyte",    "sealed",   "short",
    "sizeof",   "stackalloc", "static",  "string",   "struct",   "switch",   "this",     "throw",
    "true",     "try",      "typeof",    "uint",     "ulong",    "unchecked", "unsafe",  "ushort",
    "using",    "virtual",  "void",      "volatile", "while"};

const std::unordered_set<std::string_view> kJsKeywords{
    "break",  "case",    "catch",  "class",      "const", "continue", "debugger", "default", "delete",
    "do",     "else",    "enum",   "export",     "extends", "false",  "finally",  "for",     "function",
    "if",     "import",  "in",     "instanceof", "new",   "null",     "return",   "super",   "switch",
    "this",   "throw",   "true",   "try",        "typeof", "var",     "void",     "while",   "with"};

std::vector<std::string_view> sorted_longest_first(std::vector<std::string_view> v) {
  std::stable_sort(v.begin(), v.end(), [](auto a, auto b) { return a.size() > b.size(); });
  return v;
}

const CConfig& java_config() {
  static const CConfig cfg{Dialect::Java, &kJavaKeywords,
                           sorted_longest_first({"...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
                                                 "<<=", "<<", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
                                                 "(",   ")",  "{",  "}",  "[",  "]",  ";",  ",",  ".",  "@",
                                                 "=",   ">",  "<",  "!",  "~",  "?",  ":",  "+",  "-",  "*",
                                                 "/",   "&",  "|",  "^",  "%"})};
  return cfg;
}

const CConfig& csharp_config() {
  static const CConfig cfg{Dialect::CSharp, &kCSharpKeywords,
                           sorted_longest_first({"?\?=", "??", "?.", "=>", "::", "++", "--", "&&", "||", "==",
                                                 "!=",  "<=", "<<=", "<<", "+=", "-=", "*=", "/=", "%=", "&=",
                                                 "|=",  "^=", "->", "..", "(",  ")",  "{",  "}",  "[",  "]",
                                                 ";",   ",",  ".",  "=",  ">",  "<",  "!",  "~",  "?",  ":",
                                                 "+",   "-",  "*",  "/",  "&",  "|",  "^",  "%"})};
  return cfg;
}

const CConfig& js_config() {
  static const CConfig cfg{
      Dialect::JavaScript, &kJsKeywords,
      sorted_longest_first({">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "?\?=", "&&=", "||=",
                            "=>",   "==",  "!=",  "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",
                            "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",
                            "(",    ")",   "{",   "}",   "[",   "]",   ";",   ",",   ".",   "<",   ">",
                            "+",    "-",   "*",   "/",   "%",   "&",   "|",   "^",   "!",   "~",   "?",
                            ":",    "=",   "@",   "#"})};
  return cfg;
}

// Reads an escape-aware quoted literal whose opening quote is at the cursor.
void scan_quoted(Scanner& s, char quote, bool allow_newline) {
  s.advance();
  while (true) {
    if (s.done()) s.error("unterminated literal");
    char c = s.cur();
    if (c == '\\') {
      s.advance(2);
      continue;
    }
    if (c == '\n' && !allow_newline) s.error("newline in literal");
    s.advance();
    if (c == quote) return;
  }
}

void skip_block_comment(Scanner& s) {
  s.advance(2);
  while (!s.starts_with("*/")) {
    if (s.done()) s.error("unterminated comment");
    s.advance();
  }
  s.advance(2);
}

void scan_number(Scanner& s, Dialect d) {
  bool hex = s.cur() == '0' && (s.at(1) == 'x' || s.at(1) == 'X');
  if (hex) s.advance(2);
  while (!s.done()) {
    char c = s.cur();
    if (is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      bool exp = !hex && (c == 'e' || c == 'E');
      s.advance();
      if (exp && (s.cur() == '+' || s.cur() == '-')) s.advance();
    } else if (c == '.' && s.at(1) != '.' && (is_digit(s.at(1)) || d != Dialect::JavaScript)) {
      // "1..2" is a C# range, "1.toString" is not a number in JS
      if (d == Dialect::CSharp && !is_digit(s.at(1))) break;
      if (d == Dialect::Java && is_ident_start(s.at(1), true) && s.at(1) != 'f' && s.at(1) != 'F' &&
          s.at(1) != 'd' && s.at(1) != 'D' && s.at(1) != 'e' && s.at(1) != 'E')
        break;
      s.advance();
    } else {
      break;
    }
  }
}

// C# string forms: "..", @"..", $"..", $@"..", @$"..", and raw """...""".
void scan_csharp_string(Scanner& s) {
  bool verbatim = false, interp = false;
  while (s.cur() == '@' || s.cur() == '$') {
    (s.cur() == '@' ? verbatim : interp) = true;
    s.advance();
  }
  if (s.starts_with("\"\"\"")) {
    std::size_t n = 0;
    while (s.cur() == '"') {
      ++n;
      s.advance();
    }
    std::string closer(n, '"');
    while (!s.starts_with(closer)) {
      if (s.done()) s.error("unterminated raw string");
      s.advance();
    }
    s.advance(n);
    return;
  }
  s.advance();  // opening quote
  int depth = 0;
  while (true) {
    if (s.done()) s.error("unterminated string");
    char c = s.cur();
    if (depth == 0) {
      if (!verbatim && c == '\\') {
        s.advance(2);
        continue;
      }
      if (!verbatim && c == '\n') s.error("newline in string");
      if (c == '"') {
        if (verbatim && s.at(1) == '"') {
          s.advance(2);
          continue;
        }
        s.advance();
        return;
      }
      if (interp && c == '{') {
        if (s.at(1) == '{') {
          s.advance(2);
          continue;
        }
        depth = 1;
      } else if (interp && c == '}') {
        if (s.at(1) == '}') {
          s.advance(2);
          continue;
        }
        s.error("unbalanced '}' in interpolated string");
      }
      s.advance();
      continue;
    }
    // inside an interpolation hole
    if ((c == '@' || c == '$') && (s.at(1) == '"' || s.at(2) == '"')) {
      scan_csharp_string(s);
      continue;
    }
    if (c == '"' || c == '\'') {
      scan_quoted(s, c, false);
      continue;
    }
    if (c == '{') ++depth;
    if (c == '}') --depth;
    s.advance();
  }
}

// JS template literal: returns the source of each ${...} hole.
std::vector<std::string> scan_template(Scanner& s);

void skip_js_hole_string(Scanner& s) {
  char q = s.cur();
  if (q == '`') {
    scan_template(s);
  } else {
    scan_quoted(s, q, false);
  }
}

std::vector<std::string> scan_template(Scanner& s) {
  std::vector<std::string> holes;
  s.advance();  // backtick
  while (true) {
    if (s.done()) s.error("unterminated template literal");
    char c = s.cur();
    if (c == '\\') {
      s.advance(2);
      continue;
    }
    if (c == '`') {
      s.advance();
      return holes;
    }
    if (c == '$' && s.at(1) == '{') {
      s.advance(2);
      std::size_t start = s.pos();
      int depth = 1;
      while (true) {
        if (s.done()) s.error("unterminated template hole");
        char h = s.cur();
        if (h == '"' || h == '\'' || h == '`') {
          skip_js_hole_string(s);
          continue;
        }
        if (h == '/' && s.at(1) == '/') {
          while (!s.done() && s.cur() != '\n') s.advance();
          continue;
        }
        if (h == '/' && s.at(1) == '*') {
          skip_block_comment(s);
          continue;
        }
        if (h == '{') ++depth;
        if (h == '}' && --depth == 0) break;
        s.advance();
      }
      holes.emplace_back(s.slice(start));
      s.advance();  // closing brace
      continue;
    }
    s.advance();
  }
}

bool js_regex_allowed(const std::vector<Token>& out) {
  if (out.empty()) return true;
  const Token& p = out.back();
  switch (p.kind) {
    case TokKind::Identifier:
    case TokKind::Number:
    case TokKind::String:
    case TokKind::Template:
    case TokKind::Regex:
      return false;
    case TokKind::Keyword:
      return !(p.text == "this" || p.text == "super" || p.text == "null" || p.text == "true" || p.text == "false");
    case TokKind::Punct:
      return !(p.text == ")" || p.text == "]" || p.text == "}");
    default:
      return true;
  }
}

void scan_regex(Scanner& s) {
  s.advance();
  bool in_class = false;
  while (true) {
    if (s.done() || s.cur() == '\n') s.error("unterminated regular expression");
    char c = s.cur();
    if (c == '\\') {
      s.advance(2);
      continue;
    }
    if (c == '[') in_class = true;
    if (c == ']') in_class = false;
    s.advance();
    if (c == '/' && !in_class) break;
  }
  while (is_ident_part(s.cur(), true)) s.advance();
}

std::vector<Token> lex_c_family(std::string_view src, const CConfig& cfg) {
  Scanner s(src);
  std::vector<Token> out;
  bool newline = true;  // at logical line start (C# preprocessor lines)
  bool nl_before = false;
  const bool dollar = cfg.dialect != Dialect::CSharp;

  if (cfg.dialect == Dialect::JavaScript && s.starts_with("#!")) {
    while (!s.done() && s.cur() != '\n') s.advance();
  }

  while (true) {
    // whitespace and comments
    while (!s.done()) {
      char c = s.cur();
      if (c == '\n') {
        newline = true;
        nl_before = true;
        s.advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        s.advance();
      } else if (s.starts_with("//")) {
        while (!s.done() && s.cur() != '\n') s.advance();
      } else if (s.starts_with("/*")) {
        std::size_t l = s.line();
        skip_block_comment(s);
        if (s.line() != l) nl_before = true;
      } else if (cfg.dialect == Dialect::CSharp && c == '#' && newline) {
        while (!s.done() && s.cur() != '\n') s.advance();
      } else if (static_cast<unsigned char>(c) == 0xEF && s.starts_with("\xEF\xBB\xBF")) {
        s.advance(3);
      } else {
        break;
      }
    }
    Token t;
    t.offset = s.pos();
    t.line = s.line();
    t.col = s.col();
    t.newline_before = nl_before;
    if (s.done()) {
      t.kind = TokKind::End;
      out.push_back(std::move(t));
      return out;
    }
    newline = false;
    nl_before = false;
    const std::size_t start = s.pos();
    char c = s.cur();

    if (cfg.dialect == Dialect::CSharp && (c == '@' || c == '$') &&
        (s.at(1) == '"' || ((s.at(1) == '@' || s.at(1) == '$') && s.at(2) == '"'))) {
      scan_csharp_string(s);
      t.kind = TokKind::String;
    } else if (cfg.dialect == Dialect::CSharp && c == '@' && is_ident_start(s.at(1), false)) {
      s.advance();
      while (is_ident_part(s.cur(), false)) s.advance();
      t.kind = TokKind::Identifier;
    } else if (is_ident_start(c, dollar)) {
      while (is_ident_part(s.cur(), dollar)) s.advance();
      t.kind = cfg.keywords->count(s.slice(start)) ? TokKind::Keyword : TokKind::Identifier;
    } else if (is_digit(c) || (c == '.' && is_digit(s.at(1)))) {
      scan_number(s, cfg.dialect);
      t.kind = TokKind::Number;
    } else if (c == '"') {
      if (cfg.dialect == Dialect::Java && s.starts_with("\"\"\"")) {
        s.advance(3);
        while (!s.starts_with("\"\"\"")) {
          if (s.done()) s.error("unterminated text block");
          if (s.cur() == '\\') s.advance();
          s.advance();
        }
        s.advance(3);
      } else if (cfg.dialect == Dialect::CSharp) {
        scan_csharp_string(s);
      } else {
        scan_quoted(s, '"', false);
      }
      t.kind = TokKind::String;
    } else if (c == '\'') {
      scan_quoted(s, '\'', false);
      t.kind = cfg.dialect == Dialect::JavaScript ? TokKind::String : TokKind::Char;
      if (t.kind == TokKind::Char && s.pos() - start < 3) s.error("empty character literal");
    } else if (c == '`' && cfg.dialect == Dialect::JavaScript) {
      t.holes = scan_template(s);
      t.kind = TokKind::Template;
    } else if (c == '/' && cfg.dialect == Dialect::JavaScript && js_regex_allowed(out)) {
      scan_regex(s);
      t.kind = TokKind::Regex;
    } else if (cfg.dialect == Dialect::JavaScript && s.starts_with("?.") && is_digit(s.at(2))) {
      s.advance();
      t.kind = TokKind::Punct;
    } else {
      std::string_view match;
      for (auto p : cfg.puncts) {
        if (s.starts_with(p)) {
          match = p;
          break;
        }
      }
      if (match.empty()) s.error(std::string("unexpected character '") + c + "'");
      s.advance(match.size());
      t.kind = TokKind::Punct;
    }
    t.text = std::string(s.slice(start));
    out.push_back(std::move(t));
  }
}

// ---------------------------------------------------------------- Python

const std::unordered_set<std::string_view> kPyKeywords{
    "False", "None",   "True",    "and",    "as",   "assert", "async",  "await",    "break",
    "class", "continue", "def",   "del",    "elif", "else",   "except", "finally",  "for",
    "from",  "global", "if",      "import", "in",   "is",     "lambda", "nonlocal", "not",
    "or",    "pass",   "raise",   "return", "try",  "while",  "with",   "yield"};

const std::vector<std::string_view>& py_puncts() {
  static const auto v = sorted_longest_first(
      {"**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=", "+=",
       "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", "@=", "(",  ")",  "[",  "]",  "{",  "}",  ",",  ":",
       ".",   ";",   "@",   "=",   "+",   "-",  "*",  "/",  "%",  "&",  "|",  "^",  "~",  "<",  ">"});
  return v;
}

bool py_string_prefix(std::string_view p) {
  std::string l;
  for (char c : p) l.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  return l == "r" || l == "u" || l == "b" || l == "f" || l == "br" || l == "rb" || l == "fr" || l == "rf";
}

void scan_py_string(Scanner& s, bool raw) {
  char q = s.cur();
  bool triple = s.at(1) == q && s.at(2) == q;
  s.advance(triple ? 3 : 1);
  while (true) {
    if (s.done()) s.error("unterminated string");
    char c = s.cur();
    if (c == '\\') {
      s.advance(2);
      continue;
    }
    if (!triple && c == '\n') s.error("newline in string");
    if (c == q) {
      if (!triple) {
        s.advance();
        return;
      }
      if (s.at(1) == q && s.at(2) == q) {
        s.advance(3);
        return;
      }
    }
    s.advance();
  }
  (void)raw;
}

}  // namespace

std::vector<Token> lex_java(std::string_view src) { return lex_c_family(src, java_config()); }
std::vector<Token> lex_csharp(std::string_view src) { return lex_c_family(src, csharp_config()); }
std::vector<Token> lex_javascript(std::string_view src) { return lex_c_family(src, js_config()); }

std::vector<Token> lex_python(std::string_view src) {
  Scanner s(src);
  std::vector<Token> out;
  std::vector<std::size_t> indents{0};
  int bracket_depth = 0;
  bool line_start = true;

  auto push = [&](TokKind kind, std::string text) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.offset = s.pos();
    t.line = s.line();
    t.col = s.col();
    out.push_back(std::move(t));
  };

  if (s.starts_with("\xEF\xBB\xBF")) s.advance(3);

  while (true) {
    if (line_start && bracket_depth == 0) {
      // measure indentation of the next logical line; skip blank/comment-only lines
      std::size_t width = 0;
      while (s.cur() == ' ' || s.cur() == '\t' || s.cur() == '\f') {
        width = s.cur() == '\t' ? (width / 8 + 1) * 8 : s.cur() == '\f' ? 0 : width + 1;
        s.advance();
      }
      if (s.cur() == '#') {
        while (!s.done() && s.cur() != '\n') s.advance();
      }
      if (s.cur() == '\r') s.advance();
      if (s.cur() == '\n') {
        s.advance();
        continue;
      }
      if (s.cur() == '\\' && (s.at(1) == '\n' || (s.at(1) == '\r' && s.at(2) == '\n'))) {
        s.error("unexpected line continuation");
      }
      if (s.done()) break;
      if (width > indents.back()) {
        indents.push_back(width);
        push(TokKind::Indent, "");
      } else {
        while (width < indents.back()) {
          indents.pop_back();
          push(TokKind::Dedent, "");
        }
        if (width != indents.back()) s.error("unindent does not match any outer indentation level");
      }
      line_start = false;
    }

    char c = s.cur();
    if (s.done()) break;
    if (c == ' ' || c == '\t' || c == '\f' || c == '\r') {
      s.advance();
      continue;
    }
    if (c == '#') {
      while (!s.done() && s.cur() != '\n') s.advance();
      continue;
    }
    if (c == '\\') {
      if (s.at(1) == '\n') {
        s.advance(2);
        continue;
      }
      if (s.at(1) == '\r' && s.at(2) == '\n') {
        s.advance(3);
        continue;
      }
      s.error("unexpected character after line continuation");
    }
    if (c == '\n') {
      if (bracket_depth == 0) {
        push(TokKind::Newline, "");
        line_start = true;
      }
      s.advance();
      continue;
    }

    Token t;
    t.offset = s.pos();
    t.line = s.line();
    t.col = s.col();
    std::size_t start = s.pos();
    if (is_ident_start(c, false)) {
      while (is_ident_part(s.cur(), false)) s.advance();
      std::string_view word = s.slice(start);
      if ((s.cur() == '"' || s.cur() == '\'') && py_string_prefix(word)) {
        bool raw = word.find('r') != std::string_view::npos || word.find('R') != std::string_view::npos;
        scan_py_string(s, raw);
        t.kind = TokKind::String;
      } else {
        t.kind = kPyKeywords.count(word) ? TokKind::Keyword : TokKind::Identifier;
      }
    } else if (is_digit(c) || (c == '.' && is_digit(s.at(1)))) {
      bool hex = c == '0' && (s.at(1) == 'x' || s.at(1) == 'X' || s.at(1) == 'o' || s.at(1) == 'O' ||
                              s.at(1) == 'b' || s.at(1) == 'B');
      if (hex) s.advance(2);
      while (true) {
        char d = s.cur();
        if (is_digit(d) || d == '_' || (hex && ((d >= 'a' && d <= 'f') || (d >= 'A' && d <= 'F')))) {
          s.advance();
        } else if (!hex && d == '.') {
          s.advance();
        } else if (!hex && (d == 'e' || d == 'E')) {
          s.advance();
          if (s.cur() == '+' || s.cur() == '-') s.advance();
        } else if (!hex && (d == 'j' || d == 'J')) {
          s.advance();
          break;
        } else {
          break;
        }
      }
      if (is_ident_start(s.cur(), false)) s.error("invalid number literal");
      std::string_view lit = s.slice(start);
      if (lit.size() > 1 && lit[0] == '0' && is_digit(lit[1]) &&
          lit.find_first_not_of("0_") != std::string_view::npos &&
          lit.find_first_of(".eEjJ") == std::string_view::npos)
        s.error("leading zeros in decimal integer literal");
      t.kind = TokKind::Number;
    } else if (c == '"' || c == '\'') {
      scan_py_string(s, false);
      t.kind = TokKind::String;
    } else {
      std::string_view match;
      for (auto p : py_puncts()) {
        if (s.starts_with(p)) {
          match = p;
          break;
        }
      }
      if (match.empty()) s.error(std::string("unexpected character '") + c + "'");
      s.advance(match.size());
      t.kind = TokKind::Punct;
      if (match == "(" || match == "[" || match == "{") ++bracket_depth;
      if (match == ")" || match == "]" || match == "}") {
        if (bracket_depth == 0) s.error("unmatched '" + std::string(match) + "'");
        --bracket_depth;
      }
    }
    t.text = std::string(s.slice(start));
    out.push_back(std::move(t));
  }
  if (bracket_depth != 0) s.error("unexpected end of input inside brackets");
  if (!out.empty() && out.back().kind != TokKind::Newline && out.back().kind != TokKind::Dedent)
    push(TokKind::Newline, "");
  while (indents.size() > 1) {
    indents.pop_back();
    push(TokKind::Dedent, "");
  }
  push(TokKind::End, "");
  return out;
}

}  // namespace qqual::codeparse::detail
