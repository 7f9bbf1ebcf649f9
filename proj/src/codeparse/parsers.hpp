#pragma once

#include <string_view>

namespace qqual::codeparse::detail {

// Each returns normally on a complete parse and throws LexError or ParseFailure otherwise.
void parse_java(std::string_view src);         // compilation unit
void parse_csharp(std::string_view src);       // compilation unit (no top-level statements)
void parse_javascript(std::string_view src);   // program, script or module
void parse_python(std::string_view src);       // Python 3 module

}  // namespace qqual::codeparse::detail
