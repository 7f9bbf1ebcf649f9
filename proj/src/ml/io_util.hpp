#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqual/error.hpp"
#include "qqual/text.hpp"

namespace qqual::ml::detail {

inline void write_values(std::ostream& out, std::string_view key, std::span<const double> values) {
  out << key << ' ' << values.size();
  for (double v : values) out << ' ' << text::format_double(v);
  out << '\n';
}

inline std::string read_token(std::istream& in) {
  std::string t;
  if (!(in >> t)) throw FormatError("model file ends unexpectedly");
  return t;
}

inline void expect_key(std::istream& in, std::string_view key) {
  std::string t = read_token(in);
  if (t != key) throw FormatError("model file: expected '" + std::string(key) + "', found '" + t + "'");
}

inline double read_double(std::istream& in) { return text::parse_double(read_token(in)); }

inline std::int64_t read_int(std::istream& in) { return text::parse_int(read_token(in)); }

inline std::size_t read_count(std::istream& in) {
  auto v = read_int(in);
  if (v < 0) throw FormatError("model file: negative count");
  return static_cast<std::size_t>(v);
}

inline std::vector<double> read_values(std::istream& in, std::string_view key) {
  expect_key(in, key);
  std::size_t n = read_count(in);
  std::vector<double> out(n);
  for (auto& v : out) v = read_double(in);
  return out;
}

}  // namespace qqual::ml::detail
