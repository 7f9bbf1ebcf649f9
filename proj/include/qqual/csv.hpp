#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qqual::csv {

using Row = std::vector<std::string>;

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted.
std::string escape_field(std::string_view field);
void write_row(std::ostream& out, const Row& row);

struct Table {
  Row header;
  std::vector<Row> rows;

  // Index of a header column; throws FormatError when absent.
  std::size_t column(std::string_view name) const;
};

// Reads a whole CSV document. Quoted fields may span lines. Every row must have
// as many fields as the header.
Table read(std::istream& in);
Table read_file(const std::string& path);
void write_file(const std::string& path, const Table& table);

}  // namespace qqual::csv
