#include "qqual/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qqual/error.hpp"

namespace qqual::csv {

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape_field(row[i]);
  }
  out << '\n';
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw FormatError("csv: missing column '" + std::string(name) + "'");
}

namespace {

// Returns false at end of input with no pending row.
bool read_record(std::istream& in, Row& row, std::size_t& line) {
  row.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line;
      if (!field.empty() && field.back() == '\r') field.pop_back();
      row.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) throw FormatError("csv: unterminated quoted field near line " + std::to_string(line));
  if (!any) return false;
  if (!field.empty() && field.back() == '\r') field.pop_back();
  row.push_back(std::move(field));
  return true;
}

}  // namespace

Table read(std::istream& in) {
  Table t;
  std::size_t line = 1;
  if (!read_record(in, t.header, line)) throw FormatError("csv: empty document");
  Row row;
  while (read_record(in, row, line)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != t.header.size())
      throw FormatError("csv: row ending at line " + std::to_string(line - 1) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(t.header.size()));
    t.rows.push_back(row);
  }
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read(in);
}

void write_file(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_row(out, table.header);
  for (const auto& r : table.rows) write_row(out, r);
}

}  // namespace qqual::csv
