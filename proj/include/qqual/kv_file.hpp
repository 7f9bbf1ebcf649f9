#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qqual {

struct KvLine {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Reads "key<TAB>value" lines. Blank lines and lines starting with '#' are skipped.
// A line without a tab is a FormatError naming the line number.
std::vector<KvLine> read_tab_file(const std::string& path);

}  // namespace qqual
