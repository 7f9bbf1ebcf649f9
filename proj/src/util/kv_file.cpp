#include "qqual/kv_file.hpp"

#include <fstream>

#include "qqual/error.hpp"
#include "qqual/text.hpp"

namespace qqual {

std::vector<KvLine> read_tab_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<KvLine> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(path + ":" + std::to_string(n) + ": expected key<TAB>value");
    out.push_back({text::trim(line.substr(0, tab)), text::trim(line.substr(tab + 1)), n});
  }
  return out;
}

}  // namespace qqual
