#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_set>

#include "qqual/codeparse.hpp"
#include "qqual/error.hpp"
#include "qqual/kv_file.hpp"
#include "qqual/text.hpp"

namespace qqual::codeparse {

namespace {

const std::unordered_set<std::string_view> kBranchKeywords{"if",     "else", "for", "while", "switch",
                                                           "case",   "elif", "try", "catch", "except"};

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_word(char c) { return is_letter(c) || (c >= '0' && c <= '9') || c == '_'; }

std::vector<std::string_view> source_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < s.size()) lines.push_back(s.substr(start));
      break;
    }
    std::string_view line = s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool blank(std::string_view line) { return line.find_first_not_of(" \t\f\v\r") == std::string_view::npos; }

}  // namespace

const std::array<std::string_view, ReadabilityFeatures::kCount>& ReadabilityFeatures::names() {
  static const std::array<std::string_view, kCount> n{
      "avg_line_length",    "max_line_length",   "avg_identifier_length",  "indentation_variance",
      "blank_line_ratio",   "comment_line_ratio", "branch_keyword_density", "paren_density"};
  return n;
}

std::array<double, ReadabilityFeatures::kCount> ReadabilityFeatures::values() const {
  return {avg_line_length,  max_line_length,    avg_identifier_length,  indentation_variance,
          blank_line_ratio, comment_line_ratio, branch_keyword_density, paren_density};
}

ReadabilityFeatures extract_readability_features(const MergedSnippet& snippet) {
  std::string_view src = snippet.source;
  if (src.empty()) throw InvalidArgument("empty snippet");
  const std::string_view marker = snippet.language == Language::Python ? "#" : "//";

  auto lines = source_lines(src);
  ReadabilityFeatures f;
  if (lines.empty()) return f;

  double total_chars = 0;
  std::size_t blanks = 0, comments = 0, branches = 0, parens = 0;
  std::vector<double> indents;
  std::size_t ident_count = 0, ident_chars = 0;

  for (auto line : lines) {
    double len = static_cast<double>(text::decode_utf8(line).size());
    total_chars += len;
    f.max_line_length = std::max(f.max_line_length, len);
    if (blank(line)) {
      ++blanks;
      continue;
    }
    double indent = 0;
    std::size_t p = 0;
    for (; p < line.size() && (line[p] == ' ' || line[p] == '\t'); ++p) indent += line[p] == '\t' ? 4 : 1;
    indents.push_back(indent);
    if (line.substr(p).starts_with(marker)) ++comments;

    for (std::size_t i = 0; i < line.size();) {
      char c = line[i];
      if (c == '(' || c == ')') ++parens;
      if (is_word(c)) {
        std::size_t j = i;
        while (j < line.size() && is_word(line[j])) ++j;
        if (is_letter(c)) {
          ++ident_count;
          ident_chars += j - i;
          if (kBranchKeywords.count(line.substr(i, j - i))) ++branches;
        }
        i = j;
      } else {
        ++i;
      }
    }
  }

  const double n = static_cast<double>(lines.size());
  f.avg_line_length = total_chars / n;
  f.avg_identifier_length = ident_count ? static_cast<double>(ident_chars) / static_cast<double>(ident_count) : 0.0;
  if (!indents.empty()) {
    double mean = 0;
    for (double d : indents) mean += d;
    mean /= static_cast<double>(indents.size());
    double var = 0;
    for (double d : indents) var += (d - mean) * (d - mean);
    f.indentation_variance = var / static_cast<double>(indents.size());
  }
  f.blank_line_ratio = static_cast<double>(blanks) / n;
  f.comment_line_ratio = static_cast<double>(comments) / n;
  f.branch_keyword_density = static_cast<double>(branches) / n;
  f.paren_density = total_chars > 0 ? static_cast<double>(parens) / total_chars : 0.0;
  return f;
}

ReadabilityWeights ReadabilityWeights::zeros() {
  ReadabilityWeights w;
  w.weights.assign(ReadabilityFeatures::kCount, 0.0);
  return w;
}

ReadabilityWeights ReadabilityWeights::defaults() {
  ReadabilityWeights w;
  w.bias = 2.0;
  w.weights = {-0.04, -0.01, -0.05, -0.02, 1.5, 1.0, -1.5, -8.0};
  return w;
}

ReadabilityWeights ReadabilityWeights::load(const std::string& path) {
  const auto& names = ReadabilityFeatures::names();
  std::vector<std::optional<double>> slots(names.size());
  ReadabilityWeights w;
  for (const auto& kv : read_tab_file(path)) {
    double value = text::parse_double(text::trim(kv.value));
    std::string key = text::trim(kv.key);
    if (key == "bias") {
      w.bias = value;
      continue;
    }
    auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end())
      throw FormatError(path + ":" + std::to_string(kv.line) + ": unknown readability feature '" + key + "'");
    slots[static_cast<std::size_t>(it - names.begin())] = value;
  }
  for (const auto& s : slots) {
    if (!s) break;
    w.weights.push_back(*s);
  }
  return w;
}

double code_readability(const ReadabilityFeatures& features, const ReadabilityWeights& weights) {
  if (weights.weights.size() != ReadabilityFeatures::kCount)
    throw InvalidArgument("readability weights have " + std::to_string(weights.weights.size()) +
                          " entries, features have " + std::to_string(ReadabilityFeatures::kCount));
  auto x = features.values();
  double z = weights.bias;
  for (std::size_t i = 0; i < x.size(); ++i) z += weights.weights[i] * x[i];
  return 1.0 / (1.0 + std::exp(-z));
}

double code_readability(const MergedSnippet& snippet, const ReadabilityWeights& weights) {
  return code_readability(extract_readability_features(snippet), weights);
}

}  // namespace qqual::codeparse
