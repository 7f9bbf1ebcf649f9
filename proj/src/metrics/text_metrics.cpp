#include <cmath>
#include <map>

#include "qqual/error.hpp"
#include "qqual/metrics.hpp"
#include "qqual/text.hpp"

namespace qqual::metrics {

namespace {

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

RixCounts rix_counts(std::string_view s) {
  RixCounts r;
  std::size_t sentences = 0;
  bool segment_has_word = false;
  auto close_segment = [&] {
    if (segment_has_word) ++sentences;
    segment_has_word = false;
  };
  for (std::size_t i = 0; i < s.size();) {
    char c = s[i];
    if (is_alnum(c)) {
      std::size_t j = i;
      while (j < s.size() && is_alnum(s[j])) ++j;
      if (j - i >= kLongWord) ++r.long_words;
      segment_has_word = true;
      i = j;
      continue;
    }
    if (is_terminator(c)) {
      char next = i + 1 < s.size() ? s[i + 1] : ' ';
      if (is_space(next) || is_terminator(next)) close_segment();
    } else if (c == '\n') {
      // a blank line ends a sentence
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '\n' && is_space(s[j])) ++j;
      if (j < s.size() && s[j] == '\n') close_segment();
    }
    ++i;
  }
  close_segment();
  r.sentences = sentences == 0 ? 1 : sentences;
  return r;
}

double text_readability(std::string_view text) {
  if (text::trim(text).empty()) throw UndefinedMetricError("empty prose");
  double raw = rix_counts(text).raw();
  return 100.0 * std::min(raw, kRixMax) / kRixMax;
}

double text_readability(const corpus::QuestionContent& content) { return text_readability(content.prose); }

std::optional<double> text_code_ratio(const corpus::QuestionContent& content) {
  if (!content.has_code()) return std::nullopt;
  if (content.prose_length == 0) throw UndefinedMetricError("code present but prose is empty");
  return static_cast<double>(content.code_length) / static_cast<double>(content.prose_length);
}

TcrCategory tcr_category(double ratio) { return ratio <= 1.0 ? TcrCategory::AtMostOne : TcrCategory::AboveOne; }

std::string_view tcr_category_name(TcrCategory c) {
  return c == TcrCategory::AtMostOne ? "ratio<=1" : "ratio>1";
}

double topic_entropy_raw(std::span<const std::string> tags, const corpus::TagFrequencyTable& table) {
  if (tags.empty()) throw InvalidArgument("question has no tags");
  double sum = 0;
  for (const auto& t : tags) {
    double p = table.probability(t);
    if (p > 0) sum += p * std::log(p);
  }
  return -sum / static_cast<double>(tags.size());
}

double EntropyRange::normalize(double raw) const {
  if (!(max > min)) return 0.0;
  return (raw - min) / (max - min);
}

EntropyRange fit_entropy_range(std::span<const double> raw) {
  if (raw.empty()) throw InvalidArgument("cannot fit an entropy range on an empty batch");
  EntropyRange r{raw[0], raw[0]};
  for (double v : raw) {
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
  return r;
}

double metric_entropy(std::string_view s) {
  auto cps = text::decode_utf8(s);
  if (cps.empty()) throw UndefinedMetricError("empty text");
  std::map<char32_t, std::size_t> freq;
  for (char32_t c : cps) ++freq[c];
  const double n = static_cast<double>(cps.size());
  double h = 0;
  for (const auto& [c, k] : freq) {
    double p = static_cast<double>(k) / n;
    h -= p * std::log2(p);
  }
  return h / n;
}

}  // namespace qqual::metrics
