#include <algorithm>
#include <cstdlib>

#include "qqual/error.hpp"
#include "qqual/kv_file.hpp"
#include "qqual/metrics.hpp"
#include "qqual/text.hpp"

namespace qqual::metrics {

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::Positive:
      return "positive";
    case Sentiment::Negative:
      return "negative";
    case Sentiment::Mixed:
      return "mixed";
    case Sentiment::Neutral:
      return "neutral";
  }
  return "neutral";
}

Sentiment parse_sentiment(std::string_view name) {
  for (auto s : {Sentiment::Positive, Sentiment::Negative, Sentiment::Mixed, Sentiment::Neutral})
    if (sentiment_name(s) == name) return s;
  throw InvalidArgument("unknown sentiment '" + std::string(name) + "'");
}

void SentimentLexicon::add(const std::string& term, int strength) {
  if (std::abs(strength) < 2 || std::abs(strength) > 5)
    throw InvalidArgument("sentiment strength for '" + term + "' must be in [-5,-2] or [2,5]");
  auto key = text::to_lower_ascii(term);
  if (key.empty()) throw InvalidArgument("empty sentiment term");
  entries_[key] = strength;
}

std::optional<int> SentimentLexicon::strength(const std::string& lowercase_term) const {
  auto it = entries_.find(lowercase_term);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

SentimentLexicon SentimentLexicon::load(const std::string& path) {
  SentimentLexicon lex;
  for (const auto& kv : read_tab_file(path)) {
    int s;
    try {
      s = static_cast<int>(text::parse_int(text::trim(kv.value)));
      lex.add(text::trim(kv.key), s);
    } catch (const Error& e) {
      throw FormatError(path + ":" + std::to_string(kv.line) + ": " + e.what());
    }
  }
  if (lex.empty()) throw FormatError(path + ": sentiment lexicon is empty");
  return lex;
}

SentimentStrength sentiment_strength(std::string_view text, const SentimentLexicon& lexicon) {
  SentimentStrength r;
  for (const auto& tok : text::alnum_tokens(text)) {
    auto s = lexicon.strength(tok);
    if (!s) continue;
    if (*s > 0) r.positive = std::max(r.positive, *s);
    if (*s < 0) r.negative = std::max(r.negative, -*s);
  }
  bool pos = r.positive >= 2, neg = r.negative >= 2;
  r.category = pos && neg ? Sentiment::Mixed : pos ? Sentiment::Positive : neg ? Sentiment::Negative : Sentiment::Neutral;
  return r;
}

Sentiment sentiment_polarity(std::string_view text, const SentimentLexicon& lexicon) {
  if (lexicon.empty()) throw InvalidArgument("empty sentiment lexicon");
  return sentiment_strength(text, lexicon).category;
}

}  // namespace qqual::metrics
