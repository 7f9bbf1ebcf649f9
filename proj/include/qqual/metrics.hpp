#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqual/codeparse.hpp"
#include "qqual/corpus.hpp"

namespace qqual::metrics {

// Fraction of distinct reference unigrams found in the system text. Tokens are
// lowercased ASCII alphanumeric runs. Throws UndefinedMetricError for an empty reference.
double rouge1_recall(std::string_view reference, std::string_view system);

// ROUGE-1 recall of the title against the body prose.
double title_quality(const corpus::Question& q, const corpus::QuestionContent& content);

inline constexpr double kRixMax = 10.0;
inline constexpr std::size_t kLongWord = 7;

struct RixCounts {
  std::size_t long_words = 0;
  std::size_t sentences = 1;
  double raw() const { return static_cast<double>(long_words) / static_cast<double>(sentences); }
};

RixCounts rix_counts(std::string_view text);
// 100 * min(raw, kRixMax) / kRixMax. Throws UndefinedMetricError for empty text.
double text_readability(std::string_view text);
double text_readability(const corpus::QuestionContent& content);

// code_length / prose_length; nullopt without code.
std::optional<double> text_code_ratio(const corpus::QuestionContent& content);

enum class TcrCategory { AtMostOne, AboveOne };
TcrCategory tcr_category(double ratio);
std::string_view tcr_category_name(TcrCategory c);

// ROUGE-1 recall with the joined code blocks as reference and the prose as system;
// nullopt without code or without prose.
std::optional<double> text_code_correlation(const corpus::QuestionContent& content);

// -(1/n) sum P_k ln P_k. Throws InvalidArgument for an empty list or an unknown tag.
double topic_entropy_raw(std::span<const std::string> tags, const corpus::TagFrequencyTable& table);

struct EntropyRange {
  double min = 0;
  double max = 0;
  // (raw - min) / (max - min), 0 when the range is degenerate. Not clamped, so a raw
  // value outside the fitted batch maps outside [0, 1].
  double normalize(double raw) const;
};
EntropyRange fit_entropy_range(std::span<const double> raw);

// Base-2 Shannon entropy of the code point distribution divided by the code point count.
double metric_entropy(std::string_view text);

enum class Sentiment { Positive, Negative, Mixed, Neutral };
std::string_view sentiment_name(Sentiment s);
Sentiment parse_sentiment(std::string_view name);

class SentimentLexicon {
 public:
  // Strength must be in [-5,-2] or [2,5].
  void add(const std::string& term, int strength);
  std::optional<int> strength(const std::string& lowercase_term) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // "term<TAB>strength" lines, '#' comments.
  static SentimentLexicon load(const std::string& path);

 private:
  std::map<std::string, int, std::less<>> entries_;
};

struct SentimentStrength {
  int positive = 1;  // 1..5
  int negative = 1;  // 1..5, magnitude of the strongest negative term
  Sentiment category = Sentiment::Neutral;
};

SentimentStrength sentiment_strength(std::string_view text, const SentimentLexicon& lexicon);
Sentiment sentiment_polarity(std::string_view text, const SentimentLexicon& lexicon);

struct MetricVector {
  std::int64_t id = 0;
  corpus::Language language = corpus::Language::Other;
  corpus::QualityLabel label = corpus::QualityLabel::Promoted;
  bool has_code = false;

  std::optional<double> tq;
  std::optional<double> tr;
  std::optional<double> cr;
  std::optional<double> tcr;
  std::optional<double> tcc;
  std::optional<codeparse::Parsability> cruse;
  std::optional<std::int64_t> cua;
  std::optional<double> te;      // batch-normalized
  std::optional<double> te_raw;  // nats
  std::optional<double> me;
  std::optional<Sentiment> sp;
  int sp_positive = 1;
  int sp_negative = 1;

  bool operator==(const MetricVector&) const = default;
};

struct Diagnostic {
  std::int64_t id = 0;
  std::string field;
  std::string message;
  bool operator==(const Diagnostic&) const = default;
};

struct MetricContext {
  const corpus::TagFrequencyTable& tags;
  const SentimentLexicon& lexicon;
  const codeparse::ReadabilityWeights& weights;
  const codeparse::BackendRegistry& parsers = codeparse::default_registry();
};

// Fills every field it can; a failing component leaves its field empty and appends a
// Diagnostic. te is left empty until the batch normalization pass.
MetricVector compute_vector(const corpus::Question& q, const corpus::QuestionContent& content,
                            const MetricContext& ctx, std::vector<Diagnostic>& diagnostics);

struct BatchResult {
  std::vector<MetricVector> vectors;
  std::vector<Diagnostic> diagnostics;  // ordered by question position, then field
  EntropyRange te_range;
};

void apply_te_normalization(std::span<MetricVector> vectors, const EntropyRange& range);

// Per-question fan-out with OpenMP followed by the topic-entropy min-max reduction.
BatchResult compute_batch(std::span<const corpus::Question> questions, const MetricContext& ctx);
// Single-threaded reference with identical output.
BatchResult compute_batch_serial(std::span<const corpus::Question> questions, const MetricContext& ctx);

// Metric names used in tables and comparisons, in output order.
const std::vector<std::string>& metric_names();
// Numeric value of a named metric (cruse as 1/0, sp as net strength P - N).
std::optional<double> metric_value(const MetricVector& v, std::string_view name);

// id,language,label,has_code,tq,tr,cr,tcr,tcc,cruse,cua,te,te_raw,me,sp,sp_pos,sp_neg
// with N/A as an empty cell.
void write_metric_table(const std::string& path, std::span<const MetricVector> vectors);
std::vector<MetricVector> read_metric_table(const std::string& path);
void write_diagnostics(const std::string& path, std::span<const Diagnostic> diagnostics);
// Two rows: te_min and te_max.
void write_metrics_meta(const std::string& path, const EntropyRange& range);
EntropyRange read_metrics_meta(const std::string& path);

}  // namespace qqual::metrics
