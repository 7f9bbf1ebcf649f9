#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqual/corpus.hpp"

namespace qqual::codeparse {

using corpus::Language;

struct MergedSnippet {
  Language language = Language::Other;
  std::string source;
  std::size_t block_count = 0;
};

// Joins the blocks with single newlines after stripping each block's trailing
// newlines. Throws InvalidArgument when there is no block.
MergedSnippet merge_blocks(std::span<const std::string> blocks, Language language);
MergedSnippet merge_snippets(const corpus::QuestionContent& content, Language language);

struct SyntaxError {
  std::size_t line = 0;
  std::size_t col = 0;
  std::string message;
};

struct ParseVerdict {
  bool complete = false;
  std::vector<SyntaxError> errors;

  bool ok() const { return complete && errors.empty(); }
};

class ParserBackend {
 public:
  virtual ~ParserBackend() = default;
  virtual std::string_view name() const = 0;
  // Whether parse() may be called from several threads at once.
  virtual bool reentrant() const = 0;
  virtual ParseVerdict parse(std::string_view source) const = 0;
};

// Serializes calls into a backend that is not reentrant.
class SerializingBackend : public ParserBackend {
 public:
  explicit SerializingBackend(std::unique_ptr<ParserBackend> inner) : inner_(std::move(inner)) {}
  std::string_view name() const override { return inner_->name(); }
  bool reentrant() const override { return true; }
  ParseVerdict parse(std::string_view source) const override {
    std::lock_guard lock(mu_);
    return inner_->parse(source);
  }

 private:
  std::unique_ptr<ParserBackend> inner_;
  mutable std::mutex mu_;
};

// Builtin backend names: "java-rd", "csharp-rd", "javascript-rd", "python-rd".
std::vector<std::string> builtin_backend_names();
// Throws InvalidArgument for an unknown name.
std::unique_ptr<ParserBackend> make_builtin_backend(std::string_view name);

class BackendRegistry {
 public:
  // Non-reentrant backends are wrapped in a SerializingBackend.
  void register_backend(Language language, std::unique_ptr<ParserBackend> backend);
  bool has(Language language) const { return backends_.count(language) != 0; }
  // Throws InvalidArgument when no backend is registered for the language.
  const ParserBackend& backend(Language language) const;

  static BackendRegistry builtin();
  // language name -> backend name, e.g. {"java": "java-rd"}.
  static BackendRegistry from_config(const std::map<std::string, std::string>& assignment);

 private:
  std::map<Language, std::shared_ptr<ParserBackend>> backends_;
};

const BackendRegistry& default_registry();

enum class Parsability { Parsable, Unparsable };

Parsability check_parsable(const MergedSnippet& snippet, const BackendRegistry& registry = default_registry());
ParseVerdict parse_verdict(const MergedSnippet& snippet, const BackendRegistry& registry = default_registry());
// Percentage in [0, 100]. Throws InvalidArgument on an empty slice.
double parsability_rate(std::span<const Parsability> results);

struct ReadabilityFeatures {
  double avg_line_length = 0;
  double max_line_length = 0;
  double avg_identifier_length = 0;
  double indentation_variance = 0;
  double blank_line_ratio = 0;
  double comment_line_ratio = 0;
  double branch_keyword_density = 0;
  double paren_density = 0;

  static constexpr std::size_t kCount = 8;
  static const std::array<std::string_view, kCount>& names();
  std::array<double, kCount> values() const;
};

ReadabilityFeatures extract_readability_features(const MergedSnippet& snippet);

struct ReadabilityWeights {
  double bias = 0;
  std::vector<double> weights;  // in ReadabilityFeatures::names() order

  static ReadabilityWeights zeros();
  static ReadabilityWeights defaults();
  // "feature_name<TAB>weight" lines plus an optional "bias" line. Unknown names are a
  // FormatError; a missing feature leaves the vector short, which scoring rejects.
  static ReadabilityWeights load(const std::string& path);
};

// logistic(bias + w . features). Throws InvalidArgument on a dimension mismatch.
double code_readability(const ReadabilityFeatures& features, const ReadabilityWeights& weights);
double code_readability(const MergedSnippet& snippet, const ReadabilityWeights& weights);

// Occurrences of identifier '.' identifier '(' (qualified invocations only).
std::size_t count_api_calls(std::string_view source);
inline std::size_t count_api_calls(const MergedSnippet& snippet) { return count_api_calls(snippet.source); }

}  // namespace qqual::codeparse
