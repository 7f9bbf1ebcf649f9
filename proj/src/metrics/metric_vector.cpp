#include "qqual/error.hpp"
#include "qqual/metrics.hpp"

namespace qqual::metrics {

namespace {

template <typename F>
auto guarded(std::int64_t id, const char* field, std::vector<Diagnostic>& diags, F&& f)
    -> std::optional<std::decay_t<decltype(*std::optional(f()))>> {
  try {
    return f();
  } catch (const Error& e) {
    diags.push_back({id, field, e.what()});
    return std::nullopt;
  }
}

}  // namespace

MetricVector compute_vector(const corpus::Question& q, const corpus::QuestionContent& content,
                            const MetricContext& ctx, std::vector<Diagnostic>& diags) {
  MetricVector v;
  v.id = q.id;
  v.language = q.language;
  v.label = corpus::label(q);
  v.has_code = content.has_code();

  v.tq = guarded(q.id, "tq", diags, [&] { return title_quality(q, content); });
  v.tr = guarded(q.id, "tr", diags, [&] { return text_readability(content); });
  v.te_raw = guarded(q.id, "te", diags, [&] { return topic_entropy_raw(q.tags, ctx.tags); });
  v.me = guarded(q.id, "me", diags, [&] { return metric_entropy(content.prose); });
  auto strength = guarded(q.id, "sp", diags, [&] { return sentiment_strength(content.prose, ctx.lexicon); });
  if (strength) {
    v.sp = strength->category;
    v.sp_positive = strength->positive;
    v.sp_negative = strength->negative;
  }

  if (content.has_code()) {
    auto tcr = guarded(q.id, "tcr", diags, [&] { return text_code_ratio(content); });
    if (tcr) v.tcr = *tcr;
    auto tcc = guarded(q.id, "tcc", diags, [&] { return text_code_correlation(content); });
    if (tcc) v.tcc = *tcc;
    auto snippet = codeparse::merge_snippets(content, q.language);
    v.cr = guarded(q.id, "cr", diags, [&] { return codeparse::code_readability(snippet, ctx.weights); });
    v.cruse = guarded(q.id, "cruse", diags, [&] { return codeparse::check_parsable(snippet, ctx.parsers); });
    v.cua = static_cast<std::int64_t>(codeparse::count_api_calls(snippet));
  }
  return v;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"tq", "tr", "cr", "tcr", "tcc", "cruse", "cua", "te", "me", "sp"};
  return names;
}

std::optional<double> metric_value(const MetricVector& v, std::string_view name) {
  if (name == "tq") return v.tq;
  if (name == "tr") return v.tr;
  if (name == "cr") return v.cr;
  if (name == "tcr") return v.tcr;
  if (name == "tcc") return v.tcc;
  if (name == "cruse") {
    if (!v.cruse) return std::nullopt;
    return *v.cruse == codeparse::Parsability::Parsable ? 1.0 : 0.0;
  }
  if (name == "cua") {
    if (!v.cua) return std::nullopt;
    return static_cast<double>(*v.cua);
  }
  if (name == "te") return v.te;
  if (name == "te_raw") return v.te_raw;
  if (name == "me") return v.me;
  if (name == "sp") {
    if (!v.sp) return std::nullopt;
    return static_cast<double>(v.sp_positive - v.sp_negative);
  }
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

}  // namespace qqual::metrics
