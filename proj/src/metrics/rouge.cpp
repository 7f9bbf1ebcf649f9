#include <set>

#include "qqual/error.hpp"
#include "qqual/metrics.hpp"
#include "qqual/text.hpp"

namespace qqual::metrics {

double rouge1_recall(std::string_view reference, std::string_view system) {
  auto ref = text::alnum_tokens(reference);
  std::set<std::string> ref_set(ref.begin(), ref.end());
  if (ref_set.empty()) throw UndefinedMetricError("reference text has no tokens");
  auto sys = text::alnum_tokens(system);
  std::set<std::string> sys_set(sys.begin(), sys.end());
  std::size_t hit = 0;
  for (const auto& t : ref_set) hit += sys_set.count(t);
  return static_cast<double>(hit) / static_cast<double>(ref_set.size());
}

double title_quality(const corpus::Question& q, const corpus::QuestionContent& content) {
  if (text::trim(q.title).empty()) throw UndefinedMetricError("empty title");
  return rouge1_recall(q.title, content.body_prose);
}

std::optional<double> text_code_correlation(const corpus::QuestionContent& content) {
  if (!content.has_code() || content.prose.empty()) return std::nullopt;
  std::string code;
  for (const auto& b : content.code_blocks) {
    code += b;
    code += '\n';
  }
  if (text::alnum_tokens(code).empty()) throw UndefinedMetricError("code has no tokens");
  return rouge1_recall(code, content.prose);
}

}  // namespace qqual::metrics
