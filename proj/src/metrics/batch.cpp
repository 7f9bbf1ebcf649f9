#include <omp.h>

#include "qqual/metrics.hpp"

namespace qqual::metrics {

namespace {

void finish(BatchResult& r, std::vector<std::vector<Diagnostic>>& per_question) {
  for (auto& d : per_question)
    for (auto& x : d) r.diagnostics.push_back(std::move(x));
  std::vector<double> raw;
  for (const auto& v : r.vectors)
    if (v.te_raw) raw.push_back(*v.te_raw);
  if (!raw.empty()) {
    r.te_range = fit_entropy_range(raw);
    apply_te_normalization(r.vectors, r.te_range);
  }
}

}  // namespace

void apply_te_normalization(std::span<MetricVector> vectors, const EntropyRange& range) {
  for (auto& v : vectors)
    if (v.te_raw) v.te = range.normalize(*v.te_raw);
}

BatchResult compute_batch(std::span<const corpus::Question> questions, const MetricContext& ctx) {
  BatchResult r;
  const auto n = static_cast<std::ptrdiff_t>(questions.size());
  r.vectors.resize(questions.size());
  std::vector<std::vector<Diagnostic>> diags(questions.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& q = questions[static_cast<std::size_t>(i)];
    auto content = corpus::extract_content(q);
    r.vectors[static_cast<std::size_t>(i)] = compute_vector(q, content, ctx, diags[static_cast<std::size_t>(i)]);
  }
  finish(r, diags);
  return r;
}

BatchResult compute_batch_serial(std::span<const corpus::Question> questions, const MetricContext& ctx) {
  BatchResult r;
  std::vector<std::vector<Diagnostic>> diags(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    auto content = corpus::extract_content(questions[i]);
    r.vectors.push_back(compute_vector(questions[i], content, ctx, diags[i]));
  }
  finish(r, diags);
  return r;
}

}  // namespace qqual::metrics
