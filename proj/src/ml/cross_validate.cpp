#include <exception>
#include <fstream>

#include "qqual/error.hpp"
#include "qqual/csv.hpp"
#include "qqual/ml/harness.hpp"
#include "qqual/random.hpp"
#include "qqual/text.hpp"

namespace qqual::ml {

std::vector<std::size_t> stratified_folds(std::span<const QualityLabel> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  std::vector<std::size_t> fold(labels.size());
  Rng rng(seed);
  std::size_t next = 0;
  for (std::size_t c = 0; c < kClasses; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (class_index(labels[i]) == c) members.push_back(i);
    if (members.size() < k)
      throw InvalidArgument("class " + std::string(corpus::label_name(class_label(c))) + " has " +
                            std::to_string(members.size()) + " rows, fewer than the " + std::to_string(k) + " folds");
    shuffle(std::span(members), rng);
    for (auto i : members) {
      fold[i] = next;
      next = (next + 1) % k;
    }
  }
  return fold;
}

namespace {

struct FoldOutcome {
  std::vector<std::size_t> test;
  std::vector<QualityLabel> predicted;
  Evaluation eval;
};

FoldOutcome run_fold(const ModelSpec& spec, const Dataset& data, std::span<const std::size_t> folds, std::size_t f) {
  std::vector<std::size_t> train, test;
  for (std::size_t i = 0; i < folds.size(); ++i) (folds[i] == f ? test : train).push_back(i);
  ModelSpec fold_spec = spec;
  fold_spec.seed = derive_seed(spec.seed, f);
  TrainedModel model = TrainedModel::train(fold_spec, data.subset(train));
  FoldOutcome out;
  std::vector<QualityLabel> truth;
  for (auto i : test) {
    out.predicted.push_back(model.predict(data.x[i]).label);
    truth.push_back(data.y[i]);
  }
  out.eval = evaluate(out.predicted, truth);
  out.test = std::move(test);
  return out;
}

EvalReport assemble(const ModelSpec& spec, const Dataset& data, std::vector<FoldOutcome>& outcomes) {
  EvalReport r;
  r.model = std::string(model_name(spec.kind));
  r.hyperparams = spec.describe();
  r.predictions.assign(data.rows(), QualityLabel::Promoted);
  for (auto& o : outcomes) {
    for (std::size_t t = 0; t < o.test.size(); ++t) r.predictions[o.test[t]] = o.predicted[t];
    r.folds.push_back(std::move(o.eval));
  }
  r.overall = evaluate(r.predictions, data.y);
  return r;
}

}  // namespace

EvalReport cross_validate(const ModelSpec& spec, const Dataset& data, std::size_t k, std::uint64_t seed) {
  data.validate();
  auto folds = stratified_folds(data.y, k, seed);
  std::vector<FoldOutcome> outcomes(k);
  std::vector<std::exception_ptr> errors(k);
  const std::ptrdiff_t nk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t f = 0; f < nk; ++f) {
    try {
      outcomes[f] = run_fold(spec, data, folds, static_cast<std::size_t>(f));
    } catch (...) {
      errors[f] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return assemble(spec, data, outcomes);
}

EvalReport cross_validate_serial(const ModelSpec& spec, const Dataset& data, std::size_t k, std::uint64_t seed) {
  data.validate();
  auto folds = stratified_folds(data.y, k, seed);
  std::vector<FoldOutcome> outcomes;
  for (std::size_t f = 0; f < k; ++f) outcomes.push_back(run_fold(spec, data, folds, f));
  return assemble(spec, data, outcomes);
}

const std::vector<std::string>& eval_header() {
  static const std::vector<std::string> h{"model",
                                          "feature_set",
                                          "variant",
                                          "hyperparams",
                                          "promoted_precision",
                                          "promoted_recall",
                                          "promoted_f1",
                                          "discouraged_precision",
                                          "discouraged_recall",
                                          "discouraged_f1",
                                          "accuracy",
                                          "averaging"};
  return h;
}

void write_eval_reports(const std::string& path, std::span<const EvalReport> reports) {
  csv::Table t;
  t.header = eval_header();
  for (const auto& r : reports) {
    const auto& e = r.overall;
    t.rows.push_back({r.model, r.feature_set, r.variant, r.hyperparams, text::format_double(e.promoted.precision),
                      text::format_double(e.promoted.recall), text::format_double(e.promoted.f1),
                      text::format_double(e.discouraged.precision), text::format_double(e.discouraged.recall),
                      text::format_double(e.discouraged.f1), text::format_double(e.accuracy), "micro"});
  }
  csv::write_file(path, t);
}

}  // namespace qqual::ml
