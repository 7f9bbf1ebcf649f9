#include "qqual/ml/evaluate.hpp"

#include "qqual/error.hpp"

namespace qqual::ml {

namespace {

ClassMetrics class_metrics(std::span<const QualityLabel> pred, std::span<const QualityLabel> truth, QualityLabel c,
                           std::vector<std::string>& warnings) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    bool p = pred[i] == c, t = truth[i] == c;
    if (p && t) ++tp;
    else if (p) ++fp;
    else if (t) ++fn;
  }
  ClassMetrics m;
  m.support = tp + fn;
  m.predicted = tp + fp;
  if (m.predicted == 0) {
    warnings.push_back("no row predicted as " + std::string(corpus::label_name(c)) + "; precision set to 0");
  } else {
    m.precision = static_cast<double>(tp) / static_cast<double>(m.predicted);
  }
  if (m.support > 0) m.recall = static_cast<double>(tp) / static_cast<double>(m.support);
  if (m.precision + m.recall > 0) m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace

Evaluation evaluate(std::span<const QualityLabel> predicted, std::span<const QualityLabel> truth) {
  if (predicted.size() != truth.size())
    throw InvalidArgument("evaluate: " + std::to_string(predicted.size()) + " predictions for " +
                          std::to_string(truth.size()) + " labels");
  if (truth.empty()) throw InvalidArgument("evaluate: no rows");
  Evaluation e;
  e.n = truth.size();
  e.promoted = class_metrics(predicted, truth, QualityLabel::Promoted, e.warnings);
  e.discouraged = class_metrics(predicted, truth, QualityLabel::Discouraged, e.warnings);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i];
  e.accuracy = static_cast<double>(correct) / static_cast<double>(e.n);
  return e;
}

}  // namespace qqual::ml
