#include <cmath>

#include "common.hpp"
#include "qqual/ml/model.hpp"
#include "qqual/text.hpp"

namespace qqual::ml {

std::string_view model_name(ModelKind k) {
  switch (k) {
    case ModelKind::DecisionTree:
      return "decision_tree";
    case ModelKind::RandomForest:
      return "random_forest";
    case ModelKind::KNearest:
      return "knn";
    case ModelKind::GaussianNB:
      return "gaussian_nb";
    case ModelKind::NeuralNet:
      return "neural_net";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  for (auto k : kAllModels)
    if (model_name(k) == name) return k;
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected decision_tree, random_forest, knn, gaussian_nb or neural_net)");
}

bool standardizes(ModelKind k) { return k == ModelKind::KNearest || k == ModelKind::NeuralNet; }

Hyperparams default_hyperparams(ModelKind k) {
  switch (k) {
    case ModelKind::DecisionTree:
      return {{"max_depth", 0}, {"min_samples_split", 2}};
    case ModelKind::RandomForest:
      return {{"n_trees", 100}, {"max_depth", 0}};
    case ModelKind::KNearest:
      return {{"k", 5}};
    case ModelKind::GaussianNB:
      return {{"var_smoothing", 1e-9}};
    case ModelKind::NeuralNet:
      return {{"hidden", 16}, {"learning_rate", 0.01}, {"epochs", 200}, {"batch_size", 32}};
  }
  return {};
}

namespace {

struct Bound {
  double min;
  bool integer;
  bool exclusive_min = false;
};

Bound bound_of(std::string_view name) {
  if (name == "max_depth") return {0, true};
  if (name == "min_samples_split") return {2, true};
  if (name == "n_trees" || name == "k" || name == "hidden" || name == "epochs" || name == "batch_size") return {1, true};
  if (name == "var_smoothing") return {0, false};
  return {0, false, true};  // learning_rate
}

}  // namespace

void check_hyperparams(ModelKind k, const Hyperparams& h) {
  auto known = default_hyperparams(k);
  for (const auto& [name, value] : h) {
    if (!known.count(name))
      throw InvalidArgument("unknown hyperparameter '" + name + "' for " + std::string(model_name(k)));
    Bound b = bound_of(name);
    bool ok = std::isfinite(value) && (b.exclusive_min ? value > b.min : value >= b.min);
    if (ok && b.integer) ok = value == std::floor(value) && value < 1e9;
    if (!ok)
      throw InvalidArgument("hyperparameter " + name + "=" + text::format_double(value) + " is out of bounds for " +
                            std::string(model_name(k)));
  }
}

Hyperparams parse_hyperparams(std::string_view s) {
  Hyperparams h;
  for (const auto& part : text::split(s, ';')) {
    std::string item = text::trim(part);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("hyperparameter '" + item + "' is not name=value");
    std::string name = text::trim(item.substr(0, eq));
    std::string value = text::trim(item.substr(eq + 1));
    double v = value == "unlimited" ? 0.0 : text::parse_double(value);
    if (!h.emplace(name, v).second) throw InvalidArgument("hyperparameter '" + name + "' given twice");
  }
  return h;
}

std::string format_hyperparams(const Hyperparams& h) {
  std::string out;
  for (const auto& [name, value] : h) {
    if (!out.empty()) out += ';';
    out += name + "=" + text::format_double(value);
  }
  return out;
}

ModelSpec ModelSpec::with_defaults(ModelKind k, std::uint64_t seed) { return {k, default_hyperparams(k), seed}; }

std::string ModelSpec::describe() const { return format_hyperparams(hyperparams); }

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec) {
  check_hyperparams(spec.kind, spec.hyperparams);
  Hyperparams h = default_hyperparams(spec.kind);
  for (const auto& [k, v] : spec.hyperparams) h[k] = v;
  auto i = [&](const char* name) { return static_cast<int>(h.at(name)); };
  switch (spec.kind) {
    case ModelKind::DecisionTree:
      return std::make_unique<DecisionTree>(i("max_depth"), i("min_samples_split"), 0, spec.seed);
    case ModelKind::RandomForest:
      return std::make_unique<RandomForest>(i("n_trees"), i("max_depth"), spec.seed);
    case ModelKind::KNearest:
      return std::make_unique<KNearest>(i("k"));
    case ModelKind::GaussianNB:
      return std::make_unique<GaussianNB>(h.at("var_smoothing"));
    case ModelKind::NeuralNet:
      return std::make_unique<NeuralNet>(i("hidden"), h.at("learning_rate"), i("epochs"), i("batch_size"), spec.seed);
  }
  throw InvalidArgument("unknown model kind");
}

TrainedModel TrainedModel::train(const ModelSpec& spec, const Dataset& data) {
  data.validate();
  if (data.count(QualityLabel::Promoted) == 0 || data.count(QualityLabel::Discouraged) == 0)
    throw InvalidArgument("training set holds a single class");
  TrainedModel m;
  m.spec_ = spec;
  m.features_ = data.feature_names;
  m.classifier_ = make_classifier(spec);
  if (standardizes(spec.kind)) {
    m.standardizer_ = Standardizer::fit(data.x);
    m.classifier_->fit(m.standardizer_->apply(data.x), data.y);
  } else {
    m.classifier_->fit(data.x, data.y);
  }
  return m;
}

Prediction TrainedModel::predict(std::span<const double> row) const {
  if (!classifier_) throw InvalidArgument("model is not trained");
  detail::check_dimension(row, features_.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!std::isfinite(row[j])) throw InvalidArgument("non-finite value for feature " + features_[j]);
  Prediction p;
  p.scores = standardizer_ ? classifier_->scores(standardizer_->apply(row)) : classifier_->scores(row);
  p.label = argmax_label(p.scores);
  return p;
}

std::vector<QualityLabel> TrainedModel::predict_all(const Matrix& rows) const {
  std::vector<QualityLabel> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(predict(r).label);
  return out;
}

}  // namespace qqual::ml
