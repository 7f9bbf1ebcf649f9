#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qqual/ml/classifiers.hpp"
#include "qqual/ml/dataset.hpp"

namespace qqual::ml {

enum class ModelKind { DecisionTree, RandomForest, KNearest, GaussianNB, NeuralNet };

inline constexpr ModelKind kAllModels[] = {ModelKind::DecisionTree, ModelKind::RandomForest, ModelKind::KNearest,
                                           ModelKind::GaussianNB, ModelKind::NeuralNet};

std::string_view model_name(ModelKind k);  // decision_tree, random_forest, knn, gaussian_nb, neural_net
ModelKind parse_model(std::string_view name);
// KNearest and NeuralNet standardize their inputs.
bool standardizes(ModelKind k);

using Hyperparams = std::map<std::string, double>;

// decision_tree: max_depth (0 = unlimited), min_samples_split
// random_forest: n_trees, max_depth (0 = unlimited)
// knn: k
// gaussian_nb: var_smoothing
// neural_net: hidden, learning_rate, epochs, batch_size
Hyperparams default_hyperparams(ModelKind k);
// Throws InvalidArgument for unknown names or values outside their bounds.
void check_hyperparams(ModelKind k, const Hyperparams& h);
// Parses the describe() form; an empty string gives an empty map.
Hyperparams parse_hyperparams(std::string_view s);
std::string format_hyperparams(const Hyperparams& h);

struct ModelSpec {
  ModelKind kind = ModelKind::DecisionTree;
  Hyperparams hyperparams;
  std::uint64_t seed = 0;

  static ModelSpec with_defaults(ModelKind k, std::uint64_t seed);
  // "max_depth=8;min_samples_split=2", in name order
  std::string describe() const;
};

std::unique_ptr<Classifier> make_classifier(const ModelSpec& spec);

struct Prediction {
  QualityLabel label = QualityLabel::Promoted;
  Scores scores{0, 0};
};

class TrainedModel {
 public:
  TrainedModel() = default;

  // Throws InvalidArgument for a single-class or non-finite training set.
  static TrainedModel train(const ModelSpec& spec, const Dataset& data);

  Prediction predict(std::span<const double> row) const;
  std::vector<QualityLabel> predict_all(const Matrix& rows) const;

  const ModelSpec& spec() const { return spec_; }
  const std::vector<std::string>& feature_names() const { return features_; }
  const std::optional<Standardizer>& standardizer() const { return standardizer_; }
  const Classifier& classifier() const { return *classifier_; }

  // Versioned text format, see model_io.cpp.
  void save(const std::string& path) const;
  static TrainedModel load(const std::string& path);
  void write(std::ostream& out) const;
  static TrainedModel read(std::istream& in);

 private:
  ModelSpec spec_;
  std::vector<std::string> features_;
  std::optional<Standardizer> standardizer_;
  std::shared_ptr<Classifier> classifier_;
};

}  // namespace qqual::ml
