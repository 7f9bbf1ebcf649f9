#include <set>

#include "qqual/error.hpp"
#include "qqual/ml/harness.hpp"
#include "qqual/random.hpp"

namespace qqual::ml {

Grid default_grid(ModelKind k) {
  switch (k) {
    case ModelKind::DecisionTree:
      return {{"max_depth", {4, 8, 16, 0}}, {"min_samples_split", {2, 10}}};
    case ModelKind::RandomForest:
      return {{"n_trees", {50, 100}}, {"max_depth", {8, 0}}};
    case ModelKind::KNearest:
      return {{"k", {3, 5, 11, 21}}};
    case ModelKind::GaussianNB:
      return {{"var_smoothing", {1e-9, 1e-6}}};
    case ModelKind::NeuralNet:
      return {{"hidden", {8, 16, 32}}, {"learning_rate", {0.01, 0.001}}, {"epochs", {200}}};
  }
  return {};
}

std::vector<Hyperparams> expand_grid(ModelKind k, const Grid& grid) {
  if (grid.empty()) throw InvalidArgument("empty hyperparameter grid");
  std::set<std::string> seen;
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw InvalidArgument("hyperparameter '" + name + "' has no values");
    if (!seen.insert(name).second) throw InvalidArgument("hyperparameter '" + name + "' appears twice in the grid");
  }
  std::vector<Hyperparams> out{{}};
  for (const auto& [name, values] : grid) {
    std::vector<Hyperparams> next;
    for (const auto& partial : out)
      for (double v : values) {
        Hyperparams h = partial;
        h[name] = v;
        next.push_back(std::move(h));
      }
    out = std::move(next);
  }
  for (const auto& h : out) check_hyperparams(k, h);
  return out;
}

GridResult grid_search(ModelKind kind, const Grid& grid, const Dataset& data, std::size_t k, std::uint64_t seed) {
  auto combos = expand_grid(kind, grid);
  GridResult result;
  for (std::size_t g = 0; g < combos.size(); ++g) {
    ModelSpec spec{kind, combos[g], derive_seed(seed, g)};
    EvalReport report = cross_validate(spec, data, k, seed);
    result.points.push_back({combos[g], report.overall.accuracy});
    if (g == 0 || report.overall.accuracy > result.best_accuracy) {
      result.best = spec;
      result.best_accuracy = report.overall.accuracy;
    }
  }
  return result;
}

}  // namespace qqual::ml
