#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qqual/ml/dataset.hpp"
#include "qqual/random.hpp"

namespace qqual::ml {

using Matrix = std::vector<std::vector<double>>;
using Scores = std::array<double, kClasses>;  // indexed by class_index

// argmax with Promoted winning exact ties.
QualityLabel argmax_label(const Scores& s);

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // population sd, 1 for constant columns

  static Standardizer fit(const Matrix& x);
  std::vector<double> apply(std::span<const double> row) const;
  Matrix apply(const Matrix& x) const;
};

class Classifier {
 public:
  virtual ~Classifier() = default;
  // Throws InvalidArgument when the labels hold a single class.
  virtual void fit(const Matrix& x, std::span<const QualityLabel> y) = 0;
  virtual Scores scores(std::span<const double> row) const = 0;
  virtual void save(std::ostream& out) const = 0;
  virtual void load(std::istream& in) = 0;

  QualityLabel predict(std::span<const double> row) const { return argmax_label(scores(row)); }
};

class DecisionTree : public Classifier {
 public:
  struct Node {
    int feature = -1;  // -1 for a leaf
    double threshold = 0;
    int left = -1;   // value <= threshold
    int right = -1;  // value > threshold
    Scores dist{0, 0};
  };

  // max_depth 0 means unlimited; max_features 0 means every feature at every split.
  DecisionTree(int max_depth = 0, int min_samples_split = 2, int max_features = 0, std::uint64_t seed = 0)
      : max_depth_(max_depth), min_samples_split_(min_samples_split), max_features_(max_features), seed_(seed) {}

  void fit(const Matrix& x, std::span<const QualityLabel> y) override;
  // Fit on a multiset of row indices (bootstrap samples). A single-class sample gives a
  // one-leaf tree.
  void fit_indices(const Matrix& x, std::span<const QualityLabel> y, std::vector<std::size_t> rows);
  Scores scores(std::span<const double> row) const override;
  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

  const std::vector<Node>& nodes() const { return nodes_; }
  int depth() const;

 private:
  int build(const Matrix& x, std::span<const QualityLabel> y, std::vector<std::size_t>& rows, std::size_t lo,
            std::size_t hi, int depth, Rng& rng);

  int max_depth_;
  int min_samples_split_;
  int max_features_;
  std::uint64_t seed_;
  std::vector<Node> nodes_;
};

class RandomForest : public Classifier {
 public:
  RandomForest(int n_trees = 100, int max_depth = 0, std::uint64_t seed = 0)
      : n_trees_(n_trees), max_depth_(max_depth), seed_(seed) {}

  void fit(const Matrix& x, std::span<const QualityLabel> y) override;
  // Fraction of tree votes per class.
  Scores scores(std::span<const double> row) const override;
  std::vector<QualityLabel> tree_votes(std::span<const double> row) const;
  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

  std::size_t size() const { return trees_.size(); }

 private:
  int n_trees_;
  int max_depth_;
  std::uint64_t seed_;
  std::vector<DecisionTree> trees_;
};

class KNearest : public Classifier {
 public:
  explicit KNearest(int k = 5) : k_(k) {}

  void fit(const Matrix& x, std::span<const QualityLabel> y) override;
  // Vote fractions over the k nearest rows plus every row tied with the k-th distance.
  Scores scores(std::span<const double> row) const override;
  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

  // Squared Euclidean distances from `row` to every training row.
  std::vector<double> distances(std::span<const double> row) const;
  std::vector<double> distances_serial(std::span<const double> row) const;

 private:
  int k_;
  Matrix x_;
  std::vector<QualityLabel> y_;
};

class GaussianNB : public Classifier {
 public:
  explicit GaussianNB(double var_smoothing = 1e-9) : var_smoothing_(var_smoothing) {}

  // Per-class priors, means and population variances; every variance is increased by
  // var_smoothing times the largest per-feature variance of the whole training set
  // (times 1 when that largest variance is 0).
  void fit(const Matrix& x, std::span<const QualityLabel> y) override;
  // Posterior probabilities.
  Scores scores(std::span<const double> row) const override;
  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

  double epsilon() const { return epsilon_; }

 private:
  double var_smoothing_;
  double epsilon_ = 0;
  std::array<double, kClasses> log_prior_{};
  std::array<std::vector<double>, kClasses> mean_;
  std::array<std::vector<double>, kClasses> var_;
};

// One sigmoid hidden layer, softmax output, cross-entropy loss, mini-batch SGD.
class NeuralNet : public Classifier {
 public:
  struct Params {
    std::size_t inputs = 0;
    std::size_t hidden = 0;
    std::vector<double> w1;  // hidden x inputs, row-major
    std::vector<double> b1;  // hidden
    std::vector<double> w2;  // kClasses x hidden
    std::vector<double> b2;  // kClasses

    std::vector<double> flatten() const;
    void unflatten(std::span<const double> flat);
  };

  NeuralNet(int hidden = 16, double learning_rate = 0.01, int epochs = 200, int batch_size = 32, std::uint64_t seed = 0)
      : hidden_(hidden), learning_rate_(learning_rate), epochs_(epochs), batch_size_(batch_size), seed_(seed) {}

  void fit(const Matrix& x, std::span<const QualityLabel> y) override;
  Scores scores(std::span<const double> row) const override;
  void save(std::ostream& out) const override;
  void load(std::istream& in) override;

  // Uniform in +-1/sqrt(fan_in).
  static Params initial_params(std::size_t inputs, std::size_t hidden, std::uint64_t seed);
  static Scores forward(const Params& p, std::span<const double> row);
  // Mean cross-entropy over the rows and its gradient with respect to flatten() order.
  static double loss_and_gradient(const Params& p, const Matrix& x, std::span<const QualityLabel> y,
                                  std::span<const std::size_t> rows, std::vector<double>& grad);

  const Params& params() const { return params_; }

 private:
  int hidden_;
  double learning_rate_;
  int epochs_;
  int batch_size_;
  std::uint64_t seed_;
  Params params_;
};

}  // namespace qqual::ml
