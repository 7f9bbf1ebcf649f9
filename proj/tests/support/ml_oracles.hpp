#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qqual/ml.hpp"
#include "qqual/random.hpp"

// ------------------------------------------------------------ Gaussian naive Bayes

// Bayes rule written out directly: prior times the product of normal densities,
// every variance widened by eps = smoothing * (largest overall feature variance, or 1).
struct BayesOracle {
  double posterior_promoted = 0;
  double log_joint[2] = {0, 0};
  qqual::ml::QualityLabel decision = qqual::ml::QualityLabel::Promoted;
};

inline BayesOracle bayes_oracle(const qqual::ml::Matrix& x, const std::vector<qqual::ml::QualityLabel>& y,
                                const std::vector<double>& query, double smoothing) {
  const std::size_t n = x.size(), d = query.size();
  auto population_variance = [](const std::vector<double>& v) {
    double m = 0;
    for (double a : v) m += a;
    m /= static_cast<double>(v.size());
    double s = 0;
    for (double a : v) s += (a - m) * (a - m);
    return s / static_cast<double>(v.size());
  };
  double widest = 0;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col;
    for (const auto& r : x) col.push_back(r[j]);
    widest = std::max(widest, population_variance(col));
  }
  const double eps = smoothing * (widest > 0 ? widest : 1.0);

  BayesOracle out;
  for (int c = 0; c < 2; ++c) {
    auto label = c == 0 ? qqual::ml::QualityLabel::Promoted : qqual::ml::QualityLabel::Discouraged;
    std::vector<std::vector<double>> cols(d);
    for (std::size_t i = 0; i < n; ++i)
      if (y[i] == label)
        for (std::size_t j = 0; j < d; ++j) cols[j].push_back(x[i][j]);
    const double prior = static_cast<double>(cols[0].size()) / static_cast<double>(n);
    double lj = std::log(prior);
    for (std::size_t j = 0; j < d; ++j) {
      double mu = 0;
      for (double a : cols[j]) mu += a;
      mu /= static_cast<double>(cols[j].size());
      const double var = population_variance(cols[j]) + eps;
      // log of exp(-(q-mu)^2 / 2var) / sqrt(2 pi var)
      lj += -(query[j] - mu) * (query[j] - mu) / (2 * var) - 0.5 * std::log(2 * std::numbers::pi * var);
    }
    out.log_joint[c] = lj;
  }
  out.posterior_promoted = 1.0 / (1.0 + std::exp(out.log_joint[1] - out.log_joint[0]));
  out.decision = out.log_joint[0] >= out.log_joint[1] ? qqual::ml::QualityLabel::Promoted
                                                      : qqual::ml::QualityLabel::Discouraged;
  return out;
}

// ------------------------------------------------------------ neural network

struct GradientCheck {
  double relative_error = 0;  // ||analytic - numeric|| / (||analytic|| + ||numeric||)
  double loss = 0;
};

// One random instance: a few inputs, hidden units and rows with random parameters.
inline GradientCheck gradient_check(qqual::Rng& rng) {
  using namespace qqual;
  using qqual::ml::NeuralNet;
  const std::size_t inputs = 1 + uniform_index(rng, 4), hidden = 1 + uniform_index(rng, 5),
                    rows = 1 + uniform_index(rng, 6);
  auto p = NeuralNet::initial_params(inputs, hidden, rng());
  auto flat = p.flatten();
  for (auto& w : flat) w *= 1.0 + 2.0 * uniform_unit(rng);
  p.unflatten(flat);

  ml::Matrix x(rows, std::vector<double>(inputs));
  std::vector<ml::QualityLabel> y(rows);
  std::vector<std::size_t> idx(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (auto& v : x[i]) v = 4.0 * uniform_unit(rng) - 2.0;
    y[i] = uniform_index(rng, 2) ? ml::QualityLabel::Promoted : ml::QualityLabel::Discouraged;
    idx[i] = i;
  }

  std::vector<double> analytic, scratch;
  GradientCheck out;
  out.loss = NeuralNet::loss_and_gradient(p, x, y, idx, analytic);

  const double h = 1e-5;
  double diff2 = 0, a2 = 0, n2 = 0;
  for (std::size_t k = 0; k < flat.size(); ++k) {
    auto plus = flat, minus = flat;
    plus[k] += h;
    minus[k] -= h;
    NeuralNet::Params pp = p, pm = p;
    pp.unflatten(plus);
    pm.unflatten(minus);
    double numeric = (NeuralNet::loss_and_gradient(pp, x, y, idx, scratch) -
                      NeuralNet::loss_and_gradient(pm, x, y, idx, scratch)) /
                     (2 * h);
    diff2 += (analytic[k] - numeric) * (analytic[k] - numeric);
    a2 += analytic[k] * analytic[k];
    n2 += numeric * numeric;
  }
  const double denom = std::sqrt(a2) + std::sqrt(n2);
  out.relative_error = denom > 0 ? std::sqrt(diff2) / denom : 0.0;
  return out;
}

// ------------------------------------------------------------ synthetic data

// n rows over te and me; Promoted rows live in [0, 0.4], Discouraged rows in [0.6, 1].
inline qqual::ml::Dataset disjoint_dataset(std::size_t n, std::uint64_t seed) {
  qqual::Rng rng(seed);
  qqual::ml::Dataset d;
  d.feature_names = {"te", "me"};
  for (std::size_t i = 0; i < n; ++i) {
    bool promoted = i % 2 == 0;
    double base = promoted ? 0.0 : 0.6;
    d.x.push_back({base + 0.4 * qqual::uniform_unit(rng), base + 0.4 * qqual::uniform_unit(rng)});
    d.y.push_back(promoted ? qqual::ml::QualityLabel::Promoted : qqual::ml::QualityLabel::Discouraged);
    d.ids.push_back(static_cast<std::int64_t>(i + 1));
  }
  return d;
}

inline qqual::ml::Dataset shuffled_labels(qqual::ml::Dataset d, std::uint64_t seed) {
  qqual::Rng rng(seed);
  qqual::shuffle(std::span(d.y), rng);
  return d;
}

// Independent check that the classes really are separable: nearest class centroid
// classifies every row correctly.
inline double nearest_centroid_accuracy(const qqual::ml::Dataset& d) {
  double c[2][2] = {{0, 0}, {0, 0}};
  double n[2] = {0, 0};
  for (std::size_t i = 0; i < d.rows(); ++i) {
    auto k = qqual::ml::class_index(d.y[i]);
    c[k][0] += d.x[i][0];
    c[k][1] += d.x[i][1];
    n[k] += 1;
  }
  for (int k = 0; k < 2; ++k) c[k][0] /= n[k], c[k][1] /= n[k];
  double hits = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    auto dist = [&](int k) {
      return (d.x[i][0] - c[k][0]) * (d.x[i][0] - c[k][0]) + (d.x[i][1] - c[k][1]) * (d.x[i][1] - c[k][1]);
    };
    auto guess = dist(0) <= dist(1) ? 0u : 1u;
    hits += guess == qqual::ml::class_index(d.y[i]);
  }
  return hits / static_cast<double>(d.rows());
}

// Every labeling with both classes present of every row layout over a small value
// grid: one feature on {0,1,2,3} up to 5 rows, two features on {0,1,2} up to 4 rows
// and on {0,1} with 5 rows. Each fitted model is queried on a grid around the data.
struct BayesSuiteResult {
  std::size_t instances = 0;
  std::size_t queries = 0;
  double max_posterior_error = 0;
  std::size_t decision_mismatches = 0;
  std::size_t sum_errors = 0;  // score pairs not summing to 1 within 1e-9
};

inline BayesSuiteResult run_bayes_suite(double smoothing) {
  using namespace qqual::ml;
  BayesSuiteResult res;
  struct Layout {
    std::size_t features;
    std::vector<double> values;
    std::size_t max_rows;
    std::size_t min_rows;
  };
  const std::vector<Layout> layouts{{1, {0, 1, 2, 3}, 5, 2}, {2, {0, 1, 2}, 4, 2}, {2, {0, 1}, 5, 5}};
  const std::vector<double> probes{-1, 0, 0.5, 1, 1.5, 2, 3, 4};

  for (const auto& layout : layouts) {
    for (std::size_t rows = layout.min_rows; rows <= layout.max_rows; ++rows) {
      const std::size_t cells = rows * layout.features;
      std::size_t combos = 1;
      for (std::size_t i = 0; i < cells; ++i) combos *= layout.values.size();
      for (std::size_t code = 0; code < combos; ++code) {
        Matrix x(rows, std::vector<double>(layout.features));
        std::size_t c = code;
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < layout.features; ++j) {
            x[i][j] = layout.values[c % layout.values.size()];
            c /= layout.values.size();
          }
        for (std::size_t mask = 1; mask + 1 < (1u << rows); ++mask) {
          std::vector<QualityLabel> y(rows);
          for (std::size_t i = 0; i < rows; ++i)
            y[i] = (mask >> i) & 1u ? QualityLabel::Promoted : QualityLabel::Discouraged;
          GaussianNB nb(smoothing);
          nb.fit(x, y);
          ++res.instances;
          auto check = [&](const std::vector<double>& q) {
            auto s = nb.scores(q);
            auto o = bayes_oracle(x, y, q, smoothing);
            ++res.queries;
            res.max_posterior_error = std::max(res.max_posterior_error, std::fabs(s[0] - o.posterior_promoted));
            if (std::fabs(s[0] + s[1] - 1.0) > 1e-9) ++res.sum_errors;
            if (nb.predict(q) != o.decision) ++res.decision_mismatches;
          };
          if (layout.features == 1) {
            for (double a : probes) check({a});
          } else {
            for (double a : probes)
              for (double b : probes) check({a, b});
          }
        }
      }
    }
  }
  return res;
}
