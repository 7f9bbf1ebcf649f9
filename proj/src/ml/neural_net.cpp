#include <cmath>
#include <numeric>

#include "common.hpp"
#include "io_util.hpp"

namespace qqual::ml {

namespace {

double sigmoid(double a) { return a >= 0 ? 1 / (1 + std::exp(-a)) : std::exp(a) / (1 + std::exp(a)); }

// Hidden activations and output probabilities for one row.
void forward_pass(const NeuralNet::Params& p, std::span<const double> x, std::vector<double>& h, Scores& out) {
  h.resize(p.hidden);
  for (std::size_t u = 0; u < p.hidden; ++u) {
    double a = p.b1[u];
    const double* w = &p.w1[u * p.inputs];
    for (std::size_t j = 0; j < p.inputs; ++j) a += w[j] * x[j];
    h[u] = sigmoid(a);
  }
  std::array<double, kClasses> z{};
  for (std::size_t c = 0; c < kClasses; ++c) {
    z[c] = p.b2[c];
    for (std::size_t u = 0; u < p.hidden; ++u) z[c] += p.w2[c * p.hidden + u] * h[u];
  }
  double top = std::max(z[0], z[1]);
  double e0 = std::exp(z[0] - top), e1 = std::exp(z[1] - top);
  out = {e0 / (e0 + e1), e1 / (e0 + e1)};
}

}  // namespace

std::vector<double> NeuralNet::Params::flatten() const {
  std::vector<double> flat;
  flat.reserve(w1.size() + b1.size() + w2.size() + b2.size());
  flat.insert(flat.end(), w1.begin(), w1.end());
  flat.insert(flat.end(), b1.begin(), b1.end());
  flat.insert(flat.end(), w2.begin(), w2.end());
  flat.insert(flat.end(), b2.begin(), b2.end());
  return flat;
}

void NeuralNet::Params::unflatten(std::span<const double> flat) {
  if (flat.size() != w1.size() + b1.size() + w2.size() + b2.size())
    throw InvalidArgument("parameter vector has the wrong length");
  auto it = flat.begin();
  for (auto* v : {&w1, &b1, &w2, &b2}) {
    std::copy(it, it + static_cast<std::ptrdiff_t>(v->size()), v->begin());
    it += static_cast<std::ptrdiff_t>(v->size());
  }
}

NeuralNet::Params NeuralNet::initial_params(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
  Params p;
  p.inputs = inputs;
  p.hidden = hidden;
  Rng rng(seed);
  auto fill = [&](std::vector<double>& v, std::size_t n, std::size_t fan_in) {
    const double r = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
    v.resize(n);
    for (auto& w : v) w = (2 * uniform_unit(rng) - 1) * r;
  };
  fill(p.w1, hidden * inputs, inputs);
  fill(p.b1, hidden, inputs);
  fill(p.w2, kClasses * hidden, hidden);
  fill(p.b2, kClasses, hidden);
  return p;
}

Scores NeuralNet::forward(const Params& p, std::span<const double> row) {
  detail::check_dimension(row, p.inputs);
  std::vector<double> h;
  Scores out;
  forward_pass(p, row, h, out);
  return out;
}

double NeuralNet::loss_and_gradient(const Params& p, const Matrix& x, std::span<const QualityLabel> y,
                                    std::span<const std::size_t> rows, std::vector<double>& grad) {
  if (rows.empty()) throw InvalidArgument("empty batch");
  const std::size_t nw1 = p.w1.size(), nb1 = p.b1.size(), nw2 = p.w2.size();
  grad.assign(nw1 + nb1 + nw2 + p.b2.size(), 0.0);
  double* gw1 = grad.data();
  double* gb1 = gw1 + nw1;
  double* gw2 = gb1 + nb1;
  double* gb2 = gw2 + nw2;

  std::vector<double> h, dh(p.hidden);
  Scores prob;
  double loss = 0;
  for (auto r : rows) {
    const auto& xr = x[r];
    forward_pass(p, xr, h, prob);
    const std::size_t target = class_index(y[r]);
    loss -= std::log(std::max(prob[target], 1e-300));
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t c = 0; c < kClasses; ++c) {
      double dz = prob[c] - (c == target ? 1.0 : 0.0);
      gb2[c] += dz;
      for (std::size_t u = 0; u < p.hidden; ++u) {
        gw2[c * p.hidden + u] += dz * h[u];
        dh[u] += dz * p.w2[c * p.hidden + u];
      }
    }
    for (std::size_t u = 0; u < p.hidden; ++u) {
      double da = dh[u] * h[u] * (1 - h[u]);
      gb1[u] += da;
      double* g = gw1 + u * p.inputs;
      for (std::size_t j = 0; j < p.inputs; ++j) g[j] += da * xr[j];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (auto& g : grad) g *= inv;
  return loss * inv;
}

void NeuralNet::fit(const Matrix& x, std::span<const QualityLabel> y) {
  detail::check_training_set(x, y);
  if (hidden_ < 1 || epochs_ < 1 || batch_size_ < 1 || !(learning_rate_ > 0))
    throw InvalidArgument("invalid neural network hyperparameters");
  params_ = initial_params(x.front().size(), static_cast<std::size_t>(hidden_), derive_seed(seed_, 0));
  Rng rng(derive_seed(seed_, 1));
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> flat = params_.flatten(), grad;
  for (int epoch = 0; epoch < epochs_; ++epoch) {
    shuffle(std::span(order), rng);
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch_size_)) {
      std::size_t len = std::min(static_cast<std::size_t>(batch_size_), order.size() - start);
      loss_and_gradient(params_, x, y, std::span(order).subspan(start, len), grad);
      for (std::size_t i = 0; i < flat.size(); ++i) flat[i] -= learning_rate_ * grad[i];
      params_.unflatten(flat);
    }
  }
}

Scores NeuralNet::scores(std::span<const double> row) const {
  if (params_.hidden == 0) throw InvalidArgument("neural network is not trained");
  return forward(params_, row);
}

void NeuralNet::save(std::ostream& out) const {
  out << "mlp " << hidden_ << ' ' << text::format_double(learning_rate_) << ' ' << epochs_ << ' ' << batch_size_ << ' '
      << seed_ << ' ' << params_.inputs << ' ' << params_.hidden << '\n';
  detail::write_values(out, "w1", params_.w1);
  detail::write_values(out, "b1", params_.b1);
  detail::write_values(out, "w2", params_.w2);
  detail::write_values(out, "b2", params_.b2);
}

void NeuralNet::load(std::istream& in) {
  detail::expect_key(in, "mlp");
  hidden_ = static_cast<int>(detail::read_int(in));
  learning_rate_ = detail::read_double(in);
  epochs_ = static_cast<int>(detail::read_int(in));
  batch_size_ = static_cast<int>(detail::read_int(in));
  seed_ = std::stoull(detail::read_token(in));
  params_.inputs = detail::read_count(in);
  params_.hidden = detail::read_count(in);
  params_.w1 = detail::read_values(in, "w1");
  params_.b1 = detail::read_values(in, "b1");
  params_.w2 = detail::read_values(in, "w2");
  params_.b2 = detail::read_values(in, "b2");
  if (params_.w1.size() != params_.inputs * params_.hidden || params_.b1.size() != params_.hidden ||
      params_.w2.size() != kClasses * params_.hidden || params_.b2.size() != kClasses || params_.hidden == 0)
    throw FormatError("model file: inconsistent neural network dimensions");
}

}  // namespace qqual::ml
