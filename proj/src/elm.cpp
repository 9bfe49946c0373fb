#include <Eigen/Dense>

#include "cipherid/classifiers.hpp"
#include "cipherid/rng.hpp"

namespace cipherid::classifiers {

namespace {

constexpr double kRidge = 1e-6;

Matrix hidden_activations(const ElmModel& m, const Matrix& x) {
  Matrix h = x * m.hidden_weights;
  h.rowwise() += m.hidden_bias.transpose();
  switch (m.config.activation) {
    case Activation::kRelu:
      return h.cwiseMax(0.0);
    case Activation::kTanh:
      return h.array().tanh().matrix();
    case Activation::kSigmoid:
      return (1.0 / (1.0 + (-h.array()).exp())).matrix();
  }
  return h;
}

}  // namespace

ElmModel train_elm(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const ElmConfig& config, uint64_t seed) {
  if (config.hidden_neurons < 1) throw Error("hidden_neurons must be positive");
  ElmModel model;
  model.config = config;

  Eigen::Index d = x.cols(), h = config.hidden_neurons, n = x.rows();
  Rng rng(derive_seed(seed, "elm.init"));
  model.hidden_weights.resize(d, h);
  model.hidden_bias.resize(h);
  for (Eigen::Index j = 0; j < h; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      model.hidden_weights(i, j) = rng.uniform_real(-1.0, 1.0);
    }
    model.hidden_bias(j) = rng.uniform_real(-1.0, 1.0);
  }

  Matrix hidden = hidden_activations(model, x);
  Matrix targets = Matrix::Zero(n, n_classes);  // one-hot rows
  for (Eigen::Index i = 0; i < n; ++i) targets(i, y[i]) = 1.0;

  // Ridge-regularized least squares min |H b - T|^2 + kRidge |b|^2.
  // Solve whichever normal system is smaller.
  if (h <= n) {
    Matrix a = hidden.transpose() * hidden;
    a.diagonal().array() += kRidge;
    model.output_weights = a.ldlt().solve(hidden.transpose() * targets);
  } else {
    Matrix a = hidden * hidden.transpose();
    a.diagonal().array() += kRidge;
    model.output_weights = hidden.transpose() * a.ldlt().solve(targets);
  }
  return model;
}

Matrix elm_scores(const ElmModel& m, const Matrix& x, int n_classes) {
  (void)n_classes;
  return hidden_activations(m, x) * m.output_weights;
}

}  // namespace cipherid::classifiers
