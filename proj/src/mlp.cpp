#include <cmath>
#include <numeric>

#include "cipherid/classifiers.hpp"
#include "cipherid/rng.hpp"

namespace cipherid::classifiers {

namespace {

Matrix activate(const Matrix& z, Activation act) {
  switch (act) {
    case Activation::kRelu:
      return z.cwiseMax(0.0);
    case Activation::kTanh:
      return z.array().tanh().matrix();
    case Activation::kSigmoid:
      return (1.0 / (1.0 + (-z.array()).exp())).matrix();
  }
  return z;
}

/// Derivative expressed through the activation output.
Matrix activate_grad(const Matrix& a, Activation act) {
  switch (act) {
    case Activation::kRelu:
      return (a.array() > 0.0).cast<double>().matrix();
    case Activation::kTanh:
      return (1.0 - a.array().square()).matrix();
    case Activation::kSigmoid:
      return (a.array() * (1.0 - a.array())).matrix();
  }
  return Matrix::Ones(a.rows(), a.cols());
}

Matrix softmax_rows(const Matrix& z) {
  Matrix out = z;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    double m = out.row(i).maxCoeff();
    out.row(i) = (out.row(i).array() - m).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

}  // namespace

MlpGradients mlp_loss_and_gradients(const MlpModel& model, const Matrix& x,
                                    const std::vector<int>& y, double alpha) {
  size_t layers = model.weights.size();
  double n = static_cast<double>(x.rows());

  std::vector<Matrix> activations(layers + 1);
  activations[0] = x;
  for (size_t l = 0; l < layers; ++l) {
    Matrix z = activations[l] * model.weights[l];
    z.rowwise() += model.biases[l].transpose();
    activations[l + 1] = l + 1 == layers
                             ? softmax_rows(z)
                             : activate(z, model.config.activation);
  }

  const Matrix& probs = activations[layers];
  double loss = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    loss -= std::log(std::max(probs(i, y[i]), 1e-15));
  }
  loss /= n;
  double penalty = 0.0;
  for (const auto& w : model.weights) penalty += w.squaredNorm();
  loss += 0.5 * alpha * penalty / n;

  MlpGradients out;
  out.loss = loss;
  out.d_weights.resize(layers);
  out.d_biases.resize(layers);

  // Softmax + cross-entropy: delta = (p - onehot) / n.
  Matrix delta = probs;
  for (Eigen::Index i = 0; i < x.rows(); ++i) delta(i, y[i]) -= 1.0;
  delta /= n;

  for (size_t l = layers; l-- > 0;) {
    out.d_weights[l] = activations[l].transpose() * delta;
    out.d_weights[l] += (alpha / n) * model.weights[l];
    out.d_biases[l] = delta.colwise().sum();
    if (l > 0) {
      delta = (delta * model.weights[l].transpose())
                  .cwiseProduct(activate_grad(activations[l],
                                              model.config.activation));
    }
  }
  return out;
}

MlpModel train_mlp(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const MlpConfig& config, uint64_t seed) {
  if (config.hidden.empty()) throw Error("mlp needs at least one hidden layer");
  MlpModel model;
  model.config = config;

  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(x.cols()));
  for (int h : config.hidden) sizes.push_back(h);
  sizes.push_back(n_classes);

  Rng rng(derive_seed(seed, "mlp.init"));
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    double limit = std::sqrt(6.0 / (sizes[l] + sizes[l + 1]));
    Matrix w(sizes[l], sizes[l + 1]);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = rng.uniform_real(-limit, limit);
      }
    }
    model.weights.push_back(std::move(w));
    model.biases.emplace_back(Eigen::VectorXd::Zero(sizes[l + 1]));
  }

  constexpr int kBatch = 200;
  constexpr double kLearningRate = 1e-3;
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEpsilon = 1e-8;

  std::vector<Matrix> m_w, v_w;
  std::vector<Eigen::VectorXd> m_b, v_b;
  if (config.solver == Solver::kAdam) {
    for (const auto& w : model.weights) {
      m_w.emplace_back(Matrix::Zero(w.rows(), w.cols()));
      v_w.emplace_back(Matrix::Zero(w.rows(), w.cols()));
    }
    for (const auto& b : model.biases) {
      m_b.emplace_back(Eigen::VectorXd::Zero(b.size()));
      v_b.emplace_back(Eigen::VectorXd::Zero(b.size()));
    }
  }

  int n = static_cast<int>(x.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(derive_seed(seed, "mlp.shuffle"));
  int64_t step = 0;

  for (int epoch = 0; epoch < config.max_iter; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    int batches = 0;
    for (int start = 0; start < n; start += kBatch) {
      int size = std::min(kBatch, n - start);
      Matrix bx(size, x.cols());
      std::vector<int> by(size);
      for (int i = 0; i < size; ++i) {
        bx.row(i) = x.row(order[start + i]);
        by[i] = y[order[start + i]];
      }
      MlpGradients g = mlp_loss_and_gradients(model, bx, by, config.alpha);
      epoch_loss += g.loss;
      ++batches;
      if (!std::isfinite(g.loss)) {
        throw DivergenceError("mlp loss diverged at epoch " +
                                  std::to_string(epoch + 1),
                              epoch + 1);
      }
      ++step;
      if (config.solver == Solver::kAdam) {
        double correction = std::sqrt(1.0 - std::pow(kBeta2, step)) /
                            (1.0 - std::pow(kBeta1, step));
        for (size_t l = 0; l < model.weights.size(); ++l) {
          m_w[l] = kBeta1 * m_w[l] + (1.0 - kBeta1) * g.d_weights[l];
          v_w[l].array() = kBeta2 * v_w[l].array() +
                           (1.0 - kBeta2) * g.d_weights[l].array().square();
          model.weights[l].array() -= kLearningRate * correction *
                                      m_w[l].array() /
                                      (v_w[l].array().sqrt() + kEpsilon);
          m_b[l] = kBeta1 * m_b[l] + (1.0 - kBeta1) * g.d_biases[l];
          v_b[l].array() = kBeta2 * v_b[l].array() +
                           (1.0 - kBeta2) * g.d_biases[l].array().square();
          model.biases[l].array() -= kLearningRate * correction *
                                     m_b[l].array() /
                                     (v_b[l].array().sqrt() + kEpsilon);
        }
      } else {
        for (size_t l = 0; l < model.weights.size(); ++l) {
          model.weights[l] -= kLearningRate * g.d_weights[l];
          model.biases[l] -= kLearningRate * g.d_biases[l];
        }
      }
    }
    (void)batches;
  }
  return model;
}

Matrix mlp_scores(const MlpModel& m, const Matrix& x, int n_classes) {
  (void)n_classes;
  Matrix a = x;
  for (size_t l = 0; l < m.weights.size(); ++l) {
    Matrix z = a * m.weights[l];
    z.rowwise() += m.biases[l].transpose();
    a = l + 1 == m.weights.size() ? softmax_rows(z)
                                  : activate(z, m.config.activation);
  }
  return a;
}

}  // namespace cipherid::classifiers
