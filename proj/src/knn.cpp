#include <algorithm>
#include <cmath>

#include "cipherid/classifiers.hpp"

namespace cipherid::classifiers {

KnnModel train_knn(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const KnnConfig& config) {
  (void)n_classes;
  if (config.k <= 0) throw Error("k must be positive");
  if (config.k > x.rows()) throw Error("k exceeds the training set size");
  return KnnModel{config, x, y};
}

namespace {

/// Distance matrix queries x train. Euclidean uses the Gram expansion;
/// the elementwise metrics accumulate per dimension with the training
/// column contiguous in the inner loop.
Matrix distances(const KnnModel& m, const Matrix& q) {
  Eigen::Index nq = q.rows(), nt = m.train_x.rows(), d = q.cols();
  Matrix out(nq, nt);
  switch (m.config.metric) {
    case Metric::kEuclidean: {
      out.noalias() = -2.0 * q * m.train_x.transpose();
      Eigen::VectorXd qn = q.rowwise().squaredNorm();
      Eigen::VectorXd tn = m.train_x.rowwise().squaredNorm();
      out.colwise() += qn;
      out.rowwise() += tn.transpose();
      out = out.cwiseMax(0.0).cwiseSqrt();
      break;
    }
    case Metric::kManhattan: {
      out.setZero();
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index j = 0; j < nt; ++j) {
          double tv = m.train_x(j, k);
          double* col = out.col(j).data();
          const double* qv = q.col(k).data();
          for (Eigen::Index i = 0; i < nq; ++i) {
            col[i] += std::abs(qv[i] - tv);
          }
        }
      }
      break;
    }
    case Metric::kMinkowski3: {
      out.setZero();
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index j = 0; j < nt; ++j) {
          double tv = m.train_x(j, k);
          double* col = out.col(j).data();
          const double* qv = q.col(k).data();
          for (Eigen::Index i = 0; i < nq; ++i) {
            double a = std::abs(qv[i] - tv);
            col[i] += a * a * a;
          }
        }
      }
      out = out.unaryExpr([](double v) { return std::cbrt(v); });
      break;
    }
  }
  return out;
}

}  // namespace

Matrix knn_scores(const KnnModel& m, const Matrix& x, int n_classes) {
  if (x.cols() != m.train_x.cols()) {
    throw Error("feature dimension mismatch");
  }
  Matrix dist = distances(m, x);
  Eigen::Index nq = x.rows(), nt = m.train_x.rows();
  Matrix scores = Matrix::Zero(nq, n_classes);
  std::vector<std::pair<double, int>> order(nt);
  for (Eigen::Index i = 0; i < nq; ++i) {
    for (Eigen::Index j = 0; j < nt; ++j) {
      order[j] = {dist(i, j), static_cast<int>(j)};
    }
    std::partial_sort(order.begin(), order.begin() + m.config.k, order.end());
    double total = 0.0;
    for (int r = 0; r < m.config.k; ++r) {
      double w = m.config.weights == VoteWeights::kUniform
                     ? 1.0
                     : 1.0 / (order[r].first + 1e-12);
      scores(i, m.train_y[order[r].second]) += w;
      total += w;
    }
    if (total > 0.0) scores.row(i) /= total;
  }
  return scores;
}

}  // namespace cipherid::classifiers
