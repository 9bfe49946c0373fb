#include <algorithm>
#include <cmath>

#include "cipherid/classifiers.hpp"
#include "cipherid/rng.hpp"

namespace cipherid::classifiers {

namespace {

// Kernels are evaluated from dot products: k(x,z) = f(x.z, |x|^2, |z|^2).
double kernel_value(const SvmConfig& cfg, double dot, double ni, double nj) {
  switch (cfg.kernel) {
    case Kernel::kLinear:
      return dot;
    case Kernel::kRbf:
      return std::exp(-cfg.gamma * (ni + nj - 2.0 * dot));
    case Kernel::kPoly: {
      double t = cfg.gamma * dot;  // (gamma x.z + r)^3 with r = 0
      return t * t * t;
    }
    case Kernel::kSigmoid:
      return std::tanh(cfg.gamma * dot);
  }
  return 0.0;
}

/// Sequential minimal optimization for one binary soft-margin problem,
/// f(x) = sum_i alpha_i y_i k(x_i, x) + b, KKT tolerance 1e-3.
class SmoSolver {
 public:
  SmoSolver(const Matrix& kernel, const std::vector<double>& y, double c,
            uint64_t seed)
      : k_(kernel),
        y_(y),
        c_(c),
        n_(static_cast<int>(y.size())),
        alpha_(y.size(), 0.0),
        error_(y.size()),
        rng_(seed) {
    for (int i = 0; i < n_; ++i) error_[i] = -y_[i];  // f = 0 initially
  }

  void solve() {
    bool examine_all = true;
    int sweeps = 0;
    while (sweeps++ < kMaxSweeps) {
      int changed = 0;
      if (examine_all) {
        for (int i = 0; i < n_; ++i) changed += examine(i);
      } else {
        for (int i = 0; i < n_; ++i) {
          if (is_free(i)) changed += examine(i);
        }
      }
      if (examine_all) {
        if (changed == 0) break;
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double bias() const { return b_; }

 private:
  static constexpr double kTol = 1e-3;
  static constexpr double kEps = 1e-12;
  static constexpr int kMaxSweeps = 1000;

  bool is_free(int i) const { return alpha_[i] > 0.0 && alpha_[i] < c_; }

  int examine(int i2) {
    double y2 = y_[i2], a2 = alpha_[i2], e2 = error_[i2];
    double r2 = e2 * y2;
    bool violates = (r2 < -kTol && a2 < c_) || (r2 > kTol && a2 > 0.0);
    if (!violates) return 0;

    // Second-choice heuristic: largest |E1 - E2| among free points.
    int best = -1;
    double best_gap = -1.0;
    for (int i = 0; i < n_; ++i) {
      if (!is_free(i)) continue;
      double gap = std::abs(error_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best >= 0 && take_step(best, i2)) return 1;

    int start = static_cast<int>(rng_.uniform(static_cast<uint64_t>(n_)));
    for (int off = 0; off < n_; ++off) {
      int i1 = (start + off) % n_;
      if (is_free(i1) && take_step(i1, i2)) return 1;
    }
    start = static_cast<int>(rng_.uniform(static_cast<uint64_t>(n_)));
    for (int off = 0; off < n_; ++off) {
      int i1 = (start + off) % n_;
      if (take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(int i1, int i2) {
    if (i1 == i2) return false;
    double a1 = alpha_[i1], a2 = alpha_[i2];
    double y1 = y_[i1], y2 = y_[i2];
    double e1 = error_[i1], e2 = error_[i2];
    double s = y1 * y2;
    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_, c_ + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_);
      hi = std::min(c_, a1 + a2);
    }
    if (lo >= hi) return false;
    double k11 = k_(i1, i1), k12 = k_(i1, i2), k22 = k_(i2, i2);
    double eta = k11 + k22 - 2.0 * k12;
    double a2_new;
    if (eta > 0.0) {
      a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Degenerate curvature: pick the better interval endpoint.
      double f1 = y1 * e1 - a1 * k11 - s * a2 * k12;
      double f2 = y2 * e2 - s * a1 * k12 - a2 * k22;
      double l1 = a1 + s * (a2 - lo), h1 = a1 + s * (a2 - hi);
      double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                      0.5 * lo * lo * k22 + s * lo * l1 * k12;
      double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                      0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (obj_lo < obj_hi - kEps) a2_new = lo;
      else if (obj_lo > obj_hi + kEps) a2_new = hi;
      else return false;
    }
    if (std::abs(a2_new - a2) < kEps * (a2_new + a2 + kEps)) return false;
    double a1_new = a1 + s * (a2 - a2_new);
    double d1 = y1 * (a1_new - a1), d2 = y2 * (a2_new - a2);

    double b1 = b_ - e1 - d1 * k11 - d2 * k12;
    double b2 = b_ - e2 - d1 * k12 - d2 * k22;
    double b_new;
    if (a1_new > 0.0 && a1_new < c_) b_new = b1;
    else if (a2_new > 0.0 && a2_new < c_) b_new = b2;
    else b_new = 0.5 * (b1 + b2);

    double db = b_new - b_;
    for (int i = 0; i < n_; ++i) {
      error_[i] += d1 * k_(i1, i) + d2 * k_(i2, i) + db;
    }
    alpha_[i1] = a1_new;
    alpha_[i2] = a2_new;
    b_ = b_new;
    return true;
  }

  const Matrix& k_;
  const std::vector<double>& y_;
  double c_;
  int n_;
  std::vector<double> alpha_;
  std::vector<double> error_;
  double b_ = 0.0;
  Rng rng_;
};

}  // namespace

SvmModel train_svm(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const SvmConfig& config, uint64_t seed) {
  if (n_classes < 2) throw Error("svm needs at least two classes");
  SvmModel model;
  model.config = config;

  // Dot products once, shared by every pairwise subproblem.
  Matrix gram = x * x.transpose();

  for (int a = 0; a < n_classes; ++a) {
    for (int b = a + 1; b < n_classes; ++b) {
      std::vector<int> rows;
      std::vector<double> target;
      for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] == a || y[i] == b) {
          rows.push_back(static_cast<int>(i));
          target.push_back(y[i] == a ? 1.0 : -1.0);
        }
      }
      if (rows.empty() || target.empty()) continue;
      int m = static_cast<int>(rows.size());
      Matrix kernel(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
          double v = kernel_value(config, gram(rows[i], rows[j]),
                                  gram(rows[i], rows[i]),
                                  gram(rows[j], rows[j]));
          kernel(i, j) = v;
          kernel(j, i) = v;
        }
      }
      SmoSolver solver(kernel, target, config.c,
                       derive_seed(seed, "svm.pair", a, b));
      solver.solve();

      SvmBinary bin;
      bin.class_a = a;
      bin.class_b = b;
      bin.bias = solver.bias();
      std::vector<int> sv;
      for (int i = 0; i < m; ++i) {
        if (solver.alpha()[i] > 1e-12) sv.push_back(i);
      }
      bin.support_vectors.resize(static_cast<Eigen::Index>(sv.size()),
                                 x.cols());
      bin.dual_coef.resize(static_cast<Eigen::Index>(sv.size()));
      for (size_t i = 0; i < sv.size(); ++i) {
        bin.support_vectors.row(static_cast<Eigen::Index>(i)) =
            x.row(rows[sv[i]]);
        bin.dual_coef(static_cast<Eigen::Index>(i)) =
            solver.alpha()[sv[i]] * target[sv[i]];
      }
      model.machines.push_back(std::move(bin));
    }
  }
  return model;
}

Matrix svm_scores(const SvmModel& m, const Matrix& x, int n_classes) {
  Eigen::Index n = x.rows();
  Matrix votes = Matrix::Zero(n, n_classes);
  Matrix margins = Matrix::Zero(n, n_classes);
  Eigen::VectorXd x_norms = x.rowwise().squaredNorm();
  for (const auto& bin : m.machines) {
    if (bin.support_vectors.rows() == 0) continue;
    Matrix dots = x * bin.support_vectors.transpose();  // n x sv
    Eigen::VectorXd sv_norms = bin.support_vectors.rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < n; ++i) {
      double f = bin.bias;
      for (Eigen::Index j = 0; j < dots.cols(); ++j) {
        f += bin.dual_coef(j) *
             kernel_value(m.config, dots(i, j), x_norms(i), sv_norms(j));
      }
      int winner = f > 0.0 ? bin.class_a : bin.class_b;
      votes(i, winner) += 1.0;
      margins(i, bin.class_a) += f;
      margins(i, bin.class_b) -= f;
    }
  }
  // Aggregate margins break vote ties; squashed so they never outweigh
  // a full vote.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < n_classes; ++c) {
      votes(i, c) += 1.0 / (1.0 + std::exp(-margins(i, c))) - 0.5;
    }
  }
  return votes;
}

}  // namespace cipherid::classifiers
