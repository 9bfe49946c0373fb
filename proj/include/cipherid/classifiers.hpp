#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cipherid/common.hpp"

namespace cipherid::classifiers {

using Matrix = Eigen::MatrixXd;

enum class Family { kSvm, kKnn, kForest, kMlp, kElm };
enum class Kernel { kLinear, kPoly, kRbf, kSigmoid };
enum class Metric { kEuclidean, kManhattan, kMinkowski3 };
enum class VoteWeights { kUniform, kDistance };
enum class Criterion { kGini, kEntropy };
enum class Activation { kRelu, kSigmoid, kTanh };
enum class Solver { kSgd, kAdam };

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view name);

struct SvmConfig {
  double c = 1.0;
  double gamma = 1e-3;
  Kernel kernel = Kernel::kRbf;
};

struct KnnConfig {
  int k = 5;
  Metric metric = Metric::kEuclidean;
  VoteWeights weights = VoteWeights::kUniform;
};

struct ForestConfig {
  int n_estimators = 100;
  int max_depth = 8;
  Criterion criterion = Criterion::kGini;
  // max_features is fixed at sqrt(d).
};

struct MlpConfig {
  std::vector<int> hidden = {500};
  Activation activation = Activation::kRelu;
  double alpha = 1e-4;  // L2 penalty
  int max_iter = 200;   // epochs
  Solver solver = Solver::kAdam;
};

struct ElmConfig {
  int hidden_neurons = 100;
  Activation activation = Activation::kRelu;
};

struct Hyperparameters {
  std::variant<SvmConfig, KnnConfig, ForestConfig, MlpConfig, ElmConfig> config;
  /// Feature standardization before training/prediction. Default:
  /// on for SVM/MLP/ELM, off for k-NN/Forest.
  std::optional<bool> standardize;

  Family family() const;
  bool standardize_effective() const;
  std::string describe() const;
};

struct DivergenceError : Error {
  DivergenceError(const std::string& what, int epoch)
      : Error(what), epoch(epoch) {}
  int epoch;
};

// ------------------------------------------------------ fitted models

struct SvmBinary {
  int class_a = 0, class_b = 0;     // a voted on decision > 0
  Matrix support_vectors;           // rows
  Eigen::VectorXd dual_coef;        // alpha_i * y_i per support vector
  double bias = 0.0;
};

struct SvmModel {
  SvmConfig config;
  std::vector<SvmBinary> machines;  // one per class pair, (a<b) in order
};

struct KnnModel {
  KnnConfig config;
  Matrix train_x;
  std::vector<int> train_y;
};

struct TreeNode {
  int feature = -1;                 // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  std::vector<double> class_counts;  // training distribution at the node
};

struct Tree {
  std::vector<TreeNode> nodes;      // node 0 is the root
};

struct ForestModel {
  ForestConfig config;
  std::vector<Tree> trees;
};

struct MlpModel {
  MlpConfig config;
  std::vector<Matrix> weights;      // layer l: fan_in x fan_out
  std::vector<Eigen::VectorXd> biases;
};

struct ElmModel {
  ElmConfig config;
  Matrix hidden_weights;            // d x h, never trained
  Eigen::VectorXd hidden_bias;      // h
  Matrix output_weights;            // h x n_classes
};

/// An immutable fitted classifier. Prediction is deterministic; ties in
/// the score argmax resolve to the lowest class index.
class Model {
 public:
  Family family() const { return hp_.family(); }
  const Hyperparameters& hyperparameters() const { return hp_; }
  uint64_t seed() const { return seed_; }
  int n_classes() const { return n_classes_; }

  std::vector<int> predict(const Matrix& x) const;
  Matrix predict_scores(const Matrix& x) const;

  void save(const std::filesystem::path& path) const;
  static Model load(const std::filesystem::path& path);

  // Internal state, exposed for tests and serialization.
  using Fitted =
      std::variant<SvmModel, KnnModel, ForestModel, MlpModel, ElmModel>;
  const Fitted& fitted() const { return *fitted_; }

  Model(Hyperparameters hp, uint64_t seed, int n_classes,
        Eigen::VectorXd means, Eigen::VectorXd scales, Fitted fitted);

 private:
  Matrix preprocess(const Matrix& x) const;
  Hyperparameters hp_;
  uint64_t seed_ = 0;
  int n_classes_ = 0;
  Eigen::VectorXd means_, scales_;  // empty when standardization is off
  std::shared_ptr<const Fitted> fitted_;
};

/// Trains one model. X holds one sample per row; y holds class indices in
/// [0, n_classes). Deterministic given (data, hyperparameters, seed).
Model train(const Matrix& x, const std::vector<int>& y, int n_classes,
            const Hyperparameters& hp, uint64_t seed);

// Family-specific training entry points (used by train()).
SvmModel train_svm(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const SvmConfig& config, uint64_t seed);
KnnModel train_knn(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const KnnConfig& config);
ForestModel train_forest(const Matrix& x, const std::vector<int>& y,
                         int n_classes, const ForestConfig& config,
                         uint64_t seed, int threads = 0);
MlpModel train_mlp(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const MlpConfig& config, uint64_t seed);
ElmModel train_elm(const Matrix& x, const std::vector<int>& y, int n_classes,
                   const ElmConfig& config, uint64_t seed);

// Score evaluation per family (rows of x must be preprocessed already).
Matrix svm_scores(const SvmModel& m, const Matrix& x, int n_classes);
Matrix knn_scores(const KnnModel& m, const Matrix& x, int n_classes);
Matrix forest_scores(const ForestModel& m, const Matrix& x, int n_classes);
Matrix mlp_scores(const MlpModel& m, const Matrix& x, int n_classes);
Matrix elm_scores(const ElmModel& m, const Matrix& x, int n_classes);

/// MLP loss/gradient evaluation on one batch, exposed so tests can check
/// the analytic gradient against finite differences.
struct MlpGradients {
  double loss = 0.0;
  std::vector<Matrix> d_weights;
  std::vector<Eigen::VectorXd> d_biases;
};
MlpGradients mlp_loss_and_gradients(const MlpModel& model, const Matrix& x,
                                    const std::vector<int>& y, double alpha);

}  // namespace cipherid::classifiers
