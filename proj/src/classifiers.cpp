#include <cmath>
#include <cstring>
#include <fstream>

#include "cipherid/classifiers.hpp"

namespace cipherid::classifiers {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::kSvm: return "svm";
    case Family::kKnn: return "knn";
    case Family::kForest: return "rf";
    case Family::kMlp: return "mlp";
    case Family::kElm: return "elm";
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) {
  if (name == "svm") return Family::kSvm;
  if (name == "knn") return Family::kKnn;
  if (name == "rf" || name == "forest") return Family::kForest;
  if (name == "mlp") return Family::kMlp;
  if (name == "elm") return Family::kElm;
  return std::nullopt;
}

Family Hyperparameters::family() const {
  return static_cast<Family>(config.index());
}

bool Hyperparameters::standardize_effective() const {
  if (standardize) return *standardize;
  switch (family()) {
    case Family::kSvm:
    case Family::kMlp:
    case Family::kElm:
      return true;
    case Family::kKnn:
    case Family::kForest:
      return false;
  }
  return false;
}

namespace {

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::kLinear: return "linear";
    case Kernel::kPoly: return "poly";
    case Kernel::kRbf: return "rbf";
    case Kernel::kSigmoid: return "sigmoid";
  }
  return "?";
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kManhattan: return "manhattan";
    case Metric::kMinkowski3: return "minkowski";
  }
  return "?";
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
  }
  return "?";
}

std::string trim_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string Hyperparameters::describe() const {
  std::string out{to_string(family())};
  if (const auto* svm = std::get_if<SvmConfig>(&config)) {
    out += " C=" + trim_number(svm->c) + " gamma=" + trim_number(svm->gamma) +
           " kernel=" + std::string(kernel_name(svm->kernel));
  } else if (const auto* knn = std::get_if<KnnConfig>(&config)) {
    out += " k=" + std::to_string(knn->k) + " metric=" +
           std::string(metric_name(knn->metric)) +
           (knn->weights == VoteWeights::kUniform ? " weights=uniform"
                                                  : " weights=distance");
  } else if (const auto* rf = std::get_if<ForestConfig>(&config)) {
    out += " n=" + std::to_string(rf->n_estimators) +
           " depth=" + std::to_string(rf->max_depth) +
           (rf->criterion == Criterion::kGini ? " criterion=gini"
                                              : " criterion=entropy");
  } else if (const auto* mlp = std::get_if<MlpConfig>(&config)) {
    out += " hidden=(";
    for (size_t i = 0; i < mlp->hidden.size(); ++i) {
      out += (i ? "," : "") + std::to_string(mlp->hidden[i]);
    }
    out += ") act=" + std::string(activation_name(mlp->activation)) +
           " alpha=" + trim_number(mlp->alpha) +
           " iter=" + std::to_string(mlp->max_iter) +
           (mlp->solver == Solver::kAdam ? " solver=adam" : " solver=sgd");
  } else if (const auto* elm = std::get_if<ElmConfig>(&config)) {
    out += " neurons=" + std::to_string(elm->hidden_neurons) +
           " act=" + std::string(activation_name(elm->activation));
  }
  return out;
}

// ----------------------------------------------------------------- Model

Model::Model(Hyperparameters hp, uint64_t seed, int n_classes,
             Eigen::VectorXd means, Eigen::VectorXd scales, Fitted fitted)
    : hp_(std::move(hp)),
      seed_(seed),
      n_classes_(n_classes),
      means_(std::move(means)),
      scales_(std::move(scales)),
      fitted_(std::make_shared<const Fitted>(std::move(fitted))) {}

Matrix Model::preprocess(const Matrix& x) const {
  if (means_.size() == 0) return x;
  if (x.cols() != means_.size()) {
    throw Error("feature dimension mismatch: model expects " +
                std::to_string(means_.size()) + ", got " +
                std::to_string(x.cols()));
  }
  Matrix out = x;
  out.rowwise() -= means_.transpose();
  out.array().rowwise() /= scales_.transpose().array();
  return out;
}

Matrix Model::predict_scores(const Matrix& x) const {
  Matrix z = preprocess(x);
  switch (family()) {
    case Family::kSvm:
      return svm_scores(std::get<SvmModel>(*fitted_), z, n_classes_);
    case Family::kKnn: {
      const auto& m = std::get<KnnModel>(*fitted_);
      if (z.cols() != m.train_x.cols()) throw Error("feature dimension mismatch");
      return knn_scores(m, z, n_classes_);
    }
    case Family::kForest:
      return forest_scores(std::get<ForestModel>(*fitted_), z, n_classes_);
    case Family::kMlp: {
      const auto& m = std::get<MlpModel>(*fitted_);
      if (z.cols() != m.weights.front().rows()) {
        throw Error("feature dimension mismatch");
      }
      return mlp_scores(m, z, n_classes_);
    }
    case Family::kElm: {
      const auto& m = std::get<ElmModel>(*fitted_);
      if (z.cols() != m.hidden_weights.rows()) {
        throw Error("feature dimension mismatch");
      }
      return elm_scores(m, z, n_classes_);
    }
  }
  throw Error("unknown family");
}

std::vector<int> Model::predict(const Matrix& x) const {
  Matrix scores = predict_scores(x);
  std::vector<int> out(scores.rows());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    int best = 0;
    for (int c = 1; c < n_classes_; ++c) {
      if (scores(i, c) > scores(i, best)) best = c;
    }
    out[i] = best;
  }
  return out;
}

Model train(const Matrix& x, const std::vector<int>& y, int n_classes,
            const Hyperparameters& hp, uint64_t seed) {
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
    throw Error("label count does not match sample count");
  }
  Eigen::VectorXd means, scales;
  Matrix z;
  const Matrix* input = &x;
  if (hp.standardize_effective()) {
    means = x.colwise().mean();
    Matrix centered = x.rowwise() - means.transpose();
    scales = (centered.array().square().colwise().mean()).sqrt();
    for (Eigen::Index i = 0; i < scales.size(); ++i) {
      if (scales(i) == 0.0) scales(i) = 1.0;
    }
    z = centered.array().rowwise() / scales.transpose().array();
    input = &z;
  }
  Model::Fitted fitted;
  switch (hp.family()) {
    case Family::kSvm:
      fitted = train_svm(*input, y, n_classes, std::get<SvmConfig>(hp.config),
                         seed);
      break;
    case Family::kKnn:
      fitted = train_knn(*input, y, n_classes, std::get<KnnConfig>(hp.config));
      break;
    case Family::kForest:
      fitted = train_forest(*input, y, n_classes,
                            std::get<ForestConfig>(hp.config), seed);
      break;
    case Family::kMlp:
      fitted = train_mlp(*input, y, n_classes, std::get<MlpConfig>(hp.config),
                         seed);
      break;
    case Family::kElm:
      fitted = train_elm(*input, y, n_classes, std::get<ElmConfig>(hp.config),
                         seed);
      break;
  }
  return Model(hp, seed, n_classes, std::move(means), std::move(scales),
               std::move(fitted));
}

// -------------------------------------------------------- serialization

namespace {

constexpr char kMagic[4] = {'C', 'I', 'D', 'M'};
constexpr uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path)
      : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write model file " + path.string());
  }
  void u8(uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void i64(int64_t v) { u64(static_cast<uint64_t>(v)); }
  void f64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void vec(const Eigen::VectorXd& v) {
    i64(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) f64(v(i));
  }
  void mat(const Matrix& m) {
    i64(m.rows());
    i64(m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) f64(m(i, j));
    }
  }
  void ints(const std::vector<int>& v) {
    i64(static_cast<int64_t>(v.size()));
    for (int x : v) i64(x);
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path)
      : in_(path, std::ios::binary) {
    if (!in_) throw Error("cannot open model file " + path.string());
  }
  uint8_t u8() {
    int c = in_.get();
    if (c == EOF) throw ParseError("truncated model file");
    return static_cast<uint8_t>(c);
  }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(u8()) << (8 * i);
    return v;
  }
  int64_t i64() { return static_cast<int64_t>(u64()); }
  double f64() {
    uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  Eigen::VectorXd vec() {
    Eigen::VectorXd v(i64());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = f64();
    return v;
  }
  Matrix mat() {
    int64_t rows = i64(), cols = i64();
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = f64();
    }
    return m;
  }
  std::vector<int> ints() {
    std::vector<int> v(static_cast<size_t>(i64()));
    for (auto& x : v) x = static_cast<int>(i64());
    return v;
  }

 private:
  std::ifstream in_;
};

}  // namespace

void Model::save(const std::filesystem::path& path) const {
  Writer w(path);
  for (char c : kMagic) w.u8(static_cast<uint8_t>(c));
  w.u32(kFormatVersion);
  w.u8(static_cast<uint8_t>(family()));
  w.u8(hp_.standardize_effective() ? 1 : 0);
  w.u64(seed_);
  w.i64(n_classes_);
  w.vec(means_);
  w.vec(scales_);
  switch (family()) {
    case Family::kSvm: {
      const auto& m = std::get<SvmModel>(*fitted_);
      w.f64(m.config.c);
      w.f64(m.config.gamma);
      w.u8(static_cast<uint8_t>(m.config.kernel));
      w.i64(static_cast<int64_t>(m.machines.size()));
      for (const auto& bin : m.machines) {
        w.i64(bin.class_a);
        w.i64(bin.class_b);
        w.f64(bin.bias);
        w.mat(bin.support_vectors);
        w.vec(bin.dual_coef);
      }
      break;
    }
    case Family::kKnn: {
      const auto& m = std::get<KnnModel>(*fitted_);
      w.i64(m.config.k);
      w.u8(static_cast<uint8_t>(m.config.metric));
      w.u8(static_cast<uint8_t>(m.config.weights));
      w.mat(m.train_x);
      w.ints(m.train_y);
      break;
    }
    case Family::kForest: {
      const auto& m = std::get<ForestModel>(*fitted_);
      w.i64(m.config.n_estimators);
      w.i64(m.config.max_depth);
      w.u8(static_cast<uint8_t>(m.config.criterion));
      w.i64(static_cast<int64_t>(m.trees.size()));
      for (const auto& tree : m.trees) {
        w.i64(static_cast<int64_t>(tree.nodes.size()));
        for (const auto& node : tree.nodes) {
          w.i64(node.feature);
          w.f64(node.threshold);
          w.i64(node.left);
          w.i64(node.right);
          w.i64(static_cast<int64_t>(node.class_counts.size()));
          for (double c : node.class_counts) w.f64(c);
        }
      }
      break;
    }
    case Family::kMlp: {
      const auto& m = std::get<MlpModel>(*fitted_);
      w.i64(static_cast<int64_t>(m.config.hidden.size()));
      for (int h : m.config.hidden) w.i64(h);
      w.u8(static_cast<uint8_t>(m.config.activation));
      w.f64(m.config.alpha);
      w.i64(m.config.max_iter);
      w.u8(static_cast<uint8_t>(m.config.solver));
      w.i64(static_cast<int64_t>(m.weights.size()));
      for (size_t l = 0; l < m.weights.size(); ++l) {
        w.mat(m.weights[l]);
        w.vec(m.biases[l]);
      }
      break;
    }
    case Family::kElm: {
      const auto& m = std::get<ElmModel>(*fitted_);
      w.i64(m.config.hidden_neurons);
      w.u8(static_cast<uint8_t>(m.config.activation));
      w.mat(m.hidden_weights);
      w.vec(m.hidden_bias);
      w.mat(m.output_weights);
      break;
    }
  }
}

Model Model::load(const std::filesystem::path& path) {
  Reader r(path);
  for (char c : kMagic) {
    if (r.u8() != static_cast<uint8_t>(c)) {
      throw ParseError("not a model file: " + path.string());
    }
  }
  uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw ParseError("unsupported model format version " +
                     std::to_string(version));
  }
  Family family = static_cast<Family>(r.u8());
  bool standardize = r.u8() != 0;
  uint64_t seed = r.u64();
  int n_classes = static_cast<int>(r.i64());
  Eigen::VectorXd means = r.vec();
  Eigen::VectorXd scales = r.vec();

  Hyperparameters hp;
  hp.standardize = standardize;
  Fitted fitted;
  switch (family) {
    case Family::kSvm: {
      SvmModel m;
      m.config.c = r.f64();
      m.config.gamma = r.f64();
      m.config.kernel = static_cast<Kernel>(r.u8());
      int64_t count = r.i64();
      for (int64_t i = 0; i < count; ++i) {
        SvmBinary bin;
        bin.class_a = static_cast<int>(r.i64());
        bin.class_b = static_cast<int>(r.i64());
        bin.bias = r.f64();
        bin.support_vectors = r.mat();
        bin.dual_coef = r.vec();
        m.machines.push_back(std::move(bin));
      }
      hp.config = m.config;
      fitted = std::move(m);
      break;
    }
    case Family::kKnn: {
      KnnModel m;
      m.config.k = static_cast<int>(r.i64());
      m.config.metric = static_cast<Metric>(r.u8());
      m.config.weights = static_cast<VoteWeights>(r.u8());
      m.train_x = r.mat();
      m.train_y = r.ints();
      hp.config = m.config;
      fitted = std::move(m);
      break;
    }
    case Family::kForest: {
      ForestModel m;
      m.config.n_estimators = static_cast<int>(r.i64());
      m.config.max_depth = static_cast<int>(r.i64());
      m.config.criterion = static_cast<Criterion>(r.u8());
      int64_t count = r.i64();
      for (int64_t t = 0; t < count; ++t) {
        Tree tree;
        int64_t nodes = r.i64();
        for (int64_t n = 0; n < nodes; ++n) {
          TreeNode node;
          node.feature = static_cast<int>(r.i64());
          node.threshold = r.f64();
          node.left = static_cast<int>(r.i64());
          node.right = static_cast<int>(r.i64());
          int64_t k = r.i64();
          node.class_counts.resize(static_cast<size_t>(k));
          for (auto& c : node.class_counts) c = r.f64();
          tree.nodes.push_back(std::move(node));
        }
        m.trees.push_back(std::move(tree));
      }
      hp.config = m.config;
      fitted = std::move(m);
      break;
    }
    case Family::kMlp: {
      MlpModel m;
      int64_t layers = r.i64();
      m.config.hidden.resize(static_cast<size_t>(layers));
      for (auto& h : m.config.hidden) h = static_cast<int>(r.i64());
      m.config.activation = static_cast<Activation>(r.u8());
      m.config.alpha = r.f64();
      m.config.max_iter = static_cast<int>(r.i64());
      m.config.solver = static_cast<Solver>(r.u8());
      int64_t count = r.i64();
      for (int64_t l = 0; l < count; ++l) {
        m.weights.push_back(r.mat());
        m.biases.push_back(r.vec());
      }
      hp.config = m.config;
      fitted = std::move(m);
      break;
    }
    case Family::kElm: {
      ElmModel m;
      m.config.hidden_neurons = static_cast<int>(r.i64());
      m.config.activation = static_cast<Activation>(r.u8());
      m.hidden_weights = r.mat();
      m.hidden_bias = r.vec();
      m.output_weights = r.mat();
      hp.config = m.config;
      fitted = std::move(m);
      break;
    }
    default:
      throw ParseError("unknown model family tag");
  }
  return Model(std::move(hp), seed, n_classes, std::move(means),
               std::move(scales), std::move(fitted));
}

}  // namespace cipherid::classifiers
