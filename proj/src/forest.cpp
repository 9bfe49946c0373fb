#include <algorithm>
#include <cmath>
#include <numeric>

#include "cipherid/classifiers.hpp"
#include "cipherid/rng.hpp"
#include "cipherid/threading.hpp"

namespace cipherid::classifiers {

namespace {

double impurity(const std::vector<double>& counts, double total,
                Criterion criterion) {
  if (total <= 0.0) return 0.0;
  double out = criterion == Criterion::kGini ? 1.0 : 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    double p = c / total;
    if (criterion == Criterion::kGini) {
      out -= p * p;
    } else {
      out -= p * std::log2(p);
    }
  }
  return out;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const std::vector<int>& y, int n_classes,
              const ForestConfig& config, uint64_t tree_seed)
      : x_(x), y_(y), n_classes_(n_classes), config_(config),
        tree_seed_(tree_seed) {
    n_features_ = static_cast<int>(x.cols());
    n_sub_ = static_cast<int>(
        std::ceil(std::sqrt(static_cast<double>(n_features_))));
    feature_pool_.resize(n_features_);
    std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
  }

  Tree build(std::vector<int> samples) {
    Tree tree;
    grow(tree, std::move(samples), 0, 1);
    return tree;
  }

 private:
  std::vector<double> class_counts(const std::vector<int>& samples) const {
    std::vector<double> counts(n_classes_, 0.0);
    for (int s : samples) counts[y_[s]] += 1.0;
    return counts;
  }

  /// Best threshold split over a fresh sqrt(d) feature subset. The subset
  /// is keyed to the node's position, so a deeper depth limit refines the
  /// shallower tree instead of reshuffling it.
  Split find_split(const std::vector<int>& samples,
                   const std::vector<double>& counts, double node_impurity,
                   uint64_t path) {
    Rng rng(derive_seed(tree_seed_, "node", path));
    // Partial Fisher-Yates over the shared pool: first n_sub_ entries.
    for (int i = 0; i < n_sub_; ++i) {
      int j = i + static_cast<int>(
                      rng.uniform(static_cast<uint64_t>(n_features_ - i)));
      std::swap(feature_pool_[i], feature_pool_[j]);
    }
    Split best;
    double total = static_cast<double>(samples.size());
    std::vector<std::pair<double, int>> values(samples.size());
    std::vector<double> left(n_classes_);
    for (int f = 0; f < n_sub_; ++f) {
      int feature = feature_pool_[f];
      for (size_t i = 0; i < samples.size(); ++i) {
        values[i] = {x_(samples[i], feature), y_[samples[i]]};
      }
      std::sort(values.begin(), values.end());
      std::fill(left.begin(), left.end(), 0.0);
      double n_left = 0.0;
      for (size_t i = 0; i + 1 < values.size(); ++i) {
        left[values[i].second] += 1.0;
        n_left += 1.0;
        if (values[i].first == values[i + 1].first) continue;
        double n_right = total - n_left;
        double imp_left = impurity_partial(left, n_left);
        std::vector<double> right(n_classes_);
        for (int c = 0; c < n_classes_; ++c) right[c] = counts[c] - left[c];
        double imp_right = impurity(right, n_right, config_.criterion);
        double gain = node_impurity -
                      (n_left * imp_left + n_right * imp_right) / total;
        if (gain > best.gain + 1e-15) {
          best.feature = feature;
          best.threshold = 0.5 * (values[i].first + values[i + 1].first);
          best.gain = gain;
        }
      }
    }
    return best;
  }

  double impurity_partial(const std::vector<double>& counts, double total) {
    return impurity(counts, total, config_.criterion);
  }

  int grow(Tree& tree, std::vector<int> samples, int depth, uint64_t path) {
    int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto counts = class_counts(samples);
    tree.nodes[node_id].class_counts = counts;

    double node_impurity =
        impurity(counts, static_cast<double>(samples.size()), config_.criterion);
    bool pure = node_impurity <= 0.0;
    if (depth >= config_.max_depth || pure || samples.size() < 2) {
      return node_id;
    }
    Split split = find_split(samples, counts, node_impurity, path);
    if (split.feature < 0) return node_id;

    std::vector<int> left, right;
    for (int s : samples) {
      (x_(s, split.feature) <= split.threshold ? left : right).push_back(s);
    }
    if (left.empty() || right.empty()) return node_id;
    samples.clear();
    samples.shrink_to_fit();

    tree.nodes[node_id].feature = split.feature;
    tree.nodes[node_id].threshold = split.threshold;
    int l = grow(tree, std::move(left), depth + 1, 2 * path);
    tree.nodes[node_id].left = l;
    int r = grow(tree, std::move(right), depth + 1, 2 * path + 1);
    tree.nodes[node_id].right = r;
    return node_id;
  }

  const Matrix& x_;
  const std::vector<int>& y_;
  int n_classes_;
  const ForestConfig& config_;
  uint64_t tree_seed_;
  int n_features_ = 0;
  int n_sub_ = 0;
  std::vector<int> feature_pool_;
};

}  // namespace

ForestModel train_forest(const Matrix& x, const std::vector<int>& y,
                         int n_classes, const ForestConfig& config,
                         uint64_t seed, int threads) {
  if (config.n_estimators < 1) throw Error("n_estimators must be positive");
  if (config.max_depth <= 0) throw Error("max_depth must be positive");
  ForestModel model;
  model.config = config;
  model.trees.resize(config.n_estimators);
  size_t n = y.size();
  parallel_for(model.trees.size(), threads, [&](size_t t) {
    // Tree t draws its size-n bootstrap sample (with replacement) from
    // Rng(derive_seed(seed, "forest.tree", t)); per-node feature subsets
    // are keyed separately to the node path.
    uint64_t tree_seed = derive_seed(seed, "forest.tree", t);
    Rng rng(tree_seed);
    std::vector<int> samples(n);
    for (auto& s : samples) {
      s = static_cast<int>(rng.uniform(static_cast<uint64_t>(n)));
    }
    TreeBuilder builder(x, y, n_classes, config, tree_seed);
    model.trees[t] = builder.build(std::move(samples));
  });
  return model;
}

Matrix forest_scores(const ForestModel& m, const Matrix& x, int n_classes) {
  Matrix scores = Matrix::Zero(x.rows(), n_classes);
  for (const auto& tree : m.trees) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      int node = 0;
      while (tree.nodes[node].feature >= 0) {
        const TreeNode& nd = tree.nodes[node];
        node = x(i, nd.feature) <= nd.threshold ? nd.left : nd.right;
      }
      const auto& counts = tree.nodes[node].class_counts;
      // Majority class of the leaf; ties to the lowest class index.
      int best = 0;
      for (int c = 1; c < n_classes; ++c) {
        if (counts[c] > counts[best]) best = c;
      }
      scores(i, best) += 1.0;
    }
  }
  scores /= static_cast<double>(m.trees.size());
  return scores;
}

}  // namespace cipherid::classifiers
