#include "cipherid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "cipherid/rng.hpp"

namespace cipherid::eval {

using classifiers::Activation;
using classifiers::Criterion;
using classifiers::ElmConfig;
using classifiers::ForestConfig;
using classifiers::Kernel;
using classifiers::KnnConfig;
using classifiers::Metric;
using classifiers::MlpConfig;
using classifiers::Model;
using classifiers::Solver;
using classifiers::SvmConfig;
using classifiers::VoteWeights;
using features::Kind;

const std::vector<std::string> kCipherNames = {"enigma", "m209", "purple",
                                               "sigaba", "typex"};

Split stratified_split(const std::vector<int>& labels, int n_classes,
                       const SplitSpec& spec) {
  std::vector<std::vector<int>> by_class(n_classes);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= n_classes) {
      throw Error("label out of range");
    }
    by_class[labels[i]].push_back(static_cast<int>(i));
  }
  Split out;
  for (int c = 0; c < n_classes; ++c) {
    auto& idx = by_class[c];
    if (idx.size() < 2) {
      throw Error("class " + std::to_string(c) + " has fewer than 2 samples");
    }
    Rng rng(derive_seed(spec.seed, "split", c));
    rng.shuffle(idx);
    size_t n_train = static_cast<size_t>(
        std::floor(spec.train_fraction * static_cast<double>(idx.size()) + 0.5));
    n_train = std::clamp<size_t>(n_train, 1, idx.size() - 1);
    for (size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? out.train_idx : out.test_idx).push_back(idx[i]);
    }
  }
  std::sort(out.train_idx.begin(), out.train_idx.end());
  std::sort(out.test_idx.begin(), out.test_idx.end());
  return out;
}

EvaluationReport metrics(const std::vector<int>& y_true,
                         const std::vector<int>& y_pred, int n_classes) {
  if (y_true.size() != y_pred.size()) {
    throw Error("prediction length mismatch");
  }
  EvaluationReport out;
  out.confusion = Eigen::MatrixXi::Zero(n_classes, n_classes);
  for (size_t i = 0; i < y_true.size(); ++i) {
    out.confusion(y_true[i], y_pred[i]) += 1;
  }
  int total = static_cast<int>(y_true.size());
  int correct = 0;
  for (int c = 0; c < n_classes; ++c) correct += out.confusion(c, c);
  out.accuracy = total > 0 ? static_cast<double>(correct) / total : 0.0;
  out.per_class.resize(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    ClassMetrics& m = out.per_class[c];
    int tp = out.confusion(c, c);
    int pred = out.confusion.col(c).sum();
    int truth = out.confusion.row(c).sum();
    m.support = truth;
    if (pred == 0 || truth == 0) m.zero_division = pred == 0 || truth == 0;
    m.precision = pred > 0 ? static_cast<double>(tp) / pred : 0.0;
    m.recall = truth > 0 ? static_cast<double>(tp) / truth : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
  }
  return out;
}

// ------------------------------------------------- tuned table and grids

Hyperparameters tuned_default(Family family, Kind kind) {
  Hyperparameters hp;
  switch (family) {
    case Family::kSvm: {
      SvmConfig c;
      c.kernel = Kernel::kRbf;
      if (kind == Kind::kHistogram) {
        c.c = 100.0;
        c.gamma = 0.001;
      } else if (kind == Kind::kDigram) {
        c.c = 1.0;
        c.gamma = 0.001;
      } else {
        c.c = 1.0;
        c.gamma = 0.0001;
      }
      hp.config = c;
      break;
    }
    case Family::kKnn: {
      KnnConfig c;
      c.weights = VoteWeights::kUniform;
      if (kind == Kind::kHistogram) {
        c.k = 83;
        c.metric = Metric::kEuclidean;
      } else if (kind == Kind::kDigram) {
        c.k = 98;
        c.metric = Metric::kEuclidean;
      } else {
        c.k = 74;
        c.metric = Metric::kManhattan;
      }
      hp.config = c;
      break;
    }
    case Family::kForest: {
      ForestConfig c;
      c.max_depth = 8;
      c.criterion = Criterion::kGini;
      c.n_estimators = kind == Kind::kHistogram ? 192
                       : kind == Kind::kDigram  ? 197
                                                : 177;
      hp.config = c;
      break;
    }
    case Family::kMlp: {
      MlpConfig c;
      c.hidden = {500};
      c.activation =
          kind == Kind::kSequence ? Activation::kTanh : Activation::kRelu;
      c.alpha = 1e-4;
      c.max_iter = 200;
      c.solver = Solver::kAdam;
      hp.config = c;
      break;
    }
    case Family::kElm: {
      ElmConfig c;
      if (kind == Kind::kHistogram) {
        c.hidden_neurons = 133;
        c.activation = Activation::kRelu;
      } else if (kind == Kind::kDigram) {
        c.hidden_neurons = 9696;  // tuned value sits outside the 1..1000 grid
        c.activation = Activation::kTanh;
      } else {
        c.hidden_neurons = 995;
        c.activation = Activation::kTanh;
      }
      hp.config = c;
      break;
    }
  }
  return hp;
}

std::vector<Hyperparameters> default_grid(Family family) {
  std::vector<Hyperparameters> grid;
  auto add = [&](auto config) {
    Hyperparameters hp;
    hp.config = config;
    grid.push_back(hp);
  };
  switch (family) {
    case Family::kSvm:
      for (double c : {1.0, 10.0, 100.0, 1000.0}) {
        for (double gamma : {0.001, 0.0001}) {
          for (Kernel k : {Kernel::kLinear, Kernel::kPoly, Kernel::kRbf,
                           Kernel::kSigmoid}) {
            add(SvmConfig{c, gamma, k});
          }
        }
      }
      break;
    case Family::kKnn:
      for (int k = 1; k <= 200; ++k) {
        for (Metric m : {Metric::kEuclidean, Metric::kManhattan,
                         Metric::kMinkowski3}) {
          for (VoteWeights w : {VoteWeights::kUniform, VoteWeights::kDistance}) {
            add(KnnConfig{k, m, w});
          }
        }
      }
      break;
    case Family::kForest:
      for (int n = 1; n <= 200; ++n) {
        for (int depth : {4, 5, 6, 7, 8}) {
          for (Criterion c : {Criterion::kGini, Criterion::kEntropy}) {
            add(ForestConfig{n, depth, c});
          }
        }
      }
      break;
    case Family::kMlp:
      for (Activation a : {Activation::kTanh, Activation::kRelu}) {
        for (double alpha : {0.0001, 0.05}) {
          for (const auto& hidden : std::vector<std::vector<int>>{
                   {100, 200, 15}, {150, 100, 50}, {500}}) {
            for (int iter : {200, 500, 1000}) {
              for (Solver s : {Solver::kSgd, Solver::kAdam}) {
                add(MlpConfig{hidden, a, alpha, iter, s});
              }
            }
          }
        }
      }
      break;
    case Family::kElm:
      for (int h = 1; h <= 1000; ++h) {
        for (Activation a : {Activation::kRelu, Activation::kSigmoid,
                             Activation::kTanh}) {
          add(ElmConfig{h, a});
        }
      }
      break;
  }
  return grid;
}

// ------------------------------------------------------------ grid search

GridResult grid_search(const Matrix& x, const std::vector<int>& y,
                       int n_classes, const std::vector<Hyperparameters>& grid,
                       int folds, uint64_t seed) {
  if (grid.empty()) throw Error("empty hyperparameter grid");
  if (folds < 2) throw Error("cross-validation needs at least 2 folds");

  // Stratified fold assignment, fixed across all grid points.
  std::vector<int> fold_of(y.size());
  {
    std::vector<std::vector<int>> by_class(n_classes);
    for (size_t i = 0; i < y.size(); ++i) {
      by_class[y[i]].push_back(static_cast<int>(i));
    }
    for (int c = 0; c < n_classes; ++c) {
      auto& idx = by_class[c];
      Rng rng(derive_seed(seed, "cv.fold", c));
      rng.shuffle(idx);
      for (size_t i = 0; i < idx.size(); ++i) {
        fold_of[idx[i]] = static_cast<int>(i % folds);
      }
    }
  }

  GridResult out;
  out.table.resize(grid.size());
  for (size_t g = 0; g < grid.size(); ++g) {
    GridPoint& point = out.table[g];
    point.hp = grid[g];
    try {
      double accuracy_sum = 0.0;
      for (int fold = 0; fold < folds; ++fold) {
        std::vector<int> train_rows, val_rows;
        for (size_t i = 0; i < y.size(); ++i) {
          (fold_of[i] == fold ? val_rows : train_rows)
              .push_back(static_cast<int>(i));
        }
        Matrix train_x(train_rows.size(), x.cols());
        Matrix val_x(val_rows.size(), x.cols());
        std::vector<int> train_y(train_rows.size()), val_y(val_rows.size());
        for (size_t i = 0; i < train_rows.size(); ++i) {
          train_x.row(i) = x.row(train_rows[i]);
          train_y[i] = y[train_rows[i]];
        }
        for (size_t i = 0; i < val_rows.size(); ++i) {
          val_x.row(i) = x.row(val_rows[i]);
          val_y[i] = y[val_rows[i]];
        }
        Model model = classifiers::train(train_x, train_y, n_classes,
                                         grid[g], derive_seed(seed, "cv", fold));
        auto pred = model.predict(val_x);
        accuracy_sum += metrics(val_y, pred, n_classes).accuracy;
      }
      point.cv_accuracy = accuracy_sum / folds;
    } catch (const std::exception& e) {
      point.error = e.what();
      point.cv_accuracy = -1.0;
    }
    if (point.error.empty() &&
        (out.best_index < 0 ||
         point.cv_accuracy > out.table[out.best_index].cv_accuracy)) {
      out.best_index = static_cast<int>(g);
    }
  }
  if (out.best_index < 0) {
    throw Error("every grid point failed: " + out.table.front().error);
  }
  return out;
}

// ---------------------------------------------------------- suite / study

namespace {

Matrix rows_of(const Matrix& x, const std::vector<int>& rows) {
  Matrix out(rows.size(), x.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(i) = x.row(rows[i]);
  return out;
}

std::vector<int> labels_of(const std::vector<int>& y,
                           const std::vector<int>& rows) {
  std::vector<int> out(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) out[i] = y[rows[i]];
  return out;
}

}  // namespace

std::vector<SuiteCell> scenario_suite(const dataset::Dataset& data,
                                      const std::vector<Family>& families,
                                      const std::vector<Kind>& kinds,
                                      const SplitSpec& split_spec,
                                      uint64_t train_seed,
                                      const HyperOverride& override) {
  auto labels = data.labels();
  Split split = stratified_split(labels, kCipherCount, split_spec);
  auto texts = data.texts();

  std::vector<SuiteCell> cells;
  for (Kind kind : kinds) {
    Matrix all = features::batch(texts, kind);
    Matrix train_x = rows_of(all, split.train_idx);
    Matrix test_x = rows_of(all, split.test_idx);
    auto train_y = labels_of(labels, split.train_idx);
    auto test_y = labels_of(labels, split.test_idx);
    for (Family family : families) {
      SuiteCell cell;
      cell.family = family;
      cell.kind = kind;
      std::optional<Hyperparameters> hp;
      if (override) hp = override(family, kind);
      cell.hp = hp ? *hp : tuned_default(family, kind);
      try {
        Model model = classifiers::train(
            train_x, train_y, kCipherCount, cell.hp,
            derive_seed(train_seed, "suite", static_cast<uint64_t>(family),
                        static_cast<uint64_t>(kind)));
        cell.report = metrics(test_y, model.predict(test_x), kCipherCount);
        cell.report.model_description = cell.hp.describe();
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<LengthPoint> length_study(const dataset::Dataset& data,
                                      const std::vector<int>& lengths,
                                      const std::vector<Family>& families,
                                      Kind kind, const SplitSpec& split_spec,
                                      uint64_t train_seed) {
  if (kind != Kind::kDigram && kind != Kind::kSequence) {
    throw Error("length study runs on digram or sequence features");
  }
  size_t full = data.messages.empty() ? 0 : data.messages.front().length();
  for (int l : lengths) {
    if (l <= 1 || static_cast<size_t>(l) > full) {
      throw Error("length " + std::to_string(l) + " exceeds the messages");
    }
  }
  auto labels = data.labels();
  Split split = stratified_split(labels, kCipherCount, split_spec);
  auto texts = data.texts();
  auto train_y = labels_of(labels, split.train_idx);
  auto test_y = labels_of(labels, split.test_idx);

  std::vector<LengthPoint> out;
  for (Family family : families) {
    Hyperparameters hp = tuned_default(family, kind);
    uint64_t seed = derive_seed(train_seed, "length", static_cast<uint64_t>(family));
    if (kind == Kind::kDigram) {
      // One model trained at full length; the 676-dim feature space is
      // length-independent, so shorter messages reuse it.
      Matrix all = features::batch(texts, kind);
      Model model = classifiers::train(rows_of(all, split.train_idx), train_y,
                                       kCipherCount, hp, seed);
      for (int l : lengths) {
        Matrix test_x(split.test_idx.size(), 676);
        for (size_t i = 0; i < split.test_idx.size(); ++i) {
          auto f = features::truncate_and_extract(texts[split.test_idx[i]],
                                                  static_cast<size_t>(l), kind);
          for (int c = 0; c < 676; ++c) test_x(i, c) = f.values[c];
        }
        out.push_back(
            {l, family,
             metrics(test_y, model.predict(test_x), kCipherCount).accuracy});
      }
    } else {
      // The feature length changes, so each length needs a fresh model,
      // keeping the full-length tuned hyperparameters.
      for (int l : lengths) {
        Matrix train_x = features::batch([&] {
          std::vector<std::string_view> v;
          for (int i : split.train_idx) v.push_back(texts[i]);
          return v;
        }(), kind, static_cast<size_t>(l));
        Matrix test_x = features::batch([&] {
          std::vector<std::string_view> v;
          for (int i : split.test_idx) v.push_back(texts[i]);
          return v;
        }(), kind, static_cast<size_t>(l));
        Model model =
            classifiers::train(train_x, train_y, kCipherCount, hp,
                               derive_seed(seed, "len", static_cast<uint64_t>(l)));
        out.push_back(
            {l, family,
             metrics(test_y, model.predict(test_x), kCipherCount).accuracy});
      }
    }
  }
  return out;
}

// -------------------------------------------------------------- reports

void write_report(const std::filesystem::path& path,
                  const EvaluationReport& report,
                  const std::vector<std::string>& class_names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "model: " << report.model_description << "\n";
  out << "accuracy: " << report.accuracy << "\n\n";
  out << "class,precision,recall,f1,support\n";
  for (size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    out << class_names.at(c) << ',' << m.precision << ',' << m.recall << ','
        << m.f1 << ',' << m.support;
    if (m.zero_division) out << ",zero-division";
    out << "\n";
  }
}

void write_confusion_csv(const std::filesystem::path& path,
                         const EvaluationReport& report,
                         const std::vector<std::string>& class_names) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "true\\pred";
  for (const auto& name : class_names) out << ',' << name;
  out << "\n";
  for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
    out << class_names.at(r);
    for (Eigen::Index c = 0; c < report.confusion.cols(); ++c) {
      out << ',' << report.confusion(r, c);
    }
    out << "\n";
  }
}

void write_suite_csv(const std::filesystem::path& path,
                     const std::vector<SuiteCell>& cells) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "model,feature,accuracy,config,error\n";
  for (const auto& cell : cells) {
    out << to_string(cell.family) << ',' << features::to_string(cell.kind)
        << ',';
    if (cell.ok()) out << cell.report.accuracy;
    out << ',' << '"' << cell.hp.describe() << '"' << ',' << cell.error
        << "\n";
  }
}

void write_length_csv(const std::filesystem::path& path,
                      const std::vector<LengthPoint>& points) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "length,model,accuracy\n";
  for (const auto& p : points) {
    out << p.length << ',' << to_string(p.family) << ',' << p.accuracy << "\n";
  }
}

void write_grid_csv(const std::filesystem::path& path,
                    const GridResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "config,cv_accuracy,selected,error\n";
  for (size_t i = 0; i < result.table.size(); ++i) {
    const auto& p = result.table[i];
    out << '"' << p.hp.describe() << '"' << ',';
    if (p.error.empty()) out << p.cv_accuracy;
    out << ',' << (static_cast<int>(i) == result.best_index ? "yes" : "") << ','
        << p.error << "\n";
  }
}

}  // namespace cipherid::eval
