#include <doctest.h>

#include "cipherid/corpus.hpp"
#include <set>

#include "cipherid/eval.hpp"
#include "cipherid/rng.hpp"

using namespace cipherid;
using namespace cipherid::eval;
using classifiers::ElmConfig;
using classifiers::KnnConfig;

TEST_CASE("stratified split at paper scale") {
  std::vector<int> labels(5000);
  for (int i = 0; i < 5000; ++i) labels[i] = i / 1000;
  Split s = stratified_split(labels, 5, {0.8, 3});
  CHECK(s.train_idx.size() == 4000);
  CHECK(s.test_idx.size() == 1000);
  std::array<int, 5> per_class{};
  for (int i : s.test_idx) ++per_class[labels[i]];
  for (int c : per_class) CHECK(c == 200);

  // Disjoint and reproducible.
  std::set<int> train(s.train_idx.begin(), s.train_idx.end());
  for (int i : s.test_idx) CHECK(train.count(i) == 0);
  Split again = stratified_split(labels, 5, {0.8, 3});
  CHECK(again.train_idx == s.train_idx);
  CHECK(again.test_idx == s.test_idx);
}

TEST_CASE("small stratified split") {
  std::vector<int> labels = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  Split s = stratified_split(labels, 2, {0.8, 0});
  CHECK(s.train_idx.size() == 8);
  CHECK(s.test_idx.size() == 2);
  std::array<int, 2> per_class{};
  for (int i : s.test_idx) ++per_class[labels[i]];
  CHECK(per_class[0] == 1);
  CHECK(per_class[1] == 1);

  std::vector<int> tiny = {0, 1, 1};
  CHECK_THROWS_AS(stratified_split(tiny, 2, {0.8, 0}), Error);
}

TEST_CASE("metrics match the hand-computed 2x2 example") {
  // Confusion [[8,2],[3,7]].
  std::vector<int> y_true, y_pred;
  auto emit = [&](int t, int p, int count) {
    for (int i = 0; i < count; ++i) {
      y_true.push_back(t);
      y_pred.push_back(p);
    }
  };
  emit(0, 0, 8);
  emit(0, 1, 2);
  emit(1, 0, 3);
  emit(1, 1, 7);
  auto r = metrics(y_true, y_pred, 2);
  CHECK(r.accuracy == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(r.per_class[0].precision == doctest::Approx(8.0 / 11).epsilon(1e-15));
  CHECK(r.per_class[0].recall == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(r.per_class[0].f1 == doctest::Approx(16.0 / 21).epsilon(1e-15));
  CHECK(r.per_class[1].precision == doctest::Approx(7.0 / 9).epsilon(1e-15));
  CHECK(r.per_class[1].recall == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(r.per_class[1].f1 == doctest::Approx(14.0 / 19).epsilon(1e-15));
  CHECK(r.per_class[0].support == 10);
  CHECK(r.confusion(0, 1) == 2);
}

TEST_CASE("metrics edge cases") {
  std::vector<int> t = {0, 1, 2, 3, 4}, p = t;
  auto perfect = metrics(t, p, 5);
  CHECK(perfect.accuracy == 1.0);
  for (const auto& m : perfect.per_class) CHECK(m.f1 == 1.0);

  std::vector<int> all_zero(t.size(), 0);
  auto degenerate = metrics(t, all_zero, 5);
  CHECK(degenerate.accuracy == doctest::Approx(0.2));
  CHECK(degenerate.per_class[1].precision == 0.0);
  CHECK(degenerate.per_class[1].zero_division);

  CHECK_THROWS_AS(metrics({0, 1}, {0}, 2), Error);
}

TEST_CASE("metrics are equivariant under class relabeling") {
  std::vector<int> y_true = {0, 0, 1, 1, 2, 2, 0, 1, 2, 2};
  std::vector<int> y_pred = {0, 1, 1, 2, 2, 0, 0, 1, 2, 1};
  auto base = metrics(y_true, y_pred, 3);
  int perm[3] = {2, 0, 1};
  std::vector<int> t2, p2;
  for (size_t i = 0; i < y_true.size(); ++i) {
    t2.push_back(perm[y_true[i]]);
    p2.push_back(perm[y_pred[i]]);
  }
  auto mapped = metrics(t2, p2, 3);
  CHECK(mapped.accuracy == base.accuracy);
  for (int c = 0; c < 3; ++c) {
    CHECK(mapped.per_class[perm[c]].f1 == base.per_class[c].f1);
    CHECK(mapped.confusion(perm[0], perm[1]) == base.confusion(0, 1));
  }
}

namespace {

void toy_data(classifiers::Matrix& x, std::vector<int>& y, int n = 40) {
  Rng rng(64);
  x.resize(n, 3);
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i % 2;
    for (int j = 0; j < 3; ++j) {
      x(i, j) = rng.uniform_real() + (y[i] ? 1.0 : 0.0);
    }
  }
}

}  // namespace

TEST_CASE("grid search selects the singleton and breaks ties first-wins") {
  classifiers::Matrix x;
  std::vector<int> y;
  toy_data(x, y);
  Hyperparameters hp;
  hp.config = KnnConfig{3};
  GridResult single = grid_search(x, y, 2, {hp}, 4, 9);
  CHECK(single.best_index == 0);

  // The same point twice: identical accuracy, first occurrence wins.
  GridResult dup = grid_search(x, y, 2, {hp, hp}, 4, 9);
  CHECK(dup.table[0].cv_accuracy == dup.table[1].cv_accuracy);
  CHECK(dup.best_index == 0);
}

TEST_CASE("grid search records failing points instead of failing") {
  classifiers::Matrix x;
  std::vector<int> y;
  toy_data(x, y);
  Hyperparameters bad;
  bad.config = KnnConfig{10000};  // k exceeds every fold
  Hyperparameters good;
  good.config = KnnConfig{3};
  GridResult r = grid_search(x, y, 2, {bad, good}, 4, 1);
  CHECK_FALSE(r.table[0].error.empty());
  CHECK(r.best_index == 1);
  CHECK(r.best().hp.describe() == good.describe());
}

TEST_CASE("grid search is reproducible") {
  classifiers::Matrix x;
  std::vector<int> y;
  toy_data(x, y);
  Hyperparameters a, b;
  a.config = KnnConfig{1};
  b.config = KnnConfig{9};
  auto r1 = grid_search(x, y, 2, {a, b}, 5, 33);
  auto r2 = grid_search(x, y, 2, {a, b}, 5, 33);
  CHECK(r1.best_index == r2.best_index);
  for (size_t i = 0; i < r1.table.size(); ++i) {
    CHECK(r1.table[i].cv_accuracy == r2.table[i].cv_accuracy);
  }
}

TEST_CASE("tuned defaults carry the reference table settings") {
  auto svm_seq = tuned_default(Family::kSvm, features::Kind::kSequence);
  CHECK(svm_seq.describe() == "svm C=1 gamma=0.0001 kernel=rbf");
  auto knn_hist = tuned_default(Family::kKnn, features::Kind::kHistogram);
  CHECK(knn_hist.describe() == "knn k=83 metric=euclidean weights=uniform");
  auto elm_digram = tuned_default(Family::kElm, features::Kind::kDigram);
  CHECK(std::get<ElmConfig>(elm_digram.config).hidden_neurons == 9696);
  auto rf_seq = tuned_default(Family::kForest, features::Kind::kSequence);
  CHECK(rf_seq.describe() == "rf n=177 depth=8 criterion=gini");
}

TEST_CASE("a small scenario suite produces well-formed cells") {
  auto corp = corpus::load_file(std::string(CIPHERID_REPO_DIR) +
                                "/data/corpus.txt");
  auto data = dataset::generate(corp, {false, false}, 10, 60, 4);
  // Keep the heavyweight families out of the smoke test.
  auto cells = scenario_suite(
      data, {Family::kKnn, Family::kForest, Family::kElm},
      {features::Kind::kHistogram}, {0.8, 1}, 5,
      [](Family f, features::Kind) -> std::optional<Hyperparameters> {
        Hyperparameters hp;
        if (f == Family::kKnn) hp.config = KnnConfig{3};
        else if (f == Family::kForest) hp.config = classifiers::ForestConfig{11, 4};
        else hp.config = ElmConfig{40, classifiers::Activation::kTanh};
        return hp;
      });
  REQUIRE(cells.size() == 3);
  for (const auto& cell : cells) {
    REQUIRE(cell.ok());
    CHECK(cell.report.accuracy >= 0.0);
    CHECK(cell.report.accuracy <= 1.0);
    CHECK(cell.report.confusion.sum() == 10);  // 2 test messages x 5 ciphers
    for (const auto& m : cell.report.per_class) CHECK(m.support == 2);
  }
}

TEST_CASE("length study output is structurally sound") {
  auto corp = corpus::load_file(std::string(CIPHERID_REPO_DIR) +
                                "/data/corpus.txt");
  auto data = dataset::generate(corp, {true, true}, 8, 80, 6);
  auto points = length_study(data, {80, 40}, {Family::kElm},
                             features::Kind::kSequence, {0.8, 2}, 3);
  REQUIRE(points.size() == 2);
  CHECK(points[0].length == 80);
  CHECK(points[1].length == 40);
  for (const auto& p : points) {
    CHECK(p.accuracy >= 0.0);
    CHECK(p.accuracy <= 1.0);
  }
  CHECK_THROWS_AS(length_study(data, {100}, {Family::kElm},
                               features::Kind::kSequence, {0.8, 2}, 3),
                  Error);
}
