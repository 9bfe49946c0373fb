#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cipherid/classifiers.hpp"
#include "cipherid/dataset.hpp"
#include "cipherid/features.hpp"

namespace cipherid::eval {

using classifiers::Family;
using classifiers::Hyperparameters;
using classifiers::Matrix;

struct SplitSpec {
  double train_fraction = 0.8;
  uint64_t seed = 0;
};

struct Split {
  std::vector<int> train_idx, test_idx;
};

/// Stratified, disjoint, reproducible. Throws on classes with fewer than
/// two samples.
Split stratified_split(const std::vector<int>& labels, int n_classes,
                       const SplitSpec& spec);

struct ClassMetrics {
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  int support = 0;
  bool zero_division = false;  // a denominator was zero and defined as 0
};

struct EvaluationReport {
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  Eigen::MatrixXi confusion;  // rows = true class, cols = predicted
  std::string model_description;
};

EvaluationReport metrics(const std::vector<int>& y_true,
                         const std::vector<int>& y_pred, int n_classes);

/// The tuned configuration for each (family, feature) cell of the
/// reference experiment table.
Hyperparameters tuned_default(Family family, features::Kind kind);

/// The full tested grid per family.
std::vector<Hyperparameters> default_grid(Family family);

struct GridPoint {
  Hyperparameters hp;
  double cv_accuracy = -1.0;  // negative when training failed
  std::string error;
};

struct GridResult {
  std::vector<GridPoint> table;  // in grid order
  int best_index = -1;
  const GridPoint& best() const { return table.at(best_index); }
};

/// Evaluates every grid point with stratified k-fold cross-validation on
/// the given training data. Ties keep the earliest grid point. Training
/// failures are recorded per point, not fatal (unless all points fail).
GridResult grid_search(const Matrix& x, const std::vector<int>& y,
                       int n_classes, const std::vector<Hyperparameters>& grid,
                       int folds, uint64_t seed);

struct SuiteCell {
  Family family;
  features::Kind kind;
  Hyperparameters hp;
  EvaluationReport report;
  std::string error;  // nonempty when the cell failed
  bool ok() const { return error.empty(); }
};

using HyperOverride = std::function<std::optional<Hyperparameters>(
    Family, features::Kind)>;

/// Trains and evaluates every (family, feature) cell on one shared
/// stratified split of the dataset.
std::vector<SuiteCell> scenario_suite(const dataset::Dataset& data,
                                      const std::vector<Family>& families,
                                      const std::vector<features::Kind>& kinds,
                                      const SplitSpec& split_spec,
                                      uint64_t train_seed,
                                      const HyperOverride& override = {});

struct LengthPoint {
  int length = 0;
  Family family = Family::kSvm;
  double accuracy = 0.0;
};

/// Accuracy as a function of ciphertext length. Digram features reuse the
/// model trained at full length; sequence features retrain per length
/// with the full-length tuned hyperparameters.
std::vector<LengthPoint> length_study(const dataset::Dataset& data,
                                      const std::vector<int>& lengths,
                                      const std::vector<Family>& families,
                                      features::Kind kind,
                                      const SplitSpec& split_spec,
                                      uint64_t train_seed);

// ------------------------------------------------------------ reporting

extern const std::vector<std::string> kCipherNames;

void write_report(const std::filesystem::path& path,
                  const EvaluationReport& report,
                  const std::vector<std::string>& class_names);
void write_confusion_csv(const std::filesystem::path& path,
                         const EvaluationReport& report,
                         const std::vector<std::string>& class_names);
void write_suite_csv(const std::filesystem::path& path,
                     const std::vector<SuiteCell>& cells);
void write_length_csv(const std::filesystem::path& path,
                      const std::vector<LengthPoint>& points);
void write_grid_csv(const std::filesystem::path& path,
                    const GridResult& result);

}  // namespace cipherid::eval
