#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cipherid/common.hpp"

namespace cipherid::features {

using Matrix = Eigen::MatrixXd;

enum class Kind { kHistogram, kDigram, kSequence };

std::string_view to_string(Kind k);
std::optional<Kind> kind_from_string(std::string_view name);

struct FeatureVector {
  Kind kind;
  std::vector<double> values;
  size_t dim() const { return values.size(); }
};

/// Letter frequencies, normalized to sum 1. dim 26.
FeatureVector histogram(std::string_view text);

/// Overlapping letter-pair frequencies, normalized over the |text|-1
/// windows. dim 676.
FeatureVector digram(std::string_view text);

/// Raw letter indices (A=0..Z=25). dim |text|.
FeatureVector sequence(std::string_view text);

FeatureVector extract(std::string_view text, Kind kind);

/// Features of the length-L prefix. Throws when L exceeds the text.
FeatureVector truncate_and_extract(std::string_view text, size_t length,
                                   Kind kind);

/// One row per text, all with the same kind (and length for sequences).
Matrix batch(const std::vector<std::string_view>& texts, Kind kind,
             size_t truncate_to = 0);

/// CSV with a header "label,f0,...,f{d-1}".
void write_csv(const std::filesystem::path& path, const Matrix& features,
               const std::vector<int>& labels,
               const std::vector<std::string>& label_names);

}  // namespace cipherid::features
