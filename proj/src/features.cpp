#include "cipherid/features.hpp"

#include <fstream>

namespace cipherid::features {

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::kHistogram: return "histogram";
    case Kind::kDigram: return "digram";
    case Kind::kSequence: return "sequence";
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  if (name == "histogram" || name == "hist") return Kind::kHistogram;
  if (name == "digram") return Kind::kDigram;
  if (name == "sequence" || name == "seq") return Kind::kSequence;
  return std::nullopt;
}

namespace {

void require_letters(std::string_view text, size_t minimum) {
  if (text.size() < minimum) {
    throw Error("text too short for feature extraction: " +
                std::to_string(text.size()) + " < " + std::to_string(minimum));
  }
  for (char c : text) {
    if (!is_cipher_letter(c)) throw Error("non-alphabet symbol in text");
  }
}

}  // namespace

FeatureVector histogram(std::string_view text) {
  require_letters(text, 1);
  FeatureVector out{Kind::kHistogram, std::vector<double>(26, 0.0)};
  for (char c : text) out.values[letter_index(c)] += 1.0;
  for (double& v : out.values) v /= static_cast<double>(text.size());
  return out;
}

FeatureVector digram(std::string_view text) {
  require_letters(text, 2);
  FeatureVector out{Kind::kDigram, std::vector<double>(676, 0.0)};
  for (size_t i = 0; i + 1 < text.size(); ++i) {
    out.values[letter_index(text[i]) * 26 + letter_index(text[i + 1])] += 1.0;
  }
  for (double& v : out.values) v /= static_cast<double>(text.size() - 1);
  return out;
}

FeatureVector sequence(std::string_view text) {
  require_letters(text, 1);
  FeatureVector out{Kind::kSequence, std::vector<double>(text.size(), 0.0)};
  for (size_t i = 0; i < text.size(); ++i) {
    out.values[i] = static_cast<double>(letter_index(text[i]));
  }
  return out;
}

FeatureVector extract(std::string_view text, Kind kind) {
  switch (kind) {
    case Kind::kHistogram: return histogram(text);
    case Kind::kDigram: return digram(text);
    case Kind::kSequence: return sequence(text);
  }
  throw Error("unknown feature kind");
}

FeatureVector truncate_and_extract(std::string_view text, size_t length,
                                   Kind kind) {
  if (length > text.size()) {
    throw Error("truncation length exceeds the text");
  }
  return extract(text.substr(0, length), kind);
}

Matrix batch(const std::vector<std::string_view>& texts, Kind kind,
             size_t truncate_to) {
  if (texts.empty()) throw Error("no texts to featurize");
  size_t len = truncate_to ? truncate_to : texts.front().size();
  size_t dim = kind == Kind::kHistogram ? 26
               : kind == Kind::kDigram  ? 676
                                        : len;
  Matrix out(static_cast<Eigen::Index>(texts.size()),
             static_cast<Eigen::Index>(dim));
  for (size_t r = 0; r < texts.size(); ++r) {
    FeatureVector f = truncate_to
                          ? truncate_and_extract(texts[r], truncate_to, kind)
                          : extract(texts[r], kind);
    if (f.dim() != dim) throw Error("inconsistent feature dimensions in batch");
    for (size_t c = 0; c < dim; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          f.values[c];
    }
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Matrix& features,
               const std::vector<int>& labels,
               const std::vector<std::string>& label_names) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw Error("label count does not match feature rows");
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "label";
  for (Eigen::Index c = 0; c < features.cols(); ++c) out << ",f" << c;
  out << "\n";
  out.precision(17);
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    out << label_names.at(labels[r]);
    for (Eigen::Index c = 0; c < features.cols(); ++c) {
      out << ',' << features(r, c);
    }
    out << "\n";
  }
}

}  // namespace cipherid::features
