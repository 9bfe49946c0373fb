#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cipherid/common.hpp"

namespace cipherid::corpus {

/// English text reduced to the 26-letter alphabet. Immutable once built.
struct NormalizedCorpus {
  std::string letters;        // A..Z only
  std::string source_digest;  // content hash of the raw input
  size_t size() const { return letters.size(); }
};

struct PlaintextWindow {
  std::string text;
  size_t offset = 0;
};

enum class SampleMode { kFixed, kRandom };

/// Keeps exactly the ASCII letters of the input, uppercased, in order.
/// Throws CorpusError when nothing survives.
NormalizedCorpus normalize(std::string_view raw);

NormalizedCorpus load_file(const std::filesystem::path& path);

/// Fixed mode: consecutive non-overlapping windows from offset 0.
/// Random mode: offsets drawn uniformly with replacement, seeded.
std::vector<PlaintextWindow> sample_windows(const NormalizedCorpus& corpus,
                                            size_t count, size_t length,
                                            SampleMode mode, uint64_t seed);

}  // namespace cipherid::corpus
