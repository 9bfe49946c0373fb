#include "cipherid/corpus.hpp"

#include <fstream>
#include <sstream>

#include "cipherid/rng.hpp"

namespace cipherid::corpus {

NormalizedCorpus normalize(std::string_view raw) {
  NormalizedCorpus out;
  out.letters.reserve(raw.size());
  for (char c : raw) {
    if (c >= 'A' && c <= 'Z') {
      out.letters.push_back(c);
    } else if (c >= 'a' && c <= 'z') {
      out.letters.push_back(static_cast<char>(c - 'a' + 'A'));
    }
    // Everything else (digits, punctuation, non-ASCII) is dropped.
  }
  if (out.letters.empty()) {
    throw CorpusError("corpus is empty after normalization");
  }
  out.source_digest = fnv1a_hex(raw);
  return out;
}

NormalizedCorpus load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusError("cannot open corpus file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return normalize(buf.str());
}

std::vector<PlaintextWindow> sample_windows(const NormalizedCorpus& corpus,
                                            size_t count, size_t length,
                                            SampleMode mode, uint64_t seed) {
  if (length == 0 || count == 0) {
    throw CorpusError("window count and length must be positive");
  }
  if (corpus.size() < length) {
    throw CorpusError("corpus too short: " + std::to_string(corpus.size()) +
                      " letters, window needs " + std::to_string(length));
  }
  std::vector<PlaintextWindow> out;
  out.reserve(count);
  if (mode == SampleMode::kFixed) {
    if (corpus.size() < count * length) {
      throw CorpusError("corpus too short for " + std::to_string(count) +
                        " fixed windows of length " + std::to_string(length));
    }
    for (size_t i = 0; i < count; ++i) {
      size_t off = i * length;
      out.push_back({corpus.letters.substr(off, length), off});
    }
  } else {
    Rng rng(derive_seed(seed, "corpus.windows"));
    uint64_t span = corpus.size() - length + 1;
    for (size_t i = 0; i < count; ++i) {
      size_t off = rng.uniform(span);
      out.push_back({corpus.letters.substr(off, length), off});
    }
  }
  return out;
}

}  // namespace cipherid::corpus
