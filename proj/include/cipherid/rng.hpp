#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace cipherid {

/// Deterministic random source. The engine is std::mt19937_64, whose
/// output stream is fixed by the standard; all distribution logic is
/// implemented here so results are identical across platforms and
/// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t uniform(uint64_t n);

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform_real();

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = uniform(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// First k entries of a random permutation of {0..n-1}.
  std::vector<int> sample_indices(int n, int k);

 private:
  std::mt19937_64 engine_;
};

/// Stable sub-seed derivation: hashes the tag and mix-in values into the
/// base seed so independent components get independent streams.
uint64_t derive_seed(uint64_t base, std::string_view tag);
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t a);
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t a,
                     uint64_t b);

/// FNV-1a 64-bit content hash, reported as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace cipherid
