#include "cipherid/rng.hpp"

#include <numeric>

namespace cipherid {

namespace {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a(std::string_view data, uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t s = seed;
  // Expand the seed so nearby seeds give unrelated streams.
  engine_.seed(splitmix64(s));
}

uint64_t Rng::uniform(uint64_t n) {
  // Modulo with rejection of the biased tail.
  uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double Rng::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::vector<int> Rng::sample_indices(int n, int k) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(uniform(static_cast<uint64_t>(n - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

uint64_t derive_seed(uint64_t base, std::string_view tag) {
  uint64_t s = base ^ fnv1a(tag);
  return splitmix64(s);
}

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t a) {
  uint64_t s = derive_seed(base, tag) ^ (a * 0x9e3779b97f4a7c15ULL + 1);
  return splitmix64(s);
}

uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t a,
                     uint64_t b) {
  uint64_t s = derive_seed(base, tag, a) ^ (b * 0xd1342543de82ef95ULL + 1);
  return splitmix64(s);
}

std::string fnv1a_hex(std::string_view data) {
  uint64_t h = fnv1a(data);
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace cipherid
