#pragma once

#include "cipherid/wiring.hpp"

// Shared rotor arithmetic. A rotor with wiring W at effective offset t
// maps forward as f(x) = (W[(x + t) % 26] - t) mod 26. Reversed insertion
// replaces W by reflect . W^-1 . reflect with reflect(x) = (26 - x) % 26;
// stepping always increments the position counter.

namespace cipherid::machines::detail {

inline int rotor_fwd(const Permutation& w, int off, int x) {
  int o = ((off % 26) + 26) % 26;
  return (w[(x + o) % 26] - o + 26) % 26;
}

inline Permutation reversed_wiring(const Permutation& w) {
  Permutation wi = invert(w);
  Permutation out{};
  for (int x = 0; x < 26; ++x) {
    out[x] = static_cast<uint8_t>((26 - wi[(26 - x) % 26]) % 26);
  }
  return out;
}

inline int index_fwd(const std::array<uint8_t, 10>& w, int off, int x) {
  return (w[(x + off) % 10] - off % 10 + 10) % 10;
}

inline void require_letters(std::string_view text) {
  for (char c : text) {
    if (!is_cipher_letter(c)) {
      throw ParseError("machine input must be normalized A-Z text");
    }
  }
}

}  // namespace cipherid::machines::detail
