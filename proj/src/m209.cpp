#include "cipherid/machines.hpp"
#include "rotor_math.hpp"

namespace cipherid::machines {

M209Machine::M209Machine(const M209Key& key) : key_(key) {
  for (int w = 0; w < 6; ++w) {
    if (static_cast<int>(key_.pins[w].size()) != kM209WheelSizes[w]) {
      throw KeyError("m209 wheel " + std::to_string(w + 1) +
                     " must have " + std::to_string(kM209WheelSizes[w]) +
                     " pins");
    }
    if (key_.positions[w] < 0 || key_.positions[w] >= kM209WheelSizes[w]) {
      throw KeyError("m209 rotor position out of range");
    }
  }
  for (const auto& bar : key_.lugs) {
    if (bar[0] > 6 || bar[1] > 6) throw KeyError("lug out of range");
  }
  reset();
}

void M209Machine::reset() {
  positions_ = key_.positions;
  d_min_ = 28;
  d_max_ = -1;
}

std::string M209Machine::encrypt(std::string_view text) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    bool active[6];
    for (int w = 0; w < 6; ++w) active[w] = key_.pins[w][positions_[w]] != 0;
    int d = 0;
    for (const auto& bar : key_.lugs) {
      if ((bar[0] > 0 && active[bar[0] - 1]) ||
          (bar[1] > 0 && active[bar[1] - 1])) {
        ++d;
      }
    }
    d_min_ = std::min(d_min_, d);
    d_max_ = std::max(d_max_, d);
    out.push_back(index_letter((25 - letter_index(c) + d) % 26));
    for (int w = 0; w < 6; ++w) {
      positions_[w] = (positions_[w] + 1) % kM209WheelSizes[w];
    }
  }
  return out;
}

}  // namespace cipherid::machines
