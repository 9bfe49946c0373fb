#include <algorithm>

#include "cipherid/machines.hpp"
#include "rotor_math.hpp"

namespace cipherid::machines {

using detail::rotor_fwd;

namespace {

const RotorSpec& need_rotor(const EnigmaBank& bank, const std::string& name) {
  const RotorSpec* spec = bank.find_rotor(name);
  if (!spec) throw KeyError("unknown enigma rotor: " + name);
  return *spec;
}

}  // namespace

EnigmaMachine::EnigmaMachine(const EnigmaKey& key, const WiringLibrary& lib) {
  const auto& bank = lib.enigma;
  for (int i = 0; i < 3; ++i) {
    const RotorSpec& spec = need_rotor(bank, key.rotors[i]);
    wirings_[i] = spec.wiring;
    inverses_[i] = invert(spec.wiring);
    notches_[i] = spec.notches;
    rings_[i] = key.rings[i];
    initial_[i] = key.positions[i];
  }
  const RotorSpec* refl = bank.find_reflector(key.reflector);
  if (!refl) throw KeyError("unknown reflector: " + key.reflector);
  if (!is_reflector(refl->wiring)) throw KeyError("reflector fixed point");
  reflector_ = refl->wiring;
  for (int i = 0; i < 2; ++i) {
    const RotorSpec* st = bank.find_stator(key.stators[i]);
    if (!st) throw KeyError("unknown stator: " + key.stators[i]);
    stators_[i] = st->wiring;
    stators_inv_[i] = invert(st->wiring);
  }
  for (int i = 0; i < 26; ++i) stecker_[i] = static_cast<uint8_t>(i);
  std::array<bool, 26> used{};
  for (const auto& pair : key.stecker) {
    if (pair.size() != 2 || !is_cipher_letter(pair[0]) ||
        !is_cipher_letter(pair[1]) || pair[0] == pair[1]) {
      throw KeyError("malformed stecker pair: " + pair);
    }
    int a = letter_index(pair[0]), b = letter_index(pair[1]);
    if (used[a] || used[b]) throw KeyError("stecker pairs not disjoint");
    used[a] = used[b] = true;
    stecker_[a] = static_cast<uint8_t>(b);
    stecker_[b] = static_cast<uint8_t>(a);
  }
  reset();
}

void EnigmaMachine::reset() { positions_ = initial_; }

void EnigmaMachine::step() {
  // Index 0 is the slow (leftmost) rotor, 2 the fast one. The middle
  // rotor also steps on its own notch: the double-step condition.
  bool fast_at_notch = std::count(notches_[2].begin(), notches_[2].end(),
                                  positions_[2]) > 0;
  bool mid_at_notch = std::count(notches_[1].begin(), notches_[1].end(),
                                 positions_[1]) > 0;
  if (mid_at_notch) positions_[0] = (positions_[0] + 1) % 26;
  if (fast_at_notch || mid_at_notch) positions_[1] = (positions_[1] + 1) % 26;
  positions_[2] = (positions_[2] + 1) % 26;
}

char EnigmaMachine::press(char c) {
  step();
  int x = stecker_[letter_index(c)];
  x = stators_[0][x];
  x = stators_[1][x];
  for (int i = 2; i >= 0; --i) {
    x = rotor_fwd(wirings_[i], positions_[i] - rings_[i], x);
  }
  x = reflector_[x];
  for (int i = 0; i < 3; ++i) {
    x = rotor_fwd(inverses_[i], positions_[i] - rings_[i], x);
  }
  x = stators_inv_[1][x];
  x = stators_inv_[0][x];
  return index_letter(stecker_[x]);
}

std::string EnigmaMachine::encrypt(std::string_view text) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) out.push_back(press(c));
  return out;
}

}  // namespace cipherid::machines
