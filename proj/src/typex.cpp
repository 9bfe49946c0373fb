#include <algorithm>
#include <set>

#include "cipherid/machines.hpp"
#include "rotor_math.hpp"

namespace cipherid::machines {

using detail::rotor_fwd;

TypexMachine::TypexMachine(const TypexKey& key, const WiringLibrary& lib) {
  const auto& bank = lib.typex;
  std::set<std::string> used;
  auto build = [&](const RotorSelection& sel, Permutation& fwd,
                   Permutation& inv, std::vector<uint8_t>* notches) {
    const RotorSpec* spec = bank.find_rotor(sel.name);
    if (!spec) throw KeyError("unknown typex rotor: " + sel.name);
    if (!used.insert(sel.name).second) {
      throw KeyError("duplicate typex rotor selection: " + sel.name);
    }
    if (sel.position < 0 || sel.position > 25) {
      throw KeyError("typex rotor position out of range");
    }
    fwd = sel.reversed ? detail::reversed_wiring(spec->wiring) : spec->wiring;
    inv = invert(fwd);
    // Notch positions are read from the position counter on the cage and
    // are unaffected by insertion orientation.
    if (notches) *notches = spec->notches;
    return sel.position;
  };
  for (int i = 0; i < 2; ++i) {
    stator_positions_[i] =
        build(key.stators[i], stators_[i], stators_inv_[i], nullptr);
  }
  for (int i = 0; i < 3; ++i) {
    initial_[i] = build(key.rotors[i], wirings_[i], inverses_[i], &notches_[i]);
  }
  const RotorSpec* refl = bank.find_reflector(key.reflector);
  if (!refl) throw KeyError("unknown reflector: " + key.reflector);
  if (!is_reflector(refl->wiring)) throw KeyError("reflector fixed point");
  reflector_ = refl->wiring;
  reset();
}

void TypexMachine::reset() { positions_ = initial_; }

void TypexMachine::step() {
  // rotors_[0] is the fast rotor. Multi-notch turnover, no double-step:
  // each rotor drives its left neighbour when sitting on a notch.
  bool fast_at_notch = std::count(notches_[0].begin(), notches_[0].end(),
                                  positions_[0]) > 0;
  bool mid_at_notch = std::count(notches_[1].begin(), notches_[1].end(),
                                 positions_[1]) > 0;
  positions_[0] = (positions_[0] + 1) % 26;
  if (fast_at_notch) positions_[1] = (positions_[1] + 1) % 26;
  if (mid_at_notch) positions_[2] = (positions_[2] + 1) % 26;
}

char TypexMachine::press(char c) {
  step();
  int x = letter_index(c);
  x = rotor_fwd(stators_[0], stator_positions_[0], x);
  x = rotor_fwd(stators_[1], stator_positions_[1], x);
  for (int i = 0; i < 3; ++i) x = rotor_fwd(wirings_[i], positions_[i], x);
  x = reflector_[x];
  for (int i = 2; i >= 0; --i) x = rotor_fwd(inverses_[i], positions_[i], x);
  x = rotor_fwd(stators_inv_[1], stator_positions_[1], x);
  x = rotor_fwd(stators_inv_[0], stator_positions_[0], x);
  return index_letter(x);
}

std::string TypexMachine::encrypt(std::string_view text) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) out.push_back(press(c));
  return out;
}

}  // namespace cipherid::machines
