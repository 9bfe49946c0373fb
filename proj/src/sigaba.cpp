#include <set>

#include "cipherid/machines.hpp"
#include "rotor_math.hpp"

namespace cipherid::machines {

using detail::index_fwd;
using detail::rotor_fwd;

namespace {

constexpr int kCarryPosition = 14;  // 'O'
constexpr std::array<int, 4> kControlInputs = {5, 6, 7, 8};  // F G H I

}  // namespace

SigabaMachine::SigabaMachine(const SigabaKey& key, const WiringLibrary& lib) {
  const auto& bank = lib.sigaba;
  auto build = [&](const RotorSelection& sel) {
    const RotorSpec* spec = bank.find_rotor(sel.name);
    if (!spec) throw KeyError("unknown sigaba rotor: " + sel.name);
    if (sel.position < 0 || sel.position > 25) {
      throw KeyError("sigaba rotor position out of range");
    }
    BigRotor r;
    r.fwd = sel.reversed ? detail::reversed_wiring(spec->wiring) : spec->wiring;
    r.bwd = invert(r.fwd);
    r.position = r.initial = sel.position;
    return r;
  };
  std::set<std::string> used;
  auto mark = [&](const std::string& name) {
    if (!used.insert(name).second) {
      throw KeyError("duplicate sigaba rotor selection: " + name);
    }
  };
  for (int i = 0; i < 5; ++i) {
    cipher_[i] = build(key.cipher_rotors[i]);
    control_[i] = build(key.control_rotors[i]);
    mark(key.cipher_rotors[i].name);
    mark(key.control_rotors[i].name);
    const IndexRotorSpec* idx = bank.find_index(key.index_rotors[i].name);
    if (!idx) throw KeyError("unknown index rotor: " + key.index_rotors[i].name);
    if (key.index_rotors[i].position < 0 || key.index_rotors[i].position > 9) {
      throw KeyError("index rotor position out of range");
    }
    index_[i] = {idx->wiring, key.index_rotors[i].position};
  }
  control_map_ = bank.control_map;
  step_map_ = bank.step_map;
  reset();
}

void SigabaMachine::reset() {
  for (auto& r : cipher_) r.position = r.initial;
  for (auto& r : control_) r.position = r.initial;
  step_counts_ = {};
}

std::array<int, 5> SigabaMachine::cipher_positions() const {
  std::array<int, 5> out{};
  for (int i = 0; i < 5; ++i) out[i] = cipher_[i].position;
  return out;
}

std::array<int, 5> SigabaMachine::index_positions() const {
  std::array<int, 5> out{};
  for (int i = 0; i < 5; ++i) out[i] = index_[i].position;
  return out;
}

void SigabaMachine::advance() {
  // Four energized control inputs, through the control bank in listed
  // order, grouped onto index lines, through the index bank, and ORed
  // pairwise onto the cipher rotor stepping magnets.
  bool lines[10] = {};
  for (int input : kControlInputs) {
    int x = input;
    for (const auto& r : control_) x = rotor_fwd(r.fwd, r.position, x);
    lines[control_map_[x]] = true;
  }
  bool step[5] = {};
  int stepped = 0;
  for (int line = 0; line < 10; ++line) {
    if (!lines[line]) continue;
    int x = line;
    for (const auto& r : index_) x = index_fwd(r.wiring, r.position, x);
    step[step_map_[x] - 1] = true;
  }
  for (int i = 0; i < 5; ++i) {
    if (step[i]) {
      cipher_[i].position = (cipher_[i].position + 1) % 26;
      ++stepped;
    }
  }
  ++step_counts_[stepped];

  // Control cascade: the middle rotor always steps; a carry at 'O'
  // propagates to its right neighbour and then to the second rotor.
  bool mid_carry = control_[2].position == kCarryPosition;
  bool right_carry = control_[3].position == kCarryPosition;
  control_[2].position = (control_[2].position + 1) % 26;
  if (mid_carry) {
    control_[3].position = (control_[3].position + 1) % 26;
    if (right_carry) control_[1].position = (control_[1].position + 1) % 26;
  }
}

std::string SigabaMachine::encrypt(std::string_view text) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    int x = letter_index(c);
    for (const auto& r : cipher_) x = rotor_fwd(r.fwd, r.position, x);
    out.push_back(index_letter(x));
    advance();
  }
  return out;
}

std::string SigabaMachine::decrypt(std::string_view text) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    int x = letter_index(c);
    for (int i = 4; i >= 0; --i) {
      x = rotor_fwd(cipher_[i].bwd, cipher_[i].position, x);
    }
    out.push_back(index_letter(x));
    advance();
  }
  return out;
}

}  // namespace cipherid::machines
