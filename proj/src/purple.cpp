#include "cipherid/machines.hpp"
#include "rotor_math.hpp"

namespace cipherid::machines {

PurpleMachine::PurpleMachine(const PurpleKey& key, const WiringLibrary& lib)
    : bank_(&lib.purple), key_(key) {
  std::array<bool, 26> seen{};
  for (int slot = 0; slot < 26; ++slot) {
    uint8_t letter = key.plugboard[slot];
    if (letter >= 26 || seen[letter]) {
      throw KeyError("plugboard not a permutation");
    }
    seen[letter] = true;
    slot_of_[letter] = static_cast<uint8_t>(slot);
    letter_of_[slot] = letter;
  }
  if (key.sixes_position < 0 || key.sixes_position > 24) {
    throw KeyError("sixes position out of range");
  }
  for (int p : key.twenties_positions) {
    if (p < 0 || p > 24) throw KeyError("twenties position out of range");
  }
  std::array<int, 3> m = key.motion;
  std::sort(m.begin(), m.end());
  if (m != std::array<int, 3>{1, 2, 3}) {
    throw KeyError("motion assignment must map the three switches");
  }
  fast_ = key.motion[0] - 1;
  medium_ = key.motion[1] - 1;
  slow_ = key.motion[2] - 1;

  for (int p = 0; p < 25; ++p) {
    for (int i = 0; i < 6; ++i) sixes_inv_[p][bank_->sixes[p][i]] = static_cast<uint8_t>(i);
    for (int sw = 0; sw < 3; ++sw) {
      for (int i = 0; i < 20; ++i) {
        twenties_inv_[sw][p][bank_->twenties[sw][p][i]] = static_cast<uint8_t>(i);
      }
    }
  }
  reset();
}

void PurpleMachine::reset() {
  sixes_pos_ = key_.sixes_position;
  twenties_pos_ = key_.twenties_positions;
}

void PurpleMachine::advance() {
  // The sixes switch steps every letter; exactly one twenties switch
  // steps, picked from the pre-step positions.
  int mover;
  if (sixes_pos_ == 24) {
    mover = medium_;
  } else if (sixes_pos_ == 23 && twenties_pos_[medium_] == 24) {
    mover = slow_;
  } else {
    mover = fast_;
  }
  twenties_pos_[mover] = (twenties_pos_[mover] + 1) % 25;
  sixes_pos_ = (sixes_pos_ + 1) % 25;
}

std::string PurpleMachine::run(std::string_view text, bool invert) {
  detail::require_letters(text);
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    int slot = slot_of_[letter_index(c)];
    int o;
    if (slot < 6) {
      o = invert ? sixes_inv_[sixes_pos_][slot]
                 : bank_->sixes[sixes_pos_][slot];
    } else {
      int t = slot - 6;
      if (invert) {
        for (int sw = 2; sw >= 0; --sw) t = twenties_inv_[sw][twenties_pos_[sw]][t];
      } else {
        for (int sw = 0; sw < 3; ++sw) t = bank_->twenties[sw][twenties_pos_[sw]][t];
      }
      o = t + 6;
    }
    out.push_back(index_letter(letter_of_[o]));
    advance();
  }
  return out;
}

std::string PurpleMachine::encrypt(std::string_view text) {
  return run(text, false);
}

std::string PurpleMachine::decrypt(std::string_view text) {
  return run(text, true);
}

}  // namespace cipherid::machines
