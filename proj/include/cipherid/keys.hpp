#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cipherid/common.hpp"
#include "cipherid/wiring.hpp"

#include <json.hpp>

namespace cipherid::machines {

struct EnigmaKey {
  std::array<std::string, 3> rotors;      // left to right: slow, mid, fast
  std::array<int, 3> rings{};             // 0..25
  std::array<int, 3> positions{};         // 0..25
  std::vector<std::string> stecker;       // disjoint letter pairs, e.g. "AM"
  std::string reflector = "UKW-B";
  std::array<std::string, 2> stators = {"ETW", "ETW"};  // in signal order
};

inline constexpr std::array<int, 6> kM209WheelSizes = {26, 25, 23, 21, 19, 17};

struct M209Key {
  std::array<std::vector<uint8_t>, 6> pins;       // sizes 26,25,23,21,19,17
  std::array<std::array<uint8_t, 2>, 27> lugs{};  // 0 = disengaged, 1..6 = wheel
  std::array<int, 6> positions{};                 // offsets within each wheel
};

struct RotorSelection {
  std::string name;
  bool reversed = false;
  int position = 0;
};

struct IndexSelection {
  std::string name;
  int position = 0;
};

struct SigabaKey {
  std::array<RotorSelection, 5> cipher_rotors;   // left to right
  std::array<RotorSelection, 5> control_rotors;  // left to right
  std::array<IndexSelection, 5> index_rotors;    // never step
};

struct PurpleKey {
  /// plugboard[slot] = letter index wired to that slot; slots 0..5 feed
  /// the sixes switch, slots 6..25 the twenties cascade.
  std::array<uint8_t, 26> plugboard{};
  int sixes_position = 0;                  // 0..24
  std::array<int, 3> twenties_positions{};  // 0..24 per physical switch
  /// Physical switch numbers (1..3) taking the fast, medium and slow
  /// roles, in that order.
  std::array<int, 3> motion = {1, 2, 3};
};

struct TypexKey {
  std::array<RotorSelection, 2> stators;  // in signal order
  std::array<RotorSelection, 3> rotors;   // fast, medium, slow
  std::string reflector = "TRF";
};

struct MachineKey {
  Cipher cipher = Cipher::kEnigma;
  std::variant<EnigmaKey, M209Key, PurpleKey, SigabaKey, TypexKey> key;
};

/// The no-cables Purple plugboard: vowels on the sixes slots, consonants
/// in alphabetical order on the twenties slots.
PurpleKey identity_purple_key();

nlohmann::json key_to_json(const MachineKey& key);
MachineKey key_from_json(const nlohmann::json& j);

struct KeySamplingOptions {
  int enigma_stecker_pairs = 10;        // 0..13
  bool enigma_randomize_rotors = true;  // also draw the rotor selection
  /// Off by default: random keys keep the no-cable plugboard (vowels on
  /// the sixes), randomizing switch positions and the motion assignment.
  bool purple_randomize_plugboard = false;
};

/// Reproducible random key for one machine family.
MachineKey sample_key(Cipher cipher, uint64_t seed,
                      const WiringLibrary& wiring = WiringLibrary::defaults(),
                      const KeySamplingOptions& options = {});

/// Every violated key invariant by name; empty means the key is valid.
std::vector<std::string> validate_key(
    const MachineKey& key,
    const WiringLibrary& wiring = WiringLibrary::defaults());

}  // namespace cipherid::machines
