#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cipherid/common.hpp"

namespace cipherid::machines {

using Permutation = std::array<uint8_t, 26>;

Permutation invert(const Permutation& p);
bool is_permutation(const Permutation& p);
/// True for a fixed-point-free involution.
bool is_reflector(const Permutation& p);

struct RotorSpec {
  std::string name;
  Permutation wiring{};
  std::vector<uint8_t> notches;  // turnover positions, possibly empty
};

struct EnigmaBank {
  std::vector<RotorSpec> rotors;
  std::vector<RotorSpec> reflectors;
  std::vector<RotorSpec> stators;
  const RotorSpec* find_rotor(std::string_view name) const;
  const RotorSpec* find_reflector(std::string_view name) const;
  const RotorSpec* find_stator(std::string_view name) const;
};

struct IndexRotorSpec {
  std::string name;
  std::array<uint8_t, 10> wiring{};
};

struct SigabaBank {
  std::vector<RotorSpec> rotors;            // shared cipher/control bank
  std::vector<IndexRotorSpec> index_rotors;
  std::array<uint8_t, 26> control_map{};    // control output letter -> index line
  std::array<uint8_t, 10> step_map{};       // index output line -> cipher rotor 1..5
  const RotorSpec* find_rotor(std::string_view name) const;
  const IndexRotorSpec* find_index(std::string_view name) const;
};

struct PurpleBank {
  std::array<uint8_t, 6> sixes_letters{};                // default plug slots 0..5
  std::vector<std::array<uint8_t, 6>> sixes;             // 25 positions
  std::array<std::vector<std::array<uint8_t, 20>>, 3> twenties;
};

struct TypexBank {
  std::vector<RotorSpec> rotors;
  std::vector<RotorSpec> reflectors;
  const RotorSpec* find_rotor(std::string_view name) const;
  const RotorSpec* find_reflector(std::string_view name) const;
};

/// Parsers for the line-oriented wiring format ("# machine: ..." header,
/// one permutation per line). Throw ParseError with the line number.
EnigmaBank parse_enigma_wiring(std::string_view text);
SigabaBank parse_sigaba_wiring(std::string_view text);
PurpleBank parse_purple_wiring(std::string_view text);
TypexBank parse_typex_wiring(std::string_view text);

struct WiringLibrary {
  EnigmaBank enigma;
  SigabaBank sigaba;
  PurpleBank purple;
  TypexBank typex;

  /// Built-in tables, identical to the shipped data files.
  static const WiringLibrary& defaults();

  /// Loads <dir>/{enigma,sigaba,purple,typex}.txt, falling back to the
  /// built-in table for any file that is absent.
  static WiringLibrary load_dir(const std::filesystem::path& dir);
};

// Embedded default wiring texts (see wiring_defaults.cpp).
extern const char* const kDefaultEnigmaWiringText;
extern const char* const kDefaultSigabaWiringText;
extern const char* const kDefaultPurpleWiringText;
extern const char* const kDefaultTypexWiringText;

}  // namespace cipherid::machines
