#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "cipherid/keys.hpp"
#include "cipherid/wiring.hpp"

namespace cipherid::machines {

/// A machine is a mutable state machine confined to one thread; keys and
/// wiring tables are immutable and shareable. encrypt/decrypt advance the
/// state; reset() restores the key's initial setting.
class Machine {
 public:
  virtual ~Machine() = default;
  virtual Cipher cipher() const = 0;
  virtual void reset() = 0;
  virtual std::string encrypt(std::string_view plaintext) = 0;
  virtual std::string decrypt(std::string_view ciphertext) = 0;
};

class EnigmaMachine : public Machine {
 public:
  EnigmaMachine(const EnigmaKey& key, const WiringLibrary& wiring);
  Cipher cipher() const override { return Cipher::kEnigma; }
  void reset() override;
  std::string encrypt(std::string_view text) override;
  std::string decrypt(std::string_view text) override { return encrypt(text); }

  /// Current rotor positions, left to right.
  std::array<int, 3> rotor_positions() const { return positions_; }
  void step();

 private:
  char press(char c);
  std::array<Permutation, 3> wirings_, inverses_;
  std::array<std::vector<uint8_t>, 3> notches_;
  std::array<Permutation, 2> stators_, stators_inv_;
  Permutation reflector_{}, stecker_{};
  std::array<int, 3> rings_{}, positions_{}, initial_{};
};

class M209Machine : public Machine {
 public:
  explicit M209Machine(const M209Key& key);
  Cipher cipher() const override { return Cipher::kM209; }
  void reset() override;
  std::string encrypt(std::string_view text) override;
  std::string decrypt(std::string_view text) override { return encrypt(text); }

  /// Smallest and largest displacement seen since construction/reset.
  std::pair<int, int> displacement_range() const { return {d_min_, d_max_}; }

 private:
  M209Key key_;
  std::array<int, 6> positions_{};
  int d_min_ = 28, d_max_ = -1;
};

class SigabaMachine : public Machine {
 public:
  SigabaMachine(const SigabaKey& key, const WiringLibrary& wiring);
  Cipher cipher() const override { return Cipher::kSigaba; }
  void reset() override;
  std::string encrypt(std::string_view text) override;
  std::string decrypt(std::string_view text) override;

  std::array<int, 5> cipher_positions() const;
  std::array<int, 5> index_positions() const;
  /// Histogram of per-letter cipher-rotor step counts (index = count).
  const std::array<uint64_t, 6>& step_count_histogram() const {
    return step_counts_;
  }

 private:
  struct BigRotor {
    Permutation fwd, bwd;
    int position = 0, initial = 0;
  };
  struct IndexRotor {
    std::array<uint8_t, 10> wiring;
    int position = 0;
  };
  void advance();
  std::array<BigRotor, 5> cipher_, control_;
  std::array<IndexRotor, 5> index_;
  std::array<uint8_t, 26> control_map_{};
  std::array<uint8_t, 10> step_map_{};
  std::array<uint64_t, 6> step_counts_{};
};

class PurpleMachine : public Machine {
 public:
  PurpleMachine(const PurpleKey& key, const WiringLibrary& wiring);
  Cipher cipher() const override { return Cipher::kPurple; }
  void reset() override;
  std::string encrypt(std::string_view text) override;
  std::string decrypt(std::string_view text) override;

 private:
  std::string run(std::string_view text, bool invert);
  void advance();
  const PurpleBank* bank_;
  std::array<std::array<uint8_t, 6>, 25> sixes_inv_{};
  std::array<std::array<std::array<uint8_t, 20>, 25>, 3> twenties_inv_{};
  std::array<uint8_t, 26> slot_of_{}, letter_of_{};
  int sixes_pos_ = 0;
  std::array<int, 3> twenties_pos_{};
  int fast_ = 0, medium_ = 1, slow_ = 2;
  PurpleKey key_;
};

class TypexMachine : public Machine {
 public:
  TypexMachine(const TypexKey& key, const WiringLibrary& wiring);
  Cipher cipher() const override { return Cipher::kTypex; }
  void reset() override;
  std::string encrypt(std::string_view text) override;
  std::string decrypt(std::string_view text) override { return encrypt(text); }

 private:
  void step();
  char press(char c);
  std::array<Permutation, 2> stators_, stators_inv_;
  std::array<int, 2> stator_positions_{};
  std::array<Permutation, 3> wirings_, inverses_;
  std::array<std::vector<uint8_t>, 3> notches_;
  Permutation reflector_{};
  std::array<int, 3> positions_{}, initial_{};
};

std::unique_ptr<Machine> make_machine(
    const MachineKey& key,
    const WiringLibrary& wiring = WiringLibrary::defaults());

/// One-shot helpers starting from the key's initial state. Throw KeyError
/// on invalid keys and ParseError on non-alphabet input.
std::string encrypt(const MachineKey& key, std::string_view plaintext,
                    const WiringLibrary& wiring = WiringLibrary::defaults());
std::string decrypt(const MachineKey& key, std::string_view ciphertext,
                    const WiringLibrary& wiring = WiringLibrary::defaults());

}  // namespace cipherid::machines
