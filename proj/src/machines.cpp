#include "cipherid/machines.hpp"

namespace cipherid::machines {

std::unique_ptr<Machine> make_machine(const MachineKey& key,
                                      const WiringLibrary& wiring) {
  switch (key.cipher) {
    case Cipher::kEnigma:
      return std::make_unique<EnigmaMachine>(std::get<EnigmaKey>(key.key),
                                             wiring);
    case Cipher::kM209:
      return std::make_unique<M209Machine>(std::get<M209Key>(key.key));
    case Cipher::kPurple:
      return std::make_unique<PurpleMachine>(std::get<PurpleKey>(key.key),
                                             wiring);
    case Cipher::kSigaba:
      return std::make_unique<SigabaMachine>(std::get<SigabaKey>(key.key),
                                             wiring);
    case Cipher::kTypex:
      return std::make_unique<TypexMachine>(std::get<TypexKey>(key.key),
                                            wiring);
  }
  throw KeyError("unknown cipher");
}

std::string encrypt(const MachineKey& key, std::string_view plaintext,
                    const WiringLibrary& wiring) {
  return make_machine(key, wiring)->encrypt(plaintext);
}

std::string decrypt(const MachineKey& key, std::string_view ciphertext,
                    const WiringLibrary& wiring) {
  return make_machine(key, wiring)->decrypt(ciphertext);
}

}  // namespace cipherid::machines
