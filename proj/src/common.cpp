#include "cipherid/common.hpp"

namespace cipherid {

std::string_view to_string(Cipher c) {
  switch (c) {
    case Cipher::kEnigma: return "enigma";
    case Cipher::kM209: return "m209";
    case Cipher::kPurple: return "purple";
    case Cipher::kSigaba: return "sigaba";
    case Cipher::kTypex: return "typex";
  }
  return "unknown";
}

std::optional<Cipher> cipher_from_string(std::string_view name) {
  if (name == "enigma") return Cipher::kEnigma;
  if (name == "m209" || name == "m-209") return Cipher::kM209;
  if (name == "purple") return Cipher::kPurple;
  if (name == "sigaba") return Cipher::kSigaba;
  if (name == "typex") return Cipher::kTypex;
  return std::nullopt;
}

}  // namespace cipherid
