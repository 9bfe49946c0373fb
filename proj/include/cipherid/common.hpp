#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cipherid {

inline constexpr int kAlphabetSize = 26;
inline constexpr int kCipherCount = 5;
inline constexpr const char* kVersion = "1.0.0";

/// The five machine families, in the canonical class order used for
/// labels, one-hot targets, and tie-breaking.
enum class Cipher { kEnigma = 0, kM209, kPurple, kSigaba, kTypex };

std::string_view to_string(Cipher c);
std::optional<Cipher> cipher_from_string(std::string_view name);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CorpusError : Error {
  using Error::Error;
};
struct KeyError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

inline bool is_cipher_letter(char c) { return c >= 'A' && c <= 'Z'; }

inline int letter_index(char c) { return c - 'A'; }

inline char index_letter(int i) { return static_cast<char>('A' + i); }

}  // namespace cipherid
