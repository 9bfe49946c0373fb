#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cipherid/common.hpp"
#include "cipherid/corpus.hpp"
#include "cipherid/keys.hpp"

namespace cipherid::dataset {

/// One of the four generation regimes: whether plaintexts and keys are
/// reused across messages or freshly drawn per message.
struct Scenario {
  bool random_plaintext = true;
  bool random_key = true;

  bool operator==(const Scenario&) const = default;
};

std::string scenario_name(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view name);

struct Message {
  Cipher cipher = Cipher::kEnigma;
  Scenario scenario;
  std::string text;
  int plaintext_id = 0;
  int key_id = 0;
  size_t length() const { return text.size(); }
};

struct Manifest {
  std::string scenario;
  std::array<int, kCipherCount> per_cipher_counts{};
  int message_length = 0;
  uint64_t seed = 0;
  std::string corpus_digest;
  std::string generator_version = kVersion;
};

struct Dataset {
  std::vector<Message> messages;        // sorted by (cipher, index)
  std::vector<machines::MachineKey> keys;  // indexed by key_id
  Manifest manifest;

  std::vector<int> labels() const;      // cipher index per message
  std::vector<std::string_view> texts() const;
};

/// Generates the balanced labelled dataset for one scenario. Fixed
/// plaintexts are shared across ciphers; fixed keys use sample_key(c, 0).
/// Fully reproducible from the seed; parallelizes over messages.
Dataset generate(const corpus::NormalizedCorpus& corpus, Scenario scenario,
                 int per_cipher, int length, uint64_t seed,
                 const machines::WiringLibrary& wiring =
                     machines::WiringLibrary::defaults(),
                 int threads = 0);

/// Writes dataset.jsonl, keys.jsonl and manifest.txt into the directory.
void save(const Dataset& data, const std::filesystem::path& dir);

/// Inverse of save. Throws ParseError naming the offending line.
Dataset load(const std::filesystem::path& dir);

}  // namespace cipherid::dataset
