#include "cipherid/dataset.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cipherid/machines.hpp"
#include "cipherid/rng.hpp"
#include "cipherid/threading.hpp"

namespace cipherid::dataset {

using machines::MachineKey;
using nlohmann::json;

std::string scenario_name(Scenario s) {
  std::string out = s.random_plaintext ? "random" : "fixed";
  out += s.random_key ? "-random" : "-fixed";
  return out;
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  if (name == "fixed-fixed") return Scenario{false, false};
  if (name == "random-fixed") return Scenario{true, false};
  if (name == "fixed-random") return Scenario{false, true};
  if (name == "random-random") return Scenario{true, true};
  return std::nullopt;
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(messages.size());
  for (const auto& m : messages) out.push_back(static_cast<int>(m.cipher));
  return out;
}

std::vector<std::string_view> Dataset::texts() const {
  std::vector<std::string_view> out;
  out.reserve(messages.size());
  for (const auto& m : messages) out.push_back(m.text);
  return out;
}

Dataset generate(const corpus::NormalizedCorpus& corpus, Scenario scenario,
                 int per_cipher, int length, uint64_t seed,
                 const machines::WiringLibrary& wiring, int threads) {
  if (per_cipher < 1 || length < 1) {
    throw Error("per_cipher and length must be positive");
  }

  // Plaintext windows. Fixed mode shares one window set across ciphers.
  std::array<std::vector<corpus::PlaintextWindow>, kCipherCount> windows;
  if (scenario.random_plaintext) {
    for (int c = 0; c < kCipherCount; ++c) {
      windows[c] = corpus::sample_windows(
          corpus, per_cipher, length, corpus::SampleMode::kRandom,
          derive_seed(seed, "plaintext", c));
    }
  } else {
    windows[0] = corpus::sample_windows(corpus, per_cipher, length,
                                        corpus::SampleMode::kFixed, 0);
    for (int c = 1; c < kCipherCount; ++c) windows[c] = windows[0];
  }

  Dataset out;
  out.messages.resize(static_cast<size_t>(kCipherCount) * per_cipher);
  if (scenario.random_key) {
    out.keys.resize(out.messages.size());
  } else {
    out.keys.reserve(kCipherCount);
    for (int c = 0; c < kCipherCount; ++c) {
      out.keys.push_back(
          machines::sample_key(static_cast<Cipher>(c), 0, wiring));
    }
  }

  parallel_for(out.messages.size(), threads, [&](size_t task) {
    int c = static_cast<int>(task) / per_cipher;
    int i = static_cast<int>(task) % per_cipher;
    Cipher cipher = static_cast<Cipher>(c);
    int key_id;
    const MachineKey* key;
    if (scenario.random_key) {
      key_id = static_cast<int>(task);
      out.keys[task] =
          machines::sample_key(cipher, derive_seed(seed, "msgkey", c, i), wiring);
      key = &out.keys[task];
    } else {
      key_id = c;
      key = &out.keys[c];
    }
    Message& msg = out.messages[task];
    msg.cipher = cipher;
    msg.scenario = scenario;
    msg.plaintext_id = scenario.random_plaintext ? static_cast<int>(task) : i;
    msg.key_id = key_id;
    msg.text = machines::encrypt(*key, windows[c][i].text, wiring);
  });

  out.manifest.scenario = scenario_name(scenario);
  out.manifest.per_cipher_counts.fill(per_cipher);
  out.manifest.message_length = length;
  out.manifest.seed = seed;
  out.manifest.corpus_digest = corpus.source_digest;
  return out;
}

// ------------------------------------------------------------- file I/O

void save(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "dataset.jsonl");
    if (!out) throw Error("cannot write " + (dir / "dataset.jsonl").string());
    for (const auto& m : data.messages) {
      json j{{"cipher", std::string(to_string(m.cipher))},
             {"scenario", scenario_name(m.scenario)},
             {"plaintext_id", m.plaintext_id},
             {"key_id", m.key_id},
             {"text", m.text}};
      out << j.dump() << "\n";
    }
  }
  {
    std::ofstream out(dir / "keys.jsonl");
    if (!out) throw Error("cannot write " + (dir / "keys.jsonl").string());
    for (size_t i = 0; i < data.keys.size(); ++i) {
      json j = machines::key_to_json(data.keys[i]);
      j["key_id"] = i;
      out << j.dump() << "\n";
    }
  }
  {
    std::ofstream out(dir / "manifest.txt");
    if (!out) throw Error("cannot write " + (dir / "manifest.txt").string());
    const Manifest& m = data.manifest;
    out << "scenario = " << m.scenario << "\n";
    out << "message_length = " << m.message_length << "\n";
    out << "seed = " << m.seed << "\n";
    out << "corpus_digest = " << m.corpus_digest << "\n";
    out << "generator_version = " << m.generator_version << "\n";
    for (int c = 0; c < kCipherCount; ++c) {
      out << "count_" << to_string(static_cast<Cipher>(c)) << " = "
          << m.per_cipher_counts[c] << "\n";
    }
  }
}

namespace {

[[noreturn]] void record_error(const std::filesystem::path& file, int line,
                               const std::string& what) {
  throw ParseError(file.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Dataset load(const std::filesystem::path& dir) {
  Dataset out;
  {
    auto path = dir / "dataset.jsonl";
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        record_error(path, number, e.what());
      }
      Message m;
      try {
        auto cipher = cipher_from_string(j.at("cipher").get<std::string>());
        auto scenario =
            scenario_from_string(j.at("scenario").get<std::string>());
        if (!cipher) record_error(path, number, "unknown cipher label");
        if (!scenario) record_error(path, number, "unknown scenario");
        m.cipher = *cipher;
        m.scenario = *scenario;
        m.plaintext_id = j.at("plaintext_id").get<int>();
        m.key_id = j.at("key_id").get<int>();
        m.text = j.at("text").get<std::string>();
      } catch (const json::exception& e) {
        record_error(path, number, e.what());
      }
      out.messages.push_back(std::move(m));
    }
  }
  {
    auto path = dir / "keys.jsonl";
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    int number = 0;
    std::map<int, MachineKey> by_id;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      try {
        json j = json::parse(line);
        by_id[j.at("key_id").get<int>()] = machines::key_from_json(j);
      } catch (const json::exception& e) {
        record_error(path, number, e.what());
      } catch (const ParseError& e) {
        record_error(path, number, e.what());
      }
    }
    out.keys.resize(by_id.empty() ? 0 : by_id.rbegin()->first + 1);
    for (auto& [id, key] : by_id) out.keys[id] = std::move(key);
  }
  {
    auto path = dir / "manifest.txt";
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      auto eq = line.find(" = ");
      if (eq == std::string::npos) record_error(path, number, "expected 'key = value'");
      std::string key = line.substr(0, eq), value = line.substr(eq + 3);
      Manifest& m = out.manifest;
      if (key == "scenario") m.scenario = value;
      else if (key == "message_length") m.message_length = std::stoi(value);
      else if (key == "seed") m.seed = std::stoull(value);
      else if (key == "corpus_digest") m.corpus_digest = value;
      else if (key == "generator_version") m.generator_version = value;
      else if (key.rfind("count_", 0) == 0) {
        auto cipher = cipher_from_string(key.substr(6));
        if (!cipher) record_error(path, number, "unknown cipher in count");
        m.per_cipher_counts[static_cast<int>(*cipher)] = std::stoi(value);
      } else {
        record_error(path, number, "unknown manifest key '" + key + "'");
      }
    }
  }
  // Sanity: every message's key must exist.
  for (size_t i = 0; i < out.messages.size(); ++i) {
    int id = out.messages[i].key_id;
    if (id < 0 || id >= static_cast<int>(out.keys.size())) {
      throw ParseError("dataset.jsonl record " + std::to_string(i + 1) +
                       ": key_id " + std::to_string(id) +
                       " missing from keys.jsonl");
    }
  }
  return out;
}

}  // namespace cipherid::dataset
