#include "cipherid/keys.hpp"

#include <algorithm>
#include <set>

#include "cipherid/rng.hpp"

namespace cipherid::machines {

using nlohmann::json;

PurpleKey identity_purple_key() {
  const auto& bank = WiringLibrary::defaults().purple;
  PurpleKey key;
  std::array<bool, 26> in_sixes{};
  for (int i = 0; i < 6; ++i) {
    key.plugboard[i] = bank.sixes_letters[i];
    in_sixes[bank.sixes_letters[i]] = true;
  }
  int slot = 6;
  for (int c = 0; c < 26; ++c) {
    if (!in_sixes[c]) key.plugboard[slot++] = static_cast<uint8_t>(c);
  }
  return key;
}

// ------------------------------------------------------------- JSON I/O

namespace {

json selection_to_json(const RotorSelection& s) {
  return {{"name", s.name}, {"reversed", s.reversed}, {"pos", s.position}};
}

RotorSelection selection_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("reversed").get<bool>(),
          j.at("pos").get<int>()};
}

std::string bits_to_string(const std::vector<uint8_t>& bits) {
  std::string out(bits.size(), '0');
  for (size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? '1' : '0';
  return out;
}

std::vector<uint8_t> bits_from_string(const std::string& s) {
  std::vector<uint8_t> out(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ParseError("pin string must be 0/1");
    out[i] = s[i] == '1';
  }
  return out;
}

}  // namespace

json key_to_json(const MachineKey& mk) {
  json j;
  j["cipher"] = std::string(to_string(mk.cipher));
  switch (mk.cipher) {
    case Cipher::kEnigma: {
      const auto& k = std::get<EnigmaKey>(mk.key);
      j["rotors"] = k.rotors;
      j["rings"] = k.rings;
      j["positions"] = k.positions;
      j["stecker"] = k.stecker;
      j["reflector"] = k.reflector;
      j["stators"] = k.stators;
      break;
    }
    case Cipher::kM209: {
      const auto& k = std::get<M209Key>(mk.key);
      json pins = json::array();
      for (const auto& row : k.pins) pins.push_back(bits_to_string(row));
      j["pins"] = pins;
      json lugs = json::array();
      for (const auto& bar : k.lugs) lugs.push_back({bar[0], bar[1]});
      j["lugs"] = lugs;
      j["positions"] = k.positions;
      break;
    }
    case Cipher::kPurple: {
      const auto& k = std::get<PurpleKey>(mk.key);
      std::string plug(26, 'A');
      for (int i = 0; i < 26; ++i) plug[i] = index_letter(k.plugboard[i]);
      j["plugboard"] = plug;
      j["sixes_pos"] = k.sixes_position;
      j["twenties_pos"] = k.twenties_positions;
      j["motion"] = k.motion;
      break;
    }
    case Cipher::kSigaba: {
      const auto& k = std::get<SigabaKey>(mk.key);
      json c = json::array(), t = json::array(), x = json::array();
      for (const auto& s : k.cipher_rotors) c.push_back(selection_to_json(s));
      for (const auto& s : k.control_rotors) t.push_back(selection_to_json(s));
      for (const auto& s : k.index_rotors) {
        x.push_back({{"name", s.name}, {"pos", s.position}});
      }
      j["cipher_rotors"] = c;
      j["control_rotors"] = t;
      j["index_rotors"] = x;
      break;
    }
    case Cipher::kTypex: {
      const auto& k = std::get<TypexKey>(mk.key);
      json st = json::array(), ro = json::array();
      for (const auto& s : k.stators) st.push_back(selection_to_json(s));
      for (const auto& s : k.rotors) ro.push_back(selection_to_json(s));
      j["stators"] = st;
      j["rotors"] = ro;
      j["reflector"] = k.reflector;
      break;
    }
  }
  return j;
}

MachineKey key_from_json(const json& j) {
  auto cipher = cipher_from_string(j.at("cipher").get<std::string>());
  if (!cipher) throw ParseError("unknown cipher label in key");
  MachineKey mk;
  mk.cipher = *cipher;
  switch (*cipher) {
    case Cipher::kEnigma: {
      EnigmaKey k;
      j.at("rotors").get_to(k.rotors);
      j.at("rings").get_to(k.rings);
      j.at("positions").get_to(k.positions);
      j.at("stecker").get_to(k.stecker);
      j.at("reflector").get_to(k.reflector);
      if (j.contains("stators")) j.at("stators").get_to(k.stators);
      mk.key = std::move(k);
      break;
    }
    case Cipher::kM209: {
      M209Key k;
      const auto& pins = j.at("pins");
      for (int w = 0; w < 6; ++w) {
        k.pins[w] = bits_from_string(pins.at(w).get<std::string>());
      }
      const auto& lugs = j.at("lugs");
      for (int b = 0; b < 27; ++b) {
        k.lugs[b] = {lugs.at(b).at(0).get<uint8_t>(),
                     lugs.at(b).at(1).get<uint8_t>()};
      }
      j.at("positions").get_to(k.positions);
      mk.key = std::move(k);
      break;
    }
    case Cipher::kPurple: {
      PurpleKey k;
      auto plug = j.at("plugboard").get<std::string>();
      if (plug.size() != 26) throw ParseError("plugboard must have 26 letters");
      for (int i = 0; i < 26; ++i) {
        if (!is_cipher_letter(plug[i])) throw ParseError("bad plugboard letter");
        k.plugboard[i] = static_cast<uint8_t>(letter_index(plug[i]));
      }
      k.sixes_position = j.at("sixes_pos").get<int>();
      j.at("twenties_pos").get_to(k.twenties_positions);
      j.at("motion").get_to(k.motion);
      mk.key = std::move(k);
      break;
    }
    case Cipher::kSigaba: {
      SigabaKey k;
      for (int i = 0; i < 5; ++i) {
        k.cipher_rotors[i] = selection_from_json(j.at("cipher_rotors").at(i));
        k.control_rotors[i] = selection_from_json(j.at("control_rotors").at(i));
        const auto& x = j.at("index_rotors").at(i);
        k.index_rotors[i] = {x.at("name").get<std::string>(),
                             x.at("pos").get<int>()};
      }
      mk.key = std::move(k);
      break;
    }
    case Cipher::kTypex: {
      TypexKey k;
      for (int i = 0; i < 2; ++i) {
        k.stators[i] = selection_from_json(j.at("stators").at(i));
      }
      for (int i = 0; i < 3; ++i) {
        k.rotors[i] = selection_from_json(j.at("rotors").at(i));
      }
      j.at("reflector").get_to(k.reflector);
      mk.key = std::move(k);
      break;
    }
  }
  return mk;
}

// --------------------------------------------------------- key sampling

MachineKey sample_key(Cipher cipher, uint64_t seed,
                      const WiringLibrary& wiring,
                      const KeySamplingOptions& options) {
  Rng rng(derive_seed(seed, "key", static_cast<uint64_t>(cipher)));
  MachineKey mk;
  mk.cipher = cipher;
  switch (cipher) {
    case Cipher::kEnigma: {
      EnigmaKey k;
      const auto& bank = wiring.enigma;
      if (options.enigma_randomize_rotors) {
        auto pick = rng.sample_indices(static_cast<int>(bank.rotors.size()), 3);
        for (int i = 0; i < 3; ++i) k.rotors[i] = bank.rotors[pick[i]].name;
      } else {
        for (int i = 0; i < 3; ++i) k.rotors[i] = bank.rotors[i].name;
      }
      for (int i = 0; i < 3; ++i) {
        k.positions[i] = static_cast<int>(rng.uniform(26));
      }
      int pairs = std::clamp(options.enigma_stecker_pairs, 0, 13);
      auto letters = rng.sample_indices(26, 2 * pairs);
      for (int p = 0; p < pairs; ++p) {
        char a = index_letter(letters[2 * p]);
        char b = index_letter(letters[2 * p + 1]);
        if (a > b) std::swap(a, b);
        k.stecker.push_back({a, b});
      }
      std::sort(k.stecker.begin(), k.stecker.end());
      mk.key = std::move(k);
      break;
    }
    case Cipher::kM209: {
      M209Key k;
      for (int w = 0; w < 6; ++w) {
        k.pins[w].resize(kM209WheelSizes[w]);
        for (auto& pin : k.pins[w]) pin = rng.bernoulli(0.5);
        k.positions[w] = static_cast<int>(rng.uniform(kM209WheelSizes[w]));
      }
      for (auto& bar : k.lugs) {
        bar[0] = static_cast<uint8_t>(rng.uniform(7));
        bar[1] = static_cast<uint8_t>(rng.uniform(7));
        if (bar[0] > bar[1]) std::swap(bar[0], bar[1]);
      }
      mk.key = std::move(k);
      break;
    }
    case Cipher::kPurple: {
      PurpleKey k;
      std::vector<uint8_t> plug(26);
      for (int i = 0; i < 26; ++i) plug[i] = static_cast<uint8_t>(i);
      rng.shuffle(plug);
      std::copy(plug.begin(), plug.end(), k.plugboard.begin());
      k.sixes_position = static_cast<int>(rng.uniform(25));
      for (auto& p : k.twenties_positions) {
        p = static_cast<int>(rng.uniform(25));
      }
      std::vector<int> motion = {1, 2, 3};
      rng.shuffle(motion);
      std::copy(motion.begin(), motion.end(), k.motion.begin());
      mk.key = std::move(k);
      break;
    }
    case Cipher::kSigaba: {
      SigabaKey k;
      const auto& bank = wiring.sigaba;
      auto pick = rng.sample_indices(static_cast<int>(bank.rotors.size()), 10);
      for (int i = 0; i < 5; ++i) {
        k.cipher_rotors[i] = {bank.rotors[pick[i]].name, rng.bernoulli(0.5),
                              static_cast<int>(rng.uniform(26))};
        k.control_rotors[i] = {bank.rotors[pick[5 + i]].name,
                               rng.bernoulli(0.5),
                               static_cast<int>(rng.uniform(26))};
      }
      auto ipick =
          rng.sample_indices(static_cast<int>(bank.index_rotors.size()), 5);
      for (int i = 0; i < 5; ++i) {
        k.index_rotors[i] = {bank.index_rotors[ipick[i]].name,
                             static_cast<int>(rng.uniform(10))};
      }
      mk.key = std::move(k);
      break;
    }
    case Cipher::kTypex: {
      TypexKey k;
      const auto& bank = wiring.typex;
      auto pick = rng.sample_indices(static_cast<int>(bank.rotors.size()), 5);
      auto sel = [&](int i) {
        return RotorSelection{bank.rotors[pick[i]].name, rng.bernoulli(0.5),
                              static_cast<int>(rng.uniform(26))};
      };
      k.stators = {sel(0), sel(1)};
      k.rotors = {sel(2), sel(3), sel(4)};
      k.reflector = bank.reflectors.front().name;
      mk.key = std::move(k);
      break;
    }
  }
  return mk;
}

// ------------------------------------------------------------ validation

namespace {

void check_range(std::vector<std::string>& out, int value, int lo, int hi,
                 const std::string& what) {
  if (value < lo || value > hi) out.push_back(what + " out of range");
}

}  // namespace

std::vector<std::string> validate_key(const MachineKey& mk,
                                      const WiringLibrary& wiring) {
  std::vector<std::string> out;
  switch (mk.cipher) {
    case Cipher::kEnigma: {
      const auto& k = std::get<EnigmaKey>(mk.key);
      const auto& bank = wiring.enigma;
      std::set<std::string> names;
      for (const auto& name : k.rotors) {
        if (!bank.find_rotor(name)) out.push_back("unknown rotor " + name);
        if (!names.insert(name).second) out.push_back("duplicate rotor " + name);
      }
      const RotorSpec* refl = bank.find_reflector(k.reflector);
      if (!refl) {
        out.push_back("unknown reflector " + k.reflector);
      } else if (!is_reflector(refl->wiring)) {
        out.push_back("reflector fixed point");
      }
      for (const auto& name : k.stators) {
        if (!bank.find_stator(name)) out.push_back("unknown stator " + name);
      }
      for (int i = 0; i < 3; ++i) {
        check_range(out, k.rings[i], 0, 25, "ring");
        check_range(out, k.positions[i], 0, 25, "position");
      }
      if (k.stecker.size() > 13) out.push_back("too many stecker pairs");
      std::array<bool, 26> used{};
      for (const auto& pair : k.stecker) {
        if (pair.size() != 2 || !is_cipher_letter(pair[0]) ||
            !is_cipher_letter(pair[1]) || pair[0] == pair[1]) {
          out.push_back("malformed stecker pair " + pair);
          continue;
        }
        for (char c : pair) {
          if (used[letter_index(c)]) {
            out.push_back("stecker pairs not disjoint");
          }
          used[letter_index(c)] = true;
        }
      }
      break;
    }
    case Cipher::kM209: {
      const auto& k = std::get<M209Key>(mk.key);
      for (int w = 0; w < 6; ++w) {
        if (static_cast<int>(k.pins[w].size()) != kM209WheelSizes[w]) {
          out.push_back("wheel " + std::to_string(w + 1) + " has wrong length");
        }
        check_range(out, k.positions[w], 0, kM209WheelSizes[w] - 1, "rotor position");
      }
      for (const auto& bar : k.lugs) {
        if (bar[0] > 6 || bar[1] > 6) out.push_back("lug out of range");
      }
      break;
    }
    case Cipher::kPurple: {
      const auto& k = std::get<PurpleKey>(mk.key);
      std::array<bool, 26> seen{};
      bool ok = true;
      for (uint8_t v : k.plugboard) {
        if (v >= 26 || seen[v]) ok = false;
        else seen[v] = true;
      }
      if (!ok) out.push_back("plugboard not a permutation");
      check_range(out, k.sixes_position, 0, 24, "sixes position");
      for (int p : k.twenties_positions) check_range(out, p, 0, 24, "twenties position");
      std::array<int, 3> m = k.motion;
      std::sort(m.begin(), m.end());
      if (m != std::array<int, 3>{1, 2, 3}) out.push_back("motion assignment not a bijection");
      break;
    }
    case Cipher::kSigaba: {
      const auto& k = std::get<SigabaKey>(mk.key);
      const auto& bank = wiring.sigaba;
      std::set<std::string> names;
      auto check_sel = [&](const RotorSelection& s) {
        if (!bank.find_rotor(s.name)) out.push_back("unknown rotor " + s.name);
        if (!names.insert(s.name).second) {
          out.push_back("duplicate rotor selection " + s.name);
        }
        check_range(out, s.position, 0, 25, "rotor position");
      };
      for (const auto& s : k.cipher_rotors) check_sel(s);
      for (const auto& s : k.control_rotors) check_sel(s);
      std::set<std::string> inames;
      for (const auto& s : k.index_rotors) {
        if (!bank.find_index(s.name)) out.push_back("unknown index rotor " + s.name);
        if (!inames.insert(s.name).second) {
          out.push_back("duplicate index rotor " + s.name);
        }
        check_range(out, s.position, 0, 9, "index position");
      }
      break;
    }
    case Cipher::kTypex: {
      const auto& k = std::get<TypexKey>(mk.key);
      const auto& bank = wiring.typex;
      std::set<std::string> names;
      auto check_sel = [&](const RotorSelection& s) {
        if (!bank.find_rotor(s.name)) out.push_back("unknown rotor " + s.name);
        if (!names.insert(s.name).second) {
          out.push_back("duplicate rotor selection " + s.name);
        }
        check_range(out, s.position, 0, 25, "rotor position");
      };
      for (const auto& s : k.stators) check_sel(s);
      for (const auto& s : k.rotors) check_sel(s);
      const RotorSpec* refl = bank.find_reflector(k.reflector);
      if (!refl) {
        out.push_back("unknown reflector " + k.reflector);
      } else if (!is_reflector(refl->wiring)) {
        out.push_back("reflector fixed point");
      }
      break;
    }
  }
  return out;
}

}  // namespace cipherid::machines
