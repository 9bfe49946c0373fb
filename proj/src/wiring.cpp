#include "cipherid/wiring.hpp"

#include <fstream>
#include <sstream>

namespace cipherid::machines {

Permutation invert(const Permutation& p) {
  Permutation out{};
  for (int i = 0; i < 26; ++i) out[p[i]] = static_cast<uint8_t>(i);
  return out;
}

bool is_permutation(const Permutation& p) {
  std::array<bool, 26> seen{};
  for (uint8_t v : p) {
    if (v >= 26 || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_reflector(const Permutation& p) {
  if (!is_permutation(p)) return false;
  for (int i = 0; i < 26; ++i) {
    if (p[i] == i || p[p[i]] != i) return false;
  }
  return true;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> fields;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("wiring line " + std::to_string(line) + ": " + what);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.empty() || raw[0] == '#') continue;
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.fields.push_back(tok);
    if (!line.fields.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

Permutation parse_perm26(const std::string& s, int line) {
  if (s.size() != 26) fail(line, "permutation must have 26 letters");
  Permutation p{};
  for (int i = 0; i < 26; ++i) {
    if (!is_cipher_letter(s[i])) fail(line, "invalid letter in permutation");
    p[i] = static_cast<uint8_t>(letter_index(s[i]));
  }
  if (!is_permutation(p)) fail(line, "not a bijection");
  return p;
}

std::vector<uint8_t> parse_notches(const std::string& s, int line) {
  std::vector<uint8_t> out;
  for (char c : s) {
    if (!is_cipher_letter(c)) fail(line, "invalid notch letter");
    out.push_back(static_cast<uint8_t>(letter_index(c)));
  }
  return out;
}

template <typename T>
const T* find_by_name(const std::vector<T>& items, std::string_view name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

}  // namespace

const RotorSpec* EnigmaBank::find_rotor(std::string_view name) const {
  return find_by_name(rotors, name);
}
const RotorSpec* EnigmaBank::find_reflector(std::string_view name) const {
  return find_by_name(reflectors, name);
}
const RotorSpec* EnigmaBank::find_stator(std::string_view name) const {
  return find_by_name(stators, name);
}
const RotorSpec* SigabaBank::find_rotor(std::string_view name) const {
  return find_by_name(rotors, name);
}
const IndexRotorSpec* SigabaBank::find_index(std::string_view name) const {
  return find_by_name(index_rotors, name);
}
const RotorSpec* TypexBank::find_rotor(std::string_view name) const {
  return find_by_name(rotors, name);
}
const RotorSpec* TypexBank::find_reflector(std::string_view name) const {
  return find_by_name(reflectors, name);
}

EnigmaBank parse_enigma_wiring(std::string_view text) {
  EnigmaBank bank;
  for (const Line& line : tokenize(text)) {
    const auto& f = line.fields;
    if (f[0] == "rotor" && f.size() >= 3) {
      RotorSpec spec{f[1], parse_perm26(f[2], line.number), {}};
      if (f.size() > 3) spec.notches = parse_notches(f[3], line.number);
      bank.rotors.push_back(std::move(spec));
    } else if (f[0] == "reflector" && f.size() == 3) {
      Permutation p = parse_perm26(f[2], line.number);
      if (!is_reflector(p)) fail(line.number, "reflector must be a fixed-point-free involution");
      bank.reflectors.push_back({f[1], p, {}});
    } else if (f[0] == "stator" && f.size() == 3) {
      bank.stators.push_back({f[1], parse_perm26(f[2], line.number), {}});
    } else {
      fail(line.number, "unrecognized record '" + f[0] + "'");
    }
  }
  if (bank.rotors.empty() || bank.reflectors.empty()) {
    throw ParseError("enigma wiring: needs rotors and reflectors");
  }
  return bank;
}

SigabaBank parse_sigaba_wiring(std::string_view text) {
  SigabaBank bank;
  bool have_control = false, have_step = false;
  for (const Line& line : tokenize(text)) {
    const auto& f = line.fields;
    if (f[0] == "rotor" && f.size() == 3) {
      bank.rotors.push_back({f[1], parse_perm26(f[2], line.number), {}});
    } else if (f[0] == "index" && f.size() == 3) {
      if (f[2].size() != 10) fail(line.number, "index wiring needs 10 digits");
      IndexRotorSpec spec{f[1], {}};
      std::array<bool, 10> seen{};
      for (int i = 0; i < 10; ++i) {
        char c = f[2][i];
        if (c < '0' || c > '9' || seen[c - '0']) {
          fail(line.number, "index wiring must be a digit permutation");
        }
        seen[c - '0'] = true;
        spec.wiring[i] = static_cast<uint8_t>(c - '0');
      }
      bank.index_rotors.push_back(std::move(spec));
    } else if (f[0] == "control-map" && f.size() == 2 && f[1].size() == 26) {
      for (int i = 0; i < 26; ++i) {
        if (f[1][i] < '0' || f[1][i] > '9') fail(line.number, "bad digit");
        bank.control_map[i] = static_cast<uint8_t>(f[1][i] - '0');
      }
      have_control = true;
    } else if (f[0] == "step-map" && f.size() == 2 && f[1].size() == 10) {
      for (int i = 0; i < 10; ++i) {
        if (f[1][i] < '1' || f[1][i] > '5') fail(line.number, "step-map digits must be 1..5");
        bank.step_map[i] = static_cast<uint8_t>(f[1][i] - '0');
      }
      have_step = true;
    } else {
      fail(line.number, "unrecognized record '" + f[0] + "'");
    }
  }
  if (bank.rotors.size() < 10 || bank.index_rotors.size() < 5 || !have_control ||
      !have_step) {
    throw ParseError("sigaba wiring: incomplete bank");
  }
  return bank;
}

namespace {

template <size_t N>
std::array<uint8_t, N> parse_small_perm(const std::string& s, int line) {
  if (s.size() != N) fail(line, "permutation has wrong length");
  std::array<uint8_t, N> p{};
  std::array<bool, N> seen{};
  for (size_t i = 0; i < N; ++i) {
    int v = letter_index(s[i]);
    if (v < 0 || v >= static_cast<int>(N) || seen[v]) {
      fail(line, "not a bijection over the sub-alphabet");
    }
    seen[v] = true;
    p[i] = static_cast<uint8_t>(v);
  }
  return p;
}

}  // namespace

PurpleBank parse_purple_wiring(std::string_view text) {
  PurpleBank bank;
  for (const Line& line : tokenize(text)) {
    const auto& f = line.fields;
    if (f[0] == "sixes-letters" && f.size() == 2 && f[1].size() == 6) {
      for (int i = 0; i < 6; ++i) {
        bank.sixes_letters[i] = static_cast<uint8_t>(letter_index(f[1][i]));
      }
    } else if (f[0] == "sixes" && f.size() == 2) {
      bank.sixes.push_back(parse_small_perm<6>(f[1], line.number));
    } else if (f[0].rfind("twenties-", 0) == 0 && f.size() == 2) {
      int sw = f[0].back() - '1';
      if (sw < 0 || sw > 2) fail(line.number, "bad twenties switch number");
      bank.twenties[sw].push_back(parse_small_perm<20>(f[1], line.number));
    } else {
      fail(line.number, "unrecognized record '" + f[0] + "'");
    }
  }
  if (bank.sixes.size() != 25 || bank.twenties[0].size() != 25 ||
      bank.twenties[1].size() != 25 || bank.twenties[2].size() != 25) {
    throw ParseError("purple wiring: each switch needs 25 positions");
  }
  return bank;
}

TypexBank parse_typex_wiring(std::string_view text) {
  TypexBank bank;
  for (const Line& line : tokenize(text)) {
    const auto& f = line.fields;
    if (f[0] == "rotor" && f.size() >= 3) {
      RotorSpec spec{f[1], parse_perm26(f[2], line.number), {}};
      if (f.size() > 3) spec.notches = parse_notches(f[3], line.number);
      bank.rotors.push_back(std::move(spec));
    } else if (f[0] == "reflector" && f.size() == 3) {
      Permutation p = parse_perm26(f[2], line.number);
      if (!is_reflector(p)) fail(line.number, "reflector must be a fixed-point-free involution");
      bank.reflectors.push_back({f[1], p, {}});
    } else {
      fail(line.number, "unrecognized record '" + f[0] + "'");
    }
  }
  if (bank.rotors.size() < 5 || bank.reflectors.empty()) {
    throw ParseError("typex wiring: needs at least 5 rotors and a reflector");
  }
  return bank;
}

const WiringLibrary& WiringLibrary::defaults() {
  static const WiringLibrary lib = [] {
    WiringLibrary w;
    w.enigma = parse_enigma_wiring(kDefaultEnigmaWiringText);
    w.sigaba = parse_sigaba_wiring(kDefaultSigabaWiringText);
    w.purple = parse_purple_wiring(kDefaultPurpleWiringText);
    w.typex = parse_typex_wiring(kDefaultTypexWiringText);
    return w;
  }();
  return lib;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

WiringLibrary WiringLibrary::load_dir(const std::filesystem::path& dir) {
  WiringLibrary lib = defaults();
  auto maybe = [&](const char* name) -> std::string {
    auto path = dir / (std::string(name) + ".txt");
    return std::filesystem::exists(path) ? read_file(path) : std::string();
  };
  if (auto t = maybe("enigma"); !t.empty()) lib.enigma = parse_enigma_wiring(t);
  if (auto t = maybe("sigaba"); !t.empty()) lib.sigaba = parse_sigaba_wiring(t);
  if (auto t = maybe("purple"); !t.empty()) lib.purple = parse_purple_wiring(t);
  if (auto t = maybe("typex"); !t.empty()) lib.typex = parse_typex_wiring(t);
  return lib;
}

}  // namespace cipherid::machines
