#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cipherid/wiring.hpp"

using namespace cipherid;
using namespace cipherid::machines;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("embedded wiring defaults are byte-identical to the data files") {
  std::string dir = std::string(CIPHERID_REPO_DIR) + "/data/wirings/";
  CHECK(slurp(dir + "enigma.txt") == kDefaultEnigmaWiringText);
  CHECK(slurp(dir + "sigaba.txt") == kDefaultSigabaWiringText);
  CHECK(slurp(dir + "purple.txt") == kDefaultPurpleWiringText);
  CHECK(slurp(dir + "typex.txt") == kDefaultTypexWiringText);
}

TEST_CASE("default banks satisfy their structural invariants") {
  const auto& lib = WiringLibrary::defaults();
  CHECK(lib.enigma.rotors.size() == 5);
  for (const auto& r : lib.enigma.rotors) {
    CHECK(is_permutation(r.wiring));
    CHECK(r.notches.size() == 1);
  }
  for (const auto& r : lib.enigma.reflectors) CHECK(is_reflector(r.wiring));
  CHECK(lib.sigaba.rotors.size() == 10);
  CHECK(lib.sigaba.index_rotors.size() == 5);
  CHECK(lib.purple.sixes.size() == 25);
  CHECK(lib.typex.rotors.size() == 8);
  for (const auto& r : lib.typex.rotors) CHECK(r.notches.size() == 9);
  for (const auto& r : lib.typex.reflectors) CHECK(is_reflector(r.wiring));
}

TEST_CASE("wiring parser reports the offending line") {
  // Line 3 carries a 25-letter wiring.
  std::string bad =
      "# machine: enigma\n"
      "rotor I EKMFLGDQVZNTOWYHXUSPAIBRCJ Q\n"
      "rotor II AJDKSIRUXBLHWTMCQGZNPYFVO E\n";
  try {
    parse_enigma_wiring(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("reflector with a fixed point is rejected") {
  std::string bad =
      "rotor I EKMFLGDQVZNTOWYHXUSPAIBRCJ Q\n"
      "reflector UKW-X ABCDEFGHIJKLMNOPQRSTUVWXYZ\n";
  CHECK_THROWS_AS(parse_enigma_wiring(bad), ParseError);
}
