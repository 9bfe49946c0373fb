#!/usr/bin/env python3
"""Generate the default wiring data files and their embedded C++ copies.

Enigma rotors I-V, reflectors A/B and the Sigaba rotor set are fixed
published wirings. Purple switch tables and Typex rotors have no public
authentic wirings, so they are frozen seeded-random permutations in the
same file format. Output:

  data/wirings/{enigma,sigaba,purple,typex}.txt
  src/wiring_defaults.cpp   (byte-identical embedded copies)
"""

import os
import random
import string

UPPER = string.ascii_uppercase


def check_perm(s, domain):
    assert len(s) == len(domain) and sorted(s) == sorted(domain), s
    return s


ENIGMA_ROTORS = [
    ("I", "EKMFLGDQVZNTOWYHXUSPAIBRCJ", "Q"),
    ("II", "AJDKSIRUXBLHWTMCQGZNPYFVOE", "E"),
    ("III", "BDFHJLCPRTXVZNYEIWGAKMUSQO", "V"),
    ("IV", "ESOVPZJAYQUIRHXLNFTGKDCMWB", "J"),
    ("V", "VZBRGITYUPSDNHLXAWMJQOFECK", "Z"),
]
ENIGMA_REFLECTORS = [
    ("UKW-A", "EJMZALYXVBWFCRQUONTSPIKHGD"),
    ("UKW-B", "YRUHQSLDPXNGOKMIEBFZCWVJAT"),
]
ENIGMA_STATOR = ("ETW", UPPER)

SIGABA_ROTORS = [
    ("R0", "YCHLQSUGBDIXNZKERPVJTAWFOM"),
    ("R1", "INPXBWETGUYSAOCHVLDMQKZJFR"),
    ("R2", "WNDRIOZPTAXHFJYQBMSVEKUCGL"),
    ("R3", "TZGHOBKRVUXLQDMPNFWCJYEIAS"),
    ("R4", "YWTAHRQJVLCEXUNGBIPZMSDFOK"),
    ("R5", "QSLRBTEKOGAICFWYVMHJNXZUDP"),
    ("R6", "CHJDQIGNBSAKVTUOXFWLEPRMZY"),
    ("R7", "CDFAJXTIMNBEQHSUGRYLWZKVPO"),
    ("R8", "XHFESZDNRBCGKQIJLTVMUOYAPW"),
    ("R9", "EZJQXMOGYTCSFRIUPVNADLHWBK"),
]
SIGABA_INDEX = [
    ("I0", "7591482630"),
    ("I1", "3810592764"),
    ("I2", "4086153297"),
    ("I3", "3980526174"),
    ("I4", "6497135280"),
]
# Control-rotor output letter (A..Z) -> index rotor input line (digit).
SIGABA_CONTROL_MAP = "91233444555666677777888888"
# Index rotor output line (0..9) -> cipher rotor (1..5) it steps.
SIGABA_STEP_MAP = "1554433221"


def rand_perm(rng, domain):
    p = list(domain)
    rng.shuffle(p)
    return "".join(p)


def rand_involution(rng):
    # Fixed-point-free involution on 26 letters: a random pairing.
    letters = list(UPPER)
    rng.shuffle(letters)
    out = [None] * 26
    for i in range(0, 26, 2):
        a, b = ord(letters[i]) - 65, ord(letters[i + 1]) - 65
        out[a], out[b] = letters[i + 1], letters[i]
    return "".join(out)


def build_enigma():
    lines = ["# machine: enigma", "# version: 1",
             "# format: <kind> <name> <permutation> [notch letters]"]
    for name, wiring, notch in ENIGMA_ROTORS:
        check_perm(wiring, UPPER)
        lines.append(f"rotor {name} {wiring} {notch}")
    for name, wiring in ENIGMA_REFLECTORS:
        check_perm(wiring, UPPER)
        assert all(wiring[i] != UPPER[i] for i in range(26)), name
        assert all(wiring[ord(wiring[i]) - 65] == UPPER[i] for i in range(26))
        lines.append(f"reflector {name} {wiring}")
    lines.append(f"stator {ENIGMA_STATOR[0]} {ENIGMA_STATOR[1]}")
    return "\n".join(lines) + "\n"


def build_sigaba():
    lines = ["# machine: sigaba", "# version: 1",
             "# format: rotor <name> <permutation> | index <name> <digits>",
             "#         control-map <26 digits A..Z> | step-map <10 digits>"]
    for name, wiring in SIGABA_ROTORS:
        check_perm(wiring, UPPER)
        lines.append(f"rotor {name} {wiring}")
    for name, wiring in SIGABA_INDEX:
        check_perm(wiring, "0123456789")
        lines.append(f"index {name} {wiring}")
    assert len(SIGABA_CONTROL_MAP) == 26
    assert set(SIGABA_STEP_MAP) <= set("12345") and len(SIGABA_STEP_MAP) == 10
    lines.append(f"control-map {SIGABA_CONTROL_MAP}")
    lines.append(f"step-map {SIGABA_STEP_MAP}")
    return "\n".join(lines) + "\n"


def build_purple(rng):
    lines = ["# machine: purple", "# version: 1",
             "# format: sixes-letters <6 letters> | sixes <perm of ABCDEF>",
             "#         twenties-<n> <perm of A..T>, 25 lines per switch"]
    lines.append("sixes-letters AEIOUY")
    dom6 = "ABCDEF"
    dom20 = UPPER[:20]
    for _ in range(25):
        lines.append(f"sixes {rand_perm(rng, dom6)}")
    for sw in (1, 2, 3):
        for _ in range(25):
            lines.append(f"twenties-{sw} {rand_perm(rng, dom20)}")
    return "\n".join(lines) + "\n"


def build_typex(rng):
    lines = ["# machine: typex", "# version: 1",
             "# format: rotor <name> <permutation> <notch letters> | "
             "reflector <name> <permutation>"]
    for i in range(1, 9):
        wiring = rand_perm(rng, UPPER)
        notches = "".join(sorted(rng.sample(UPPER, 9)))
        lines.append(f"rotor T{i} {wiring} {notches}")
    lines.append(f"reflector TRF {rand_involution(rng)}")
    return "\n".join(lines) + "\n"


CPP_TEMPLATE = """\
#include "cipherid/wiring.hpp"

// Default wiring tables. Byte-identical copies of data/wirings/*.txt;
// a unit test keeps the two in sync.

namespace cipherid::machines {{

const char* const kDefaultEnigmaWiringText = R"WIRE({enigma})WIRE";

const char* const kDefaultSigabaWiringText = R"WIRE({sigaba})WIRE";

const char* const kDefaultPurpleWiringText = R"WIRE({purple})WIRE";

const char* const kDefaultTypexWiringText = R"WIRE({typex})WIRE";

}}  // namespace cipherid::machines
"""


def main():
    rng = random.Random(0x5EC0FD)
    files = {
        "enigma": build_enigma(),
        "sigaba": build_sigaba(),
        "purple": build_purple(rng),
        "typex": build_typex(rng),
    }
    os.makedirs("data/wirings", exist_ok=True)
    for name, text in files.items():
        path = f"data/wirings/{name}.txt"
        with open(path, "w") as fh:
            fh.write(text)
        print(f"wrote {path} ({len(text)} bytes)")
    os.makedirs("src", exist_ok=True)
    cpp = CPP_TEMPLATE.format(**files)
    with open("src/wiring_defaults.cpp", "w") as fh:
        fh.write(cpp)
    print("wrote src/wiring_defaults.cpp")


if __name__ == "__main__":
    main()
