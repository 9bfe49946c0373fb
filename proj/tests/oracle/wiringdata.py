"""Parser for the wiring data files used by the reference implementations."""

A2I = {c: i for i, c in enumerate("ABCDEFGHIJKLMNOPQRSTUVWXYZ")}


def perm(s):
    return [A2I[c] for c in s]


def inv(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return out


def load(path):
    """Returns a dict of records grouped by line kind."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            out.setdefault(parts[0], []).append(parts[1:])
    return out


def enigma_bank(path):
    d = load(path)
    rotors = {}
    for r in d["rotor"]:
        name, wiring = r[0], r[1]
        notches = [A2I[c] for c in r[2]] if len(r) > 2 else []
        rotors[name] = (perm(wiring), notches)
    reflectors = {r[0]: perm(r[1]) for r in d["reflector"]}
    stators = {r[0]: perm(r[1]) for r in d.get("stator", [])}
    return rotors, reflectors, stators


def sigaba_bank(path):
    d = load(path)
    rotors = {r[0]: perm(r[1]) for r in d["rotor"]}
    index = {r[0]: [int(c) for c in r[1]] for r in d["index"]}
    control_map = [int(c) for c in d["control-map"][0][0]]
    step_map = [int(c) for c in d["step-map"][0][0]]
    return rotors, index, control_map, step_map


def purple_bank(path):
    d = load(path)
    sixes_letters = d["sixes-letters"][0][0]
    sixes = [perm(r[0]) for r in d["sixes"]]
    tw = {n: [perm(r[0]) for r in d[f"twenties-{n}"]] for n in (1, 2, 3)}
    return sixes_letters, sixes, tw[1], tw[2], tw[3]


def typex_bank(path):
    d = load(path)
    rotors = {}
    for r in d["rotor"]:
        rotors[r[0]] = (perm(r[1]), [A2I[c] for c in r[2]])
    reflectors = {r[0]: perm(r[1]) for r in d["reflector"]}
    return rotors, reflectors
