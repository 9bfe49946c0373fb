"""Reference implementations of the five cipher machines.

These are the independent oracles used to record the frozen test vectors.
They share only the wiring data files with the main implementation; all
machine logic here is written separately, directly from the mechanism
conventions documented in the data file headers and key schema.

Shared conventions:
  * Letters are indices 0..25 (A=0).
  * A rotor with wiring W at position p, ring r maps forward as
      f(x) = (W[(x + p - r) % 26] - (p - r)) % 26
    and backward with W^-1. Reversed insertion replaces W by
      Q = reflect . W^-1 . reflect,  reflect(x) = (26 - x) % 26.
  * All stepping increments positions by one.
"""

from wiringdata import A2I, inv

REFLECT = [(26 - x) % 26 for x in range(26)]


def reversed_wiring(w):
    wi = inv(w)
    return [REFLECT[wi[REFLECT[x]]] for x in range(26)]


def rotor_fwd(w, off, x, n=26):
    return (w[(x + off) % n] - off) % n


def rotor_bwd(wi, off, x, n=26):
    return (wi[(x + off) % n] - off) % n


# ---------------------------------------------------------------- Enigma

class EnigmaRef:
    """Rotor list is left-to-right [slow, mid, fast]; the signal enters at
    the fast rotor. Stators sit between the stecker and the fast rotor, in
    listed signal order. Stepping happens before each letter: the fast
    rotor always steps, the middle steps when the fast shows a notch or
    when it shows its own notch (double step), the slow steps with the
    middle's notch."""

    def __init__(self, key, bank):
        rotors, reflectors, stators = bank
        self.w = [rotors[n][0] for n in key["rotors"]]
        self.wi = [inv(p) for p in self.w]
        self.notches = [rotors[n][1] for n in key["rotors"]]
        self.pos = list(key["positions"])
        self.rings = list(key["rings"])
        self.refl = reflectors[key["reflector"]]
        self.stators = [stators[n] for n in key["stators"]]
        self.stators_i = [inv(p) for p in self.stators]
        self.stecker = list(range(26))
        for pair in key["stecker"]:
            a, b = A2I[pair[0]], A2I[pair[1]]
            self.stecker[a], self.stecker[b] = b, a

    def step(self):
        fast_notch = self.pos[2] in self.notches[2]
        mid_notch = self.pos[1] in self.notches[1]
        if mid_notch:
            self.pos[0] = (self.pos[0] + 1) % 26
        if fast_notch or mid_notch:
            self.pos[1] = (self.pos[1] + 1) % 26
        self.pos[2] = (self.pos[2] + 1) % 26

    def encrypt(self, text):
        out = []
        for ch in text:
            self.step()
            x = self.stecker[A2I[ch]]
            for st in self.stators:
                x = st[x]
            for i in (2, 1, 0):
                x = rotor_fwd(self.w[i], self.pos[i] - self.rings[i], x)
            x = self.refl[x]
            for i in (0, 1, 2):
                x = rotor_bwd(self.wi[i], self.pos[i] - self.rings[i], x)
            for st in reversed(self.stators_i):
                x = st[x]
            x = self.stecker[x]
            out.append(chr(x + 65))
        return "".join(out)


# ---------------------------------------------------------------- M-209

M209_WHEELS = [26, 25, 23, 21, 19, 17]


class M209Ref:
    """Pins are indexed by wheel position; the pin at the current position
    is the effective one. A bar contributes one displacement step when
    either of its lugs (1..6; 0 means disengaged) faces a wheel whose
    effective pin is active. All wheels advance one position after each
    letter. Cipher equation: c = (25 - p + d) mod 26."""

    def __init__(self, key):
        self.pins = [[c == "1" for c in row] for row in key["pins"]]
        self.lugs = [tuple(b) for b in key["lugs"]]
        self.pos = list(key["positions"])

    def encrypt(self, text):
        out = []
        for ch in text:
            active = [self.pins[w][self.pos[w]] for w in range(6)]
            d = 0
            for l1, l2 in self.lugs:
                if (l1 > 0 and active[l1 - 1]) or (l2 > 0 and active[l2 - 1]):
                    d += 1
            p = A2I[ch]
            out.append(chr((25 - p + d) % 26 + 65))
            self.pos = [(self.pos[w] + 1) % M209_WHEELS[w]
                        for w in range(6)]
        return "".join(out)


# ---------------------------------------------------------------- Sigaba

class SigabaRef:
    """Cipher and control banks are listed left to right. Encryption sends
    the letter through the cipher rotors in listed order; decryption uses
    the inverse chain. The four control inputs F,G,H,I pass through the
    control rotors in listed order, are grouped onto index lines by the
    control map, pass through the index rotors in listed order, and the
    step map ORs index outputs onto the five cipher rotors. Per letter:
    encipher, then step the selected cipher rotors, then step the control
    bank (middle always; its right neighbour on a middle carry at 'O';
    second-from-left when middle and right neighbour both carry)."""

    def __init__(self, key, bank):
        rotors, index, control_map, step_map = bank
        self.control_map = control_map
        self.step_map = step_map

        def big(sel):
            w = rotors[sel["name"]]
            if sel["reversed"]:
                w = reversed_wiring(w)
            return [w, inv(w), sel["pos"]]

        self.ciph = [big(s) for s in key["cipher_rotors"]]
        self.ctrl = [big(s) for s in key["control_rotors"]]
        self.index = [[index[s["name"]], s["pos"]] for s in key["index_rotors"]]

    def _stepping_set(self):
        letters = set()
        for x in (5, 6, 7, 8):  # F G H I
            for w, _, p in self.ctrl:
                x = rotor_fwd(w, p, x)
            letters.add(x)
        lines = {self.control_map[x] for x in letters}
        outs = set()
        for line in lines:
            for w, p in self.index:
                line = rotor_fwd(w, p, line, n=10)
            outs.add(line)
        return {self.step_map[o] - 1 for o in outs}

    def _advance(self):
        for r in self._stepping_set():
            self.ciph[r][2] = (self.ciph[r][2] + 1) % 26
        mid_carry = self.ctrl[2][2] == A2I["O"]
        right_carry = self.ctrl[3][2] == A2I["O"]
        self.ctrl[2][2] = (self.ctrl[2][2] + 1) % 26
        if mid_carry:
            self.ctrl[3][2] = (self.ctrl[3][2] + 1) % 26
            if right_carry:
                self.ctrl[1][2] = (self.ctrl[1][2] + 1) % 26

    def encrypt(self, text):
        out = []
        for ch in text:
            x = A2I[ch]
            for w, _, p in self.ciph:
                x = rotor_fwd(w, p, x)
            out.append(chr(x + 65))
            self._advance()
        return "".join(out)

    def decrypt(self, text):
        out = []
        for ch in text:
            x = A2I[ch]
            for w, wi, p in reversed(self.ciph):
                x = rotor_bwd(wi, p, x)
            out.append(chr(x + 65))
            self._advance()
        return "".join(out)


# ---------------------------------------------------------------- Purple

class PurpleRef:
    """plugboard[slot] = letter wired to that slot; slots 0..5 feed the
    sixes switch, slots 6..25 the three twenties stages in fixed order
    1,2,3 (inverted for decryption). Each switch has 25 positions. After
    each letter the sixes steps, and exactly one twenties switch steps:
    the medium when the sixes is at 24, the slow when the sixes is at 23
    and the medium at 24, otherwise the fast."""

    def __init__(self, key, bank):
        _, self.sixes, t1, t2, t3 = bank
        self.tw = [t1, t2, t3]
        self.sixes_i = [inv(p) for p in self.sixes]
        self.tw_i = [[inv(p) for p in sw] for sw in self.tw]
        plug = key["plugboard"]
        self.slot_of = {A2I[c]: i for i, c in enumerate(plug)}
        self.letter_of = [A2I[c] for c in plug]
        self.spos = key["sixes_pos"]
        self.tpos = list(key["twenties_pos"])
        fast, med, slow = key["motion"]
        self.fast, self.med, self.slow = fast - 1, med - 1, slow - 1

    def _advance(self):
        if self.spos == 24:
            mover = self.med
        elif self.spos == 23 and self.tpos[self.med] == 24:
            mover = self.slow
        else:
            mover = self.fast
        self.tpos[mover] = (self.tpos[mover] + 1) % 25
        self.spos = (self.spos + 1) % 25

    def _map(self, ch, invert):
        s = self.slot_of[A2I[ch]]
        if s < 6:
            table = self.sixes_i if invert else self.sixes
            o = table[self.spos][s]
        else:
            t = s - 6
            if invert:
                for i in (2, 1, 0):
                    t = self.tw_i[i][self.tpos[i]][t]
            else:
                for i in (0, 1, 2):
                    t = self.tw[i][self.tpos[i]][t]
            o = t + 6
        return chr(self.letter_of[o] + 65)

    def run(self, text, invert):
        out = []
        for ch in text:
            out.append(self._map(ch, invert))
            self._advance()
        return "".join(out)

    def encrypt(self, text):
        return self.run(text, False)

    def decrypt(self, text):
        return self.run(text, True)


# ---------------------------------------------------------------- Typex

class TypexRef:
    """Stators then rotors are listed in signal order from the keyboard;
    rotors[0] is the fast rotor. Stepping happens before each letter:
    fast always, medium when the fast shows one of its notches, slow when
    the medium does. No double-step quirk. Reversed insertion uses the
    same convention as Sigaba."""

    def __init__(self, key, bank):
        rotors, reflectors = bank

        def sel(s):
            w, notches = rotors[s["name"]]
            if s["reversed"]:
                w = reversed_wiring(w)
            return [w, inv(w), notches, s["pos"]]

        self.stators = [sel(s) for s in key["stators"]]
        self.rotors = [sel(s) for s in key["rotors"]]
        self.refl = reflectors[key["reflector"]]

    def step(self):
        fast_notch = self.rotors[0][3] in self.rotors[0][2]
        mid_notch = self.rotors[1][3] in self.rotors[1][2]
        self.rotors[0][3] = (self.rotors[0][3] + 1) % 26
        if fast_notch:
            self.rotors[1][3] = (self.rotors[1][3] + 1) % 26
        if mid_notch:
            self.rotors[2][3] = (self.rotors[2][3] + 1) % 26

    def encrypt(self, text):
        out = []
        for ch in text:
            self.step()
            x = A2I[ch]
            for w, _, _, p in self.stators:
                x = rotor_fwd(w, p, x)
            for w, _, _, p in self.rotors:
                x = rotor_fwd(w, p, x)
            x = self.refl[x]
            for w, wi, _, p in reversed(self.rotors):
                x = rotor_bwd(wi, p, x)
            for w, wi, _, p in reversed(self.stators):
                x = rotor_bwd(wi, p, x)
            out.append(chr(x + 65))
        return "".join(out)
