#!/usr/bin/env python3
"""One-pass ASCII letter counter, independent of the main implementation."""
import sys

n = 0
with open(sys.argv[1], "rb") as fh:
    while chunk := fh.read(1 << 16):
        for b in chunk:
            if 65 <= b <= 90 or 97 <= b <= 122:
                n += 1
print(n)
