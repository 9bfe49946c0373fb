#!/usr/bin/env python3
"""Build data/corpus.txt from English prose found on the local system.

Harvests docstrings from installed Python packages, keeps prose-like
sentences, deduplicates them, and shuffles with a fixed seed so the
output is reproducible on the same system. The result is raw English
text (with spaces and punctuation); consumers are expected to normalize
it to the 26-letter alphabet themselves.

Usage: python3 scripts/make_corpus.py [--target-letters N] [--out PATH]
"""

import argparse
import ast
import os
import random
import re
import sys
import sysconfig

PROSE_RE = re.compile(r"^[A-Za-z][A-Za-z0-9 ,;:'\"()\-\.]*$")
WORD_RE = re.compile(r"[A-Za-z]+")

# Code-flavored tokens that mark a sentence as non-prose.
CODEISH = ("self.", "__", "://", "``", ">>>", "np.", "tf.", "torch.",
           "args:", "returns:", "-->", "{}", "[]", "==")


def iter_docstrings(root, byte_budget):
    seen_bytes = 0
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in sorted(filenames):
            if not name.endswith(".py"):
                continue
            path = os.path.join(dirpath, name)
            try:
                size = os.path.getsize(path)
                if size > 2_000_000:
                    continue
                with open(path, "r", encoding="utf-8", errors="ignore") as fh:
                    src = fh.read()
                seen_bytes += size
                tree = ast.parse(src)
            except (SyntaxError, ValueError, OSError):
                continue
            for node in ast.walk(tree):
                if isinstance(node, (ast.Module, ast.FunctionDef,
                                     ast.AsyncFunctionDef, ast.ClassDef)):
                    doc = ast.get_docstring(node, clean=True)
                    if doc:
                        yield doc
            if seen_bytes > byte_budget:
                return


def sentences_from(text):
    for raw in re.split(r"(?<=[.!?])\s+|\n{2,}", text):
        s = " ".join(raw.split())
        if len(s) < 40 or len(s) > 400:
            continue
        low = s.lower()
        if any(tok in low for tok in CODEISH):
            continue
        letters = sum(c.isalpha() or c == " " for c in s)
        if letters / len(s) < 0.85:
            continue
        words = WORD_RE.findall(s)
        if len(words) < 6:
            continue
        # Skip identifier-style words (camelCase, snake_case fragments).
        if any(len(w) > 24 for w in words):
            continue
        yield s


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--target-letters", type=int, default=1_400_000)
    ap.add_argument("--out", default="data/corpus.txt")
    ap.add_argument("--seed", type=int, default=20260801)
    args = ap.parse_args()

    roots = [sysconfig.get_paths()["purelib"], sysconfig.get_paths()["stdlib"]]
    unique = {}
    for root in roots:
        if not os.path.isdir(root):
            continue
        for doc in iter_docstrings(root, byte_budget=300_000_000):
            for s in sentences_from(doc):
                unique.setdefault(s.lower(), s)
        letters_so_far = sum(len(WORD_RE.findall(" ".join(unique)))
                             for _ in [0])
        del letters_so_far

    sents = sorted(unique.values())
    rng = random.Random(args.seed)
    rng.shuffle(sents)

    out_parts = []
    letters = 0
    for s in sents:
        out_parts.append(s)
        letters += sum(c.isalpha() for c in s)
        if letters >= args.target_letters:
            break
    if letters < args.target_letters:
        print(f"warning: only {letters} letters harvested "
              f"(target {args.target_letters})", file=sys.stderr)

    os.makedirs(os.path.dirname(args.out), exist_ok=True)
    text = "\n".join(out_parts) + "\n"
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.out}: {len(out_parts)} sentences, "
          f"{letters} alphabetic characters")


if __name__ == "__main__":
    main()
