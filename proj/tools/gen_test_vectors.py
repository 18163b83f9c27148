#!/usr/bin/env python3
"""Regenerates the CPython-derived test oracles under tests/data/.

  unicode_cases.json — NFC and lowercase+NFC pipelines on mixed-script inputs,
                       expected outputs computed with unicodedata.
  literal_cases.json — randomly built Python values, their repr() source form,
                       and a tagged encoding of the value tree. Every case is
                       round-tripped through ast.literal_eval before emission.

Usage: python3 tools/gen_test_vectors.py [tests/data]
"""

import ast
import json
import os
import random
import sys
import unicodedata as ud

rng = random.Random(20250707)


def gen_unicode_cases(n):
    pools = [
        [chr(c) for c in range(0x20, 0x7F)],
        [chr(c) for c in range(0xC0, 0x100)],                  # Latin-1 letters
        [chr(c) for c in range(0x300, 0x370)],                 # combining marks
        [chr(c) for c in range(0x391, 0x3A1)] + [chr(c) for c in range(0x3B1, 0x3C9)],
        [chr(c) for c in range(0x410, 0x450)],                 # Cyrillic
        [chr(c) for c in range(0x1100, 0x1113)],               # Hangul L jamo
        [chr(c) for c in range(0x1161, 0x1176)],               # Hangul V jamo
        [chr(c) for c in range(0x11A8, 0x11C3)],               # Hangul T jamo
        [chr(c) for c in range(0xAC00, 0xAC40)],               # Hangul syllables
        [chr(c) for c in range(0x621, 0x64B)],                 # Arabic
        [chr(c) for c in range(0xE01, 0xE3B)],                 # Thai
        [chr(c) for c in range(0x1E00, 0x1E60)],               # Latin extended additional
    ]
    cases = []
    for _ in range(n):
        parts = []
        for _ in range(rng.randint(1, 12)):
            pool = rng.choice(pools)
            frag = "".join(rng.choice(pool) for _ in range(rng.randint(1, 4)))
            if rng.random() < 0.5:
                frag = ud.normalize("NFD", frag)
            if rng.random() < 0.2:
                frag = "".join(rng.sample(frag, len(frag)))  # scramble mark order
            parts.append(frag)
        s = "".join(parts)
        # skip anything the scramble turned into a non-char sequence issue
        cases.append({
            "in": s,
            "nfc": ud.normalize("NFC", s),
            "lower_nfc": ud.normalize("NFC", "".join(ch.lower() for ch in s)),
        })
    return cases


SAFE_CHARS = (
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    " _-.,;:!?/#@&%*+=<>()[]{}|~^"
    "'\"\\\n\t\r"
    "éàüñçøßαβгд汉字ไทยعربى€"
)


def gen_string():
    return "".join(rng.choice(SAFE_CHARS) for _ in range(rng.randint(0, 14)))


def gen_scalar():
    k = rng.randrange(6)
    if k == 0:
        return None
    if k == 1:
        return rng.random() < 0.5
    if k == 2:
        return rng.randint(-(2 ** 62), 2 ** 62)
    if k == 3:
        m = rng.choice([
            rng.uniform(-1e6, 1e6),
            rng.uniform(-1, 1) * 10 ** rng.randint(-20, 20),
            float(rng.randint(-10 ** 12, 10 ** 12)),
            rng.uniform(0, 2e9),  # timestamp-ish
        ])
        return m
    return gen_string()


def gen_value(depth):
    if depth <= 0 or rng.random() < 0.35:
        return gen_scalar()
    k = rng.randrange(3)
    n = rng.randint(0, 5)
    if k == 0:
        return [gen_value(depth - 1) for _ in range(n)]
    if k == 1:
        return tuple(gen_value(depth - 1) for _ in range(n))
    d = {}
    for _ in range(n):
        key = gen_scalar()
        if isinstance(key, float) and key != key:
            continue
        d[key] = gen_value(depth - 1)
    return d


def tag(v):
    if v is None:
        return {"k": "none"}
    if isinstance(v, bool):
        return {"k": "bool", "v": v}
    if isinstance(v, int):
        return {"k": "int", "v": v}
    if isinstance(v, float):
        return {"k": "float", "v": v}
    if isinstance(v, str):
        return {"k": "str", "v": v}
    if isinstance(v, list):
        return {"k": "list", "v": [tag(x) for x in v]}
    if isinstance(v, tuple):
        return {"k": "tuple", "v": [tag(x) for x in v]}
    if isinstance(v, dict):
        return {"k": "map", "v": [[tag(a), tag(b)] for a, b in v.items()]}
    raise TypeError(type(v))


def gen_literal_cases(n):
    cases = []
    while len(cases) < n:
        v = gen_value(4)
        expr = repr(v)
        if ast.literal_eval(expr) != v:
            continue
        cases.append({"expr": expr, "value": tag(v)})
    return cases


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "tests/data"
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "unicode_cases.json"), "w") as f:
        json.dump({"cases": gen_unicode_cases(250)}, f, ensure_ascii=True, indent=1)
    with open(os.path.join(out_dir, "literal_cases.json"), "w") as f:
        json.dump({"cases": gen_literal_cases(200)}, f, ensure_ascii=True, indent=1)
    print("wrote unicode_cases.json (250) and literal_cases.json (200) to", out_dir)


if __name__ == "__main__":
    main()
