#!/usr/bin/env python3
"""Regenerates src/unicode_tables.hpp from the running CPython's Unicode data.

The engine needs four pieces of Unicode knowledge: word/whitespace character
classes, per-codepoint lowercase mappings, and the canonical decomposition /
combining-class / composition tables behind NFC. CPython's unicodedata is the
reference for all of them, so the tables are dumped from it and checked in.

Usage: python3 tools/gen_unicode_tables.py [output-path]
"""

import sys
import unicodedata as ud

MAX_CP = 0x110000
SURROGATE_LO, SURROGATE_HI = 0xD800, 0xDFFF
HANGUL_S_LO, HANGUL_S_HI = 0xAC00, 0xD7A3


def is_surrogate(c):
    return SURROGATE_LO <= c <= SURROGATE_HI


def ranges(pred):
    out, lo = [], None
    for c in range(MAX_CP):
        ok = not is_surrogate(c) and pred(c)
        if ok and lo is None:
            lo = c
        elif not ok and lo is not None:
            out.append((lo, c - 1))
            lo = None
    if lo is not None:
        out.append((lo, MAX_CP - 1))
    return out


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "src/unicode_tables.hpp"

    word_ranges = ranges(lambda c: chr(c).isalnum() or c == 0x5F)
    space_ranges = ranges(lambda c: chr(c).isspace())

    lower = []
    for c in range(MAX_CP):
        if is_surrogate(c):
            continue
        m = chr(c).lower()
        if m != chr(c):
            cps = [ord(x) for x in m]
            assert len(cps) <= 2, hex(c)
            lower.append((c, cps))

    # Canonical (non-compatibility) decompositions, fully expanded.
    # Hangul syllables are decomposed algorithmically at runtime.
    raw = {}
    for c in range(MAX_CP):
        if is_surrogate(c) or HANGUL_S_LO <= c <= HANGUL_S_HI:
            continue
        d = ud.decomposition(chr(c))
        if d and not d.startswith("<"):
            raw[c] = [int(x, 16) for x in d.split()]

    def expand(c):
        if c in raw:
            out = []
            for x in raw[c]:
                out.extend(expand(x))
            return out
        return [c]

    decomp = {c: expand(c) for c in sorted(raw)}

    ccc = [(c, ud.combining(chr(c)))
           for c in range(MAX_CP)
           if not is_surrogate(c) and ud.combining(chr(c))]

    # Primary composites: pair decompositions that NFC actually composes
    # (this folds in the composition exclusions).
    comp = []
    for c, d in sorted(raw.items()):
        if len(d) == 2 and ud.normalize("NFC", chr(d[0]) + chr(d[1])) == chr(c):
            comp.append((d[0], d[1], c))
    comp.sort()

    pool = []
    decomp_entries = []
    for c, seq in decomp.items():
        decomp_entries.append((c, len(pool), len(seq)))
        pool.extend(seq)

    with open(out_path, "w") as f:
        w = f.write
        w("// Generated by tools/gen_unicode_tables.py — do not edit.\n")
        w("// Unicode data dumped from CPython %s (unicodedata %s).\n"
          % (sys.version.split()[0], ud.unidata_version))
        w("#pragma once\n\n#include <cstdint>\n\n")
        w("namespace claimrank::unicode_tables {\n\n")
        w("struct Range { char32_t lo, hi; };\n")
        w("struct LowerEntry { char32_t cp; char32_t to[2]; std::uint8_t len; };\n")
        w("struct DecompEntry { char32_t cp; std::uint32_t offset; std::uint8_t len; };\n")
        w("struct CccEntry { char32_t cp; std::uint8_t ccc; };\n")
        w("struct CompEntry { char32_t first, second, composed; };\n\n")

        def emit(name, rows, fmt, per_line):
            w("inline constexpr %s = {\n" % name)
            for i in range(0, len(rows), per_line):
                w("    " + " ".join(fmt(r) for r in rows[i:i + per_line]) + "\n")
            w("};\n\n")

        emit("Range kWordRanges[%d]" % len(word_ranges), word_ranges,
             lambda r: "{0x%X,0x%X}," % r, 6)
        emit("Range kSpaceRanges[%d]" % len(space_ranges), space_ranges,
             lambda r: "{0x%X,0x%X}," % r, 6)
        emit("LowerEntry kLower[%d]" % len(lower), lower,
             lambda e: "{0x%X,{0x%X,0x%X},%d}," %
                       (e[0], e[1][0], e[1][1] if len(e[1]) > 1 else 0, len(e[1])), 4)
        emit("char32_t kDecompPool[%d]" % len(pool), pool,
             lambda c: "0x%X," % c, 10)
        emit("DecompEntry kDecomp[%d]" % len(decomp_entries), decomp_entries,
             lambda e: "{0x%X,%d,%d}," % e, 5)
        emit("CccEntry kCcc[%d]" % len(ccc), ccc,
             lambda e: "{0x%X,%d}," % e, 6)
        emit("CompEntry kComp[%d]" % len(comp), comp,
             lambda e: "{0x%X,0x%X,0x%X}," % e, 4)
        w("}  // namespace claimrank::unicode_tables\n")

    print("wrote %s: %d word ranges, %d space ranges, %d lower, "
          "%d decomp (%d pool), %d ccc, %d comp pairs"
          % (out_path, len(word_ranges), len(space_ranges), len(lower),
             len(decomp_entries), len(pool), len(ccc), len(comp)))


if __name__ == "__main__":
    main()
