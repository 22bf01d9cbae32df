#!/usr/bin/env python3
"""The rank-two symplectic example: four classes and their tables.

Sp_4 graded by a cocharacter with two Lagrangian eigenspaces has a
three-dimensional degree-2 piece (symmetric 2x2 forms) with orbits of
dimension 0, 2, 3 and four classes: one on each smaller orbit and two on
the open orbit.  This script loads the shipped table datum, runs the
machine, and prints the four headline tables: the degree pairing, the
order chain, the multiplicity matrix, and the unitriangular L-table.

The companion fixture sp4_full adds the two classes of (line stabilizer,
rank-one cuspidal) pairs; the same tables come out, plus one extra
self-paired class on the 2-dimensional orbit.
"""

import json
import os

from gic import load_table_datum, run

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "gic", "data")

for name in ("sp4", "sp4_full"):
    with open(os.path.join(DATA, f"{name}.json")) as fh:
        datum = load_table_datum(fh.read())
    result = run(datum)
    side = result.sides[2]
    print(f"=== {name}: {len(datum.basis)} basis classes, "
          f"{len(side.z)} produced classes at degree 2")
    print("  degree pairing:")
    for a, b in sorted(result.fourier[2].items()):
        print(f"    {a} <-> {b}")
    print("  order (strict pairs):")
    for a, b in sorted(p for p in side.order if p[0] != p[1]):
        print(f"    {a} < {b}")
    print("  multiplicity matrix:")
    for i, el in enumerate(side.z):
        print(f"    {el.key}: " + ", ".join(str(p) for p in side.c[i]))
    print("  L-table rows over the bar-fixed basis:")
    for el in side.z:
        ent = side.ltable[el.key]
        terms = [
            f"[{side.z[j].key}]" + (f"*{p}" if str(p) != "1" else "")
            for j, p in enumerate(ent.coords_w)
            if p
        ]
        print(f"    L[{el.key}] = " + " + ".join(terms)
              + f"   (s = {datum.basis[ent.s_index].label}, r = {ent.r})")
    print()
