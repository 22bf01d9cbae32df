#!/usr/bin/env python3
"""Multisegments, degeneration order, and the finite-field cross-check.

For GL with distinct consecutive weights (0, 1, 2) the degree-1 orbits are
the multisegments on a three-step chain; rank matrices give the closure
order, and the multiplicity matrix records how each orbit closure's class
decomposes over smaller orbits.  The same numbers are then re-derived with
no shared code by brute-force point counts of adapted flags over F_2 and
F_3, and compared against the classical Kazhdan-Lusztig polynomials via
the segment-cycling dictionary.
"""

from gic import build_gl_datum, check_e_against_counts, kl_polynomial, run
from gic.oracles import multisegment_permutation, perm_length
from gic.type_a import closure_leq, multisegment_label, multisegments_of

factors = ((0, 1, 2),)
datum = build_gl_datum("glq:0,1,2;n=1")
result = run(datum)
side = result.sides[1]

print("orbits (multisegments) at degree 1, with closure relations:")
labelled = {
    multisegment_label(factors, 1, ms): ms for ms in multisegments_of(factors, 1)
}
for la, a in sorted(labelled.items()):
    below = [lb for lb, b in sorted(labelled.items())
             if lb != la and closure_leq(b, a)]
    print(f"    {la}  closes over: {below or '(nothing)'}")

print("\nmultiplicity matrix (rows by descending orbit dimension):")
for i, el in enumerate(side.z):
    print(f"    {el.key}: " + ", ".join(str(p) for p in side.c[i]))

print("\nsegment-cycling permutations of the orbits:")
for label, ms in sorted(labelled.items()):
    w = multisegment_permutation(factors, 1, ms)
    print(f"    {label} -> {w} (length {perm_length(w)})")

print("\nfirst nontrivial Kazhdan-Lusztig polynomial (S_4, 3412 pattern):")
print("    P =", kl_polynomial(4, (0, 1, 2, 3), (2, 3, 0, 1)))

for q in (2, 3):
    findings = check_e_against_counts(result, q)
    print(f"\nflag counts over F_{q} against the e-matrix: "
          f"{'all equal' if not findings else findings}")
