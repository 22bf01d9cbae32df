#!/usr/bin/env python3
"""Walk through the complete computation on the smallest nontrivial datum.

GL_2 with grading weights (0, 1): the degree-1 piece is a line, with two
orbits (zero and open).  Every stage of the machine is visible by hand:
the two basis words, the 2x2 Gram form, the one-element induced family,
the projection producing the open-orbit class, and the resulting 2x2
multiplicity matrix [[1, v], [0, 1]].
"""

from gic import SignConvention, build_gl_datum, run

datum = build_gl_datum("glq:0,1;n=1")
print("datum:", datum.name)
print("basis words:", [b.label for b in datum.basis])

gram = datum.gram(SignConvention.PLUS_V)
print("\nGram form on the basis (rows/columns in word order):")
for row in gram:
    print("   ", [str(x) for x in row])

print("\norbits at degree 1 with closure dimensions:")
for orb in datum.orbits[1]:
    print(f"    {orb.name}: dim {orb.dim}")

result = run(datum)
for m in datum.delta:
    side = result.sides[m]
    print(f"\ndegree {m}: produced classes, open orbit first")
    for el in side.z:
        print(f"    {el.key}  [{el.origin}]  vector = {el.vector.describe(datum)}")
    print("  multiplicity matrix:")
    for i, el in enumerate(side.z):
        print(f"    {el.key}: " + ", ".join(str(p) for p in side.c[i]))
    print("  basis vectors in the produced family (e-rows):")
    for s, b in enumerate(datum.basis):
        print(f"    I[{b.label}]: " + ", ".join(str(p) for p in side.e[s]))

print("\ndegree 1 <-> -1 pairing of classes:")
for a, b in sorted(result.fourier[1].items()):
    print(f"    {a}  <->  {b}")

print("\nclasses under the open orbit whose partner is open (xi):")
print("   ", result.sides[1].xi)
