"""Built-in table data for the rank-two symplectic example.

The group is Sp_4 acting on V = V_+ (+) V_- (two Lagrangian planes), the
cocharacter scaling V_+ by t and V_- by 1/t, so the grading is supported in
degrees {2, 0, -2} and the degree-2 piece is the space of symmetric 2x2
forms, with orbits of dimension 0, 2, 3.

Everything combinatorial below is derived from the C2 root system:

  * basis classes of Borel type are the orbits of torus-stable isotropic
    flags (a weight-(+-1) line inside a Lagrangian), four classes labelled
    by the sign word of the flag;
  * the pairing statistic of two flags counts the weight-(+-2) root pairs
    on which their positivity disagrees, minus twice the disagreement on
    the weight-0 pair;
  * the opposition involution sends a flag to its dual flag;
  * the proper parabolic classes are: the Siegel parabolic (stabilizer of
    a Lagrangian) for the zero orbit, whose Levi is a GL_2 with equal
    weights, and the line stabilizer for the rank-one orbit, whose Levi is
    GL_1 x Sp_2 (a rank-one symplectic pair with its own cuspidal class).

Two variants are produced.  ``sp4`` keeps only the Borel-type classes; its
run reproduces the four-object table (one class on each of the 0- and
2-dimensional orbits, two on the open orbit).  ``sp4_full`` adds the two
classes of (line stabilizer, rank-one cuspidal) pairs; the run then carries
one extra self-paired class on the 2-dimensional orbit (the rank-one orbit
has a disconnected stabilizer, so it supports a second equivariant system)
while producing the same four-object tables on the classes above.
"""

from __future__ import annotations

import json

# lines of V: 0 = e1, 1 = e2 (weight +1), 2 = f1, 3 = f2 (weight -1)
_DUAL = {0: 2, 1: 3, 2: 0, 3: 1}
_WEIGHT = {0: 1, 1: 1, 2: -1, 3: -1}

# root operators of sp4 on the weight lines (coefficient signs irrelevant
# for positivity): pairs of opposite roots, with the grading degree of the
# first member
_ROOT_PAIRS = [
    # (name, degree, moves of the positive member, moves of the negative)
    ("short0", 0, ((1, 0), (2, 3)), ((0, 1), (3, 2))),  # e2->e1, f1->f2
    ("long1", 2, ((2, 0),), ((0, 2),)),  # f1->e1
    ("long2", 2, ((3, 1),), ((1, 3),)),  # f2->e2
    ("short2", 2, ((3, 0), (2, 1)), ((0, 3), (1, 2))),  # f2->e1, f1->e2
]


def _flags():
    out = []
    for u1 in range(4):
        for u2 in range(4):
            if u2 != u1 and u2 != _DUAL[u1]:
                out.append((u1, u2))
    return out


def _flag_order(flag):
    u1, u2 = flag
    return [u1, u2, _DUAL[u2], _DUAL[u1]]


def _moves_up(moves, pos) -> bool:
    return all(pos[dst] < pos[src] for src, dst in moves)


def _flag_signs(flag):
    """(weight-2 positivity vector, weight-0 positivity) of a flag."""
    pos = {line: i for i, line in enumerate(_flag_order(flag))}
    wt2 = []
    wt0 = None
    for name, deg, plus, minus in _ROOT_PAIRS:
        up_plus = _moves_up(plus, pos)
        up_minus = _moves_up(minus, pos)
        if up_plus == up_minus:
            raise AssertionError(f"root {name} not oriented by flag {flag}")
        if deg == 0:
            wt0 = up_plus
        else:
            wt2.append(up_plus)
    return tuple(wt2), wt0


def _tau(x, y) -> int:
    s2x, s0x = _flag_signs(x)
    s2y, s0y = _flag_signs(y)
    return sum(1 for a, b in zip(s2x, s2y) if a != b) - 2 * (s0x != s0y)


def _sign_word(flag):
    u1, u2 = flag
    return ("+" if _WEIGHT[u1] > 0 else "-") + ("+" if _WEIGHT[u2] > 0 else "-")


_CLASS_ORDER = ["++", "+-", "-+", "--"]


def _borel_block():
    """Pairing orbits and opposition for the four Borel-type classes."""
    flags = _flags()
    by_class: dict = {w: [] for w in _CLASS_ORDER}
    for fl in flags:
        by_class[_sign_word(fl)].append(fl)
    reps = {w: sorted(by_class[w])[0] for w in _CLASS_ORDER}
    pairing = []
    for si, w in enumerate(_CLASS_ORDER):
        x = reps[w]
        for y in flags:
            pairing.append(
                {"s": si, "s_prime": _CLASS_ORDER.index(_sign_word(y)), "tau": _tau(x, y)}
            )
    sigma = []
    for w in _CLASS_ORDER:
        u1, u2 = reps[w]
        sigma.append(_CLASS_ORDER.index(_sign_word((_DUAL[u1], _DUAL[u2]))))
    return pairing, sigma


def _lp(pairs):
    return [list(p) for p in pairs]


def gl1sl2_doc(full: bool) -> dict:
    """The GL_1 x Sp_2 child datum (rank-one symplectic pair)."""
    basis = [{"index": 0, "label": "b+"}, {"index": 1, "label": "b-"}]
    classes = [
        {
            "id": 0,
            "dual": 0,
            "c_F": 1,
            "members": [0, 1],
            "theta_ratio": _lp([[0, 1]]),
        }
    ]
    pairing = [
        {"s": 0, "s_prime": 0, "tau": 0},
        {"s": 0, "s_prime": 1, "tau": 1},
        {"s": 1, "s_prime": 0, "tau": 1},
        {"s": 1, "s_prime": 1, "tau": 0},
    ]
    sigma = [1, 0]
    leaf: dict = {"rigid": True, "cprime": []}
    if full:
        basis.append({"index": 2, "label": "cusp"})
        classes.append(
            {
                "id": 1,
                "dual": 1,
                "c_F": 0,
                "members": [2],
                "theta_ratio": _lp([[0, 1], [2, -1]]),
            }
        )
        pairing.append({"s": 2, "s_prime": 2, "tau": 0})
        sigma.append(2)
        leaf["cprime"] = [{"s_F": 2, "r_F": _lp([[0, 1]]), "kappa_label": "cusp"}]
    return {
        "name": "gl1sl2_full" if full else "gl1sl2",
        "delta": [2, -2],
        "basis": basis,
        "primitive_classes": classes,
        "pairing": pairing,
        "sigma": sigma,
        "theta_g": _lp([[0, 1], [2, -2], [4, 1]]),
        "orbits": {
            "2": [{"name": "o0", "dim": 0}, {"name": "o1", "dim": 1}],
            "-2": [{"name": "o0", "dim": 0}, {"name": "o1", "dim": 1}],
        },
        "closure": {"2": [["o0", "o1"]], "-2": [["o0", "o1"]]},
        "etas": {
            # the degree-m good parabolic of the zero orbit is the Borel
            # whose unipotent radical sits in degree -m
            "2": [
                {"d": 0, "orbit": "o0", "child": "glq:0|0;n=2", "induction": [[0, 1]]}
            ],
            "-2": [
                {"d": 0, "orbit": "o0", "child": "glq:0|0;n=2", "induction": [[0, 0]]}
            ],
        },
        "leaf": leaf,
    }


def sp4_doc(full: bool = False) -> dict:
    pairing, sigma = _borel_block()
    basis = [{"index": i, "label": w} for i, w in enumerate(_CLASS_ORDER)]
    classes = [
        {
            "id": 0,
            "dual": 0,
            "c_F": 1,
            "members": [0, 1, 2, 3],
            "theta_ratio": _lp([[0, 1], [2, 1]]),
        }
    ]
    child_name = "gl1sl2_full" if full else "gl1sl2"
    # eta of the rank-one orbit: flags inside the line stabilizer refine a
    # weight -1 line, so the Borel classes of the child land at -+ and --
    # (at degree +2) resp. ++ and +- (at degree -2)
    eta2_pos = [[0, 2], [1, 3]]
    eta2_neg = [[0, 0], [1, 1]]
    if full:
        basis += [{"index": 4, "label": "cp+"}, {"index": 5, "label": "cp-"}]
        classes.append(
            {
                "id": 1,
                "dual": 1,
                "c_F": 0,
                "members": [4, 5],
                "theta_ratio": _lp([[0, 1], [4, -1]]),
            }
        )
        # both line-stabilizer classes carry the same cuspidal pair; all
        # four orbit pairs have tau = 0 (their radicals share no graded
        # root spaces in degrees 0 and 2 beyond the symmetric difference)
        for s in (4, 5):
            for sp in (4, 5):
                pairing.append({"s": s, "s_prime": sp, "tau": 0})
        sigma = sigma + [5, 4]
        # the cuspidal class of the child is carried to the class of the
        # parabolic stabilizing a line of the matching weight sign
        eta2_pos.append([2, 5])
        eta2_neg.append([2, 4])
    return {
        "name": "sp4_full" if full else "sp4",
        "delta": [2, -2],
        "basis": basis,
        "primitive_classes": classes,
        "pairing": pairing,
        "sigma": sigma,
        "theta_g": _lp([[0, 1], [2, -1], [4, -1], [6, 1]]),
        "orbits": {
            "2": [
                {"name": "o0", "dim": 0},
                {"name": "o2", "dim": 2},
                {"name": "o3", "dim": 3},
            ],
            "-2": [
                {"name": "o0", "dim": 0},
                {"name": "o2", "dim": 2},
                {"name": "o3", "dim": 3},
            ],
        },
        "closure": {
            "2": [["o0", "o2"], ["o2", "o3"]],
            "-2": [["o0", "o2"], ["o2", "o3"]],
        },
        "etas": {
            # zero orbit: Siegel parabolic, Levi a GL_2 with equal weights;
            # its single class induces to the flags inside it
            "2": [
                {
                    "d": 0,
                    "orbit": "o0",
                    "child": "glq:0,0;n=2",
                    "induction": [[0, 3]],
                },
                {"d": 2, "orbit": "o2", "child": child_name, "induction": eta2_pos},
            ],
            "-2": [
                {
                    "d": 0,
                    "orbit": "o0",
                    "child": "glq:0,0;n=2",
                    "induction": [[0, 0]],
                },
                {"d": 2, "orbit": "o2", "child": child_name, "induction": eta2_neg},
            ],
        },
        "children": {child_name: gl1sl2_doc(full)},
        "leaf": {"rigid": True, "cprime": []},
    }


BUILTIN_DATA = {
    "sp4": lambda: sp4_doc(False),
    "sp4_full": lambda: sp4_doc(True),
}


def write_fixture_files(directory: str):
    import os

    for name, make in BUILTIN_DATA.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(make(), fh, indent=1, sort_keys=True)
            fh.write("\n")


if __name__ == "__main__":
    import os

    here = os.path.join(os.path.dirname(__file__), "data")
    os.makedirs(here, exist_ok=True)
    write_fixture_files(here)
    print(f"wrote fixtures to {here}")
