"""Acceptance gate: one test per criterion, each printing a verdict line.

Criteria 1-7 are hard gates at exact tolerances.  Criterion 8 (the
Kazhdan-Lusztig dictionary on distinct-weight data) is extended and
non-gating: discrepancies are printed as findings for investigation, since
the dictionary comes from outside this construction.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from gic.datum import KVector, SignConvention, load_table_datum
from gic.engine import check_invariants, run
from gic.exact_algebra import LaurentPoly, RatFunc
from gic.oracles import (
    bruhat_le,
    check_e_against_counts,
    kl_polynomial,
    multisegment_permutation,
    perm_length,
)
from gic.type_a import (
    build_gl_datum,
    enumerate_small_data,
    multisegment_label,
    multisegments_of,
)

v = LaurentPoly.monomial
one = LaurentPoly.const(1)
DATA = os.path.join(os.path.dirname(__file__), "..", "src", "gic", "data")


def rf(p):
    return RatFunc.from_laurent(p)


def single(side, orbit):
    els = [el for el in side.z if el.orbit == orbit]
    assert len(els) == 1
    return els[0]


def test_criterion_1_rank_one_exact():
    t0 = time.perf_counter()
    d = build_gl_datum("glq:0,1;n=1")
    r = run(d)
    elapsed = time.perf_counter() - t0

    g = d.gram(SignConvention.PLUS_V)
    assert g == [[RatFunc.ONE, rf(v(1))], [rf(v(1)), RatFunc.ONE]]
    side = r.sides[1]
    point = single(side, "[0]+[1]")
    opened = single(side, "[0..1]")
    # the induced family is {I[0.1]}; the top family is {I[1.0] - v I[0.1]}
    assert point.origin == "induced"
    assert point.vector == KVector.basis_vector(0)
    assert opened.origin == "fourier"
    assert opened.vector == KVector({1: RatFunc.ONE, 0: rf(-v(1))})
    i, j = side.pos(opened.key), side.pos(point.key)
    assert side.c[i][i] == one and side.c[i][j] == v(1)
    assert side.c[j][i].is_zero() and side.c[j][j] == one
    assert side.e[0][i].is_zero() and side.e[0][j] == one
    assert side.e[1][i] == one and side.e[1][j] == v(1)
    assert side.weight_dims[0] == [0, 1] and side.weight_dims[1] == [1, 1]
    assert elapsed < 0.1
    print(f"PASS criterion 1: rank-one tables exact ({elapsed*1000:.1f} ms)")


def test_criterion_2_weights_001_exact():
    t0 = time.perf_counter()
    d = build_gl_datum("glq:0,0,1;n=1")
    r = run(d)
    elapsed = time.perf_counter() - t0
    side = r.sides[1]
    point = single(side, "[0]+[0]+[1]")
    opened = single(side, "[0]+[0..1]")
    i, j = side.pos(opened.key), side.pos(point.key)
    assert side.c[i][i] == one and side.c[i][j] == v(2)
    assert side.c[j][i].is_zero() and side.c[j][j] == one
    labels = [b.label for b in d.basis]
    assert side.e[labels.index("0.0.1")][i].is_zero()
    assert side.e[labels.index("0.0.1")][j] == v(-1) + v(1)
    assert side.e[labels.index("0.1.0")][i] == one
    assert side.e[labels.index("0.1.0")][j] == one + v(2)
    assert elapsed < 0.1
    print(f"PASS criterion 2: weights (0,0,1) tables exact ({elapsed*1000:.1f} ms)")


def _sp4_classes(result, m):
    side = result.sides[m]
    out = {}
    for el in side.z:
        if el.orbit == "o0":
            out["k0"] = el
        elif el.orbit == "o2" and el.ls != "cusp":
            out["k2"] = el
        elif el.orbit == "o2":
            out["k2t"] = el
        elif el.origin == "fourier" and el.ls.startswith("F(o0"):
            out["k3"] = el
        else:
            out["k3t"] = el
    return out


def test_criterion_3_sp4_tables():
    with open(os.path.join(DATA, "sp4.json")) as fh:
        d = load_table_datum(fh.read())
    r = run(d)
    kp, kn = _sp4_classes(r, 2), _sp4_classes(r, -2)
    f = r.fourier[2]
    # (a) the degree-pairing table
    assert f[kp["k0"].key] == kn["k3"].key
    assert f[kp["k2"].key] == kn["k3t"].key
    assert f[kp["k3"].key] == kn["k0"].key
    assert f[kp["k3t"].key] == kn["k2"].key
    # (b) the chain
    for m in (2, -2):
        ks = _sp4_classes(r, m)
        order = r.sides[m].order
        for lo, hi in (("k0", "k2"), ("k2", "k3"), ("k3", "k3t")):
            assert (ks[lo].key, ks[hi].key) in order
            assert (ks[hi].key, ks[lo].key) not in order
    # (c) the L-table
    for m in (2, -2):
        side = r.sides[m]
        ks = _sp4_classes(r, m)

        def coords(name):
            ent = side.ltable[ks[name].key]
            return {side.z[j].key: p for j, p in enumerate(ent.coords_w) if p}

        assert coords("k0") == {ks["k0"].key: one}
        assert coords("k2") == {ks["k2"].key: one, ks["k0"].key: one}
        assert coords("k3") == {ks["k3"].key: one}
        assert coords("k3t") == {ks["k3t"].key: one, ks["k3"].key: one}
    print("PASS criterion 3: symplectic rank-two fixture tables exact")


def test_criterion_4_xi_reports():
    cache = {}
    for spec in enumerate_small_data(4):
        for n in (1, 2):
            d = build_gl_datum(f"{spec};n={n}")
            r = run(d, cache=cache)
            for m in d.delta:
                side = r.sides[m]
                open_name = d.open_orbit(m).name
                zero = [el for el in side.z if el.d == 0]
                assert len(zero) == 1
                if zero[0].orbit == open_name:
                    # no degree-m piece: nothing lies under the open orbit
                    assert side.xi == []
                else:
                    assert side.xi == [zero[0].key]
    with open(os.path.join(DATA, "sp4.json")) as fh:
        r = run(load_table_datum(fh.read()))
    for m in (2, -2):
        ks = _sp4_classes(r, m)
        assert sorted(r.sides[m].xi) == sorted([ks["k0"].key, ks["k2"].key])
    print("PASS criterion 4: xi reports exact on GL data and the fixture")


def test_criterion_5_property_suite():
    t0 = time.perf_counter()
    cache = {}
    count = 0
    for spec in enumerate_small_data(4):
        for n in (1, 2):
            d = build_gl_datum(f"{spec};n={n}")
            r = run(d, cache=cache)
            findings = check_invariants(r)
            assert findings == [], (spec, n, findings[:3])
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 300
    print(
        f"PASS criterion 5: {count} runs, zero findings ({elapsed:.1f} s)"
    )


def test_criterion_6_oracle_equivalence():
    t0 = time.perf_counter()
    cache = {}
    count = 0
    for spec in enumerate_small_data(4):
        for n in (1, 2):
            d = build_gl_datum(f"{spec};n={n}")
            r = run(d, cache=cache)
            for q in (2, 3):
                findings = check_e_against_counts(r, q)
                assert findings == [], (spec, n, q, findings[:3])
            count += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 600
    print(
        f"PASS criterion 6: counts match on {count} data at q in (2,3) "
        f"({elapsed:.1f} s)"
    )


def test_criterion_7_determinism():
    outs = []
    for seed in ("1", "99991"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-m", "gic.cli", "compute", "--datum", "sp4_full"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    proc = subprocess.run(
        [sys.executable, "-m", "gic.cli", "compute", "--gl", "glq:0,1,2;n=1",
         "--format", "csv"],
        capture_output=True,
        text=True,
        env=dict(os.environ, PYTHONHASHSEED="3"),
    )
    proc2 = subprocess.run(
        [sys.executable, "-m", "gic.cli", "compute", "--gl", "glq:0,1,2;n=1",
         "--format", "csv"],
        capture_output=True,
        text=True,
        env=dict(os.environ, PYTHONHASHSEED="77"),
    )
    assert proc.stdout == proc2.stdout and proc.returncode == 0
    print("PASS criterion 7: byte-identical output across runs and hash seeds")


def test_criterion_8_kl_cross_check_extended():
    findings = []
    for k in (2, 3, 4):
        factors = (tuple(range(k)),)
        spec = "glq:" + ",".join(map(str, range(k))) + ";n=1"
        r = run(build_gl_datum(spec))
        side = r.sides[1]
        perm = {
            multisegment_label(factors, 1, ms): multisegment_permutation(
                factors, 1, ms
            )
            for ms in multisegments_of(factors, 1)
        }
        for i, el in enumerate(side.z):
            for j, el2 in enumerate(side.z):
                w, wp = perm[el.orbit], perm[el2.orbit]
                if bruhat_le(wp, w):
                    p = kl_polynomial(k, wp, w)
                    want = LaurentPoly(
                        {
                            perm_length(w) - perm_length(wp) - 2 * e: c
                            for e, c in p.items()
                        }
                    )
                else:
                    want = LaurentPoly()
                if side.c[i][j] != want:
                    findings.append(
                        f"k={k}: f[{el.orbit},{el2.orbit}] = {side.c[i][j]}, "
                        f"dictionary predicts {want}"
                    )
    # extended and non-gating: report, do not fail the gate
    for f in findings:
        print(f"finding (criterion 8): {f}")
    verdict = "PASS" if not findings else "REPORTED"
    print(f"{verdict} criterion 8: Kazhdan-Lusztig dictionary, "
          f"{len(findings)} findings (non-gating)")
