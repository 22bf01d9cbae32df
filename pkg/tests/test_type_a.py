import math

import pytest

from gic.datum import validate_datum
from gic.exact_algebra import LaurentPoly
from gic.type_a import (
    build_gl_datum,
    child_datum_of_orbit,
    closure_leq,
    enumerate_orbits,
    enumerate_small_data,
    make_type_a_datum,
    multisegment_label,
    multisegments_of,
    orbit_dim_quiver,
    parse_gl_spec,
    rigidity_check,
    tau_of_pair,
)

v = LaurentPoly.monomial
one = LaurentPoly.const(1)


def test_parse_gl_spec():
    assert parse_gl_spec("glq:0,1;n=1") == (((0, 1),), 1, "asc")
    assert parse_gl_spec("glq:1,0|2;n=2;flag=desc") == (((0, 1), (2,)), 2, "desc")
    for bad in ("glq:;n=1", "glq:0,1", "abc", "glq:0,1;n=0"):
        with pytest.raises(Exception):
            parse_gl_spec(bad)


def test_make_rank_one():
    d = build_gl_datum("glq:0,1;n=1")
    assert [b.label for b in d.basis] == ["0.1", "1.0"]
    assert d.classes[0].theta_ratio == one
    assert d.leaf.rigid and not d.leaf.cprime
    # one proper parabolic class per degree, carried by the zero orbit
    assert [e.orbit for e in d.etas[1]] == ["[0]+[1]"]
    assert [e.orbit for e in d.etas[-1]] == ["[0]+[1]"]


def test_make_equal_weights():
    d = build_gl_datum("glq:0,0;n=1")
    assert len(d.basis) == 1
    assert d.etas[1] == () and d.etas[-1] == ()
    assert d.leaf.rigid
    assert d.leaf.cprime[0].r_f == v(-1) + v(1)


def test_make_001():
    d = build_gl_datum("glq:0,0,1;n=1")
    assert len(d.basis) == 3
    assert not d.leaf.rigid
    assert [(e.orbit, e.d) for e in d.etas[1]] == [
        ("[0]+[0]+[1]", 0),
        ("[0]+[0..1]", 2),
    ]


def test_word_count_is_multinomial():
    for spec, count in (
        ("glq:0,1,2,3;n=1", 24),
        ("glq:0,0,1,1;n=1", 6),
        ("glq:0,0,1|2;n=1", 3),
    ):
        d = build_gl_datum(spec)
        assert len(d.basis) == count


def test_tau_examples():
    assert tau_of_pair(((0, 1),), ((0, 1),), 1) == 0
    assert tau_of_pair(((0, 1),), ((1, 0),), 1) == 1
    swapped = (((0, 1), (0, 0), (1, 0)),)  # the two weight-0 lines traded
    assert tau_of_pair(((0, 0, 1),), swapped, 1) == -2


def test_tau_sigma_identity():
    # tau(x, y) + tau(reversed x, y) = c_F on arrangements
    factors = ((0, 0, 1),)
    d = make_type_a_datum(factors, 1)
    c_f = d.classes[0].c_f
    import itertools

    lines = [(0, 0), (0, 1), (1, 0)]
    x = (tuple(lines),)
    x_rev = (tuple(reversed(lines)),)
    for y in itertools.permutations(lines):
        assert tau_of_pair(x, (y,), 1) + tau_of_pair(x_rev, (y,), 1) == c_f


def test_enumerate_orbits():
    records = enumerate_orbits(((0, 1),), 1)
    assert [(lab, dim, eta is not None) for _, lab, dim, eta in records] == [
        ("[0]+[1]", 0, True),
        ("[0..1]", 1, False),  # whole-group parabolic of the rigid pair
    ]
    records = enumerate_orbits(((0, 0, 1),), 1)
    assert [(lab, dim) for _, lab, dim, _ in records] == [
        ("[0]+[0]+[1]", 0),
        ("[0]+[0..1]", 2),
    ]
    assert all(eta is not None for _, _, _, eta in records)
    # no degree-n piece: a single orbit and no proper classes
    records = enumerate_orbits(((0, 0), (5,)), 1)
    assert len(records) == 1 and records[0][3] is None


def test_child_datum_of_orbit():
    factors = ((0, 1),)
    zero = multisegments_of(factors, 1)[0]
    ms = [m for m in multisegments_of(factors, 1)
          if multisegment_label(factors, 1, m) == "[0]+[1]"][0]
    child, ind = child_datum_of_orbit(factors, 1, ms)
    assert child.name == "glq:0|1;n=1"
    assert ind == {0: ((0, 1),)}

    factors = ((0, 0, 1),)
    rank1 = [m for m in multisegments_of(factors, 1)
             if multisegment_label(factors, 1, m) == "[0]+[0..1]"][0]
    child, ind = child_datum_of_orbit(factors, 1, rank1)
    assert child.name == "glq:0|0,1;n=1"
    assert ind == {0: ((0, 0, 1),), 1: ((0, 1, 0),)}

    # zero orbit: blocks are the weight spaces themselves
    zero = [m for m in multisegments_of(factors, 1)
            if multisegment_label(factors, 1, m) == "[0]+[0]+[1]"][0]
    child, ind = child_datum_of_orbit(factors, 1, zero)
    assert child.name == "glq:0,0|1;n=1"
    assert ind == {0: ((0, 0, 1),)}


def test_rigidity_examples():
    assert rigidity_check(((0, 1),), 1).rigid
    assert not rigidity_check(((0, 1),), 1).cprime
    leaf = rigidity_check(((0, 0),), 1)
    assert leaf.rigid and leaf.cprime[0].r_f == v(-1) + v(1)
    assert not rigidity_check(((0, 0, 1),), 1).rigid
    assert not rigidity_check(((0, 2),), 1).rigid
    assert rigidity_check(((0, 2),), 2).rigid
    assert rigidity_check(((0, 1, 2),), 1).rigid


def test_closure_examples():
    factors = ((0, 1),)
    mss = {multisegment_label(factors, 1, m): m for m in multisegments_of(factors, 1)}
    zero, openo = mss["[0]+[1]"], mss["[0..1]"]
    assert closure_leq(zero, zero)
    assert closure_leq(zero, openo)
    assert not closure_leq(openo, zero)

    # two chains with traded segment shapes are incomparable both ways
    factors = ((0, 1, 5, 6),)
    mss = {multisegment_label(factors, 1, m): m for m in multisegments_of(factors, 1)}
    a = mss["[0..1]+[5]+[6]"]
    b = mss["[0]+[1]+[5..6]"]
    assert not closure_leq(a, b) and not closure_leq(b, a)


def test_unique_open_orbit_and_dims():
    for spec in ("glq:0,1,2;n=1", "glq:0,0,1,1;n=1", "glq:0,1|0,1;n=1"):
        d = build_gl_datum(spec)
        for m in d.delta:
            dims = [o.dim for o in d.orbits[m]]
            assert dims.count(max(dims)) == 1
            for _, lab, dim, eta in enumerate_orbits(d.type_a_factors, m):
                assert orbit_dim_quiver(d.type_a_factors, _) == dim
                if eta is not None:
                    assert eta.d == dim


def test_validate_sweep_dim_5():
    for spec in enumerate_small_data(5):
        d = build_gl_datum(f"{spec};n=1")
        assert validate_datum(d) == [], spec


def test_enumerate_small_data_counts():
    specs = enumerate_small_data(4)
    assert len(specs) == len(set(specs))
    assert "glq:0" in specs and "glq:0,1,2,3" in specs
    # several hundred runs once both gradings are counted
    assert 50 <= len(specs) <= 400
