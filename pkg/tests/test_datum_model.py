import json

import pytest

from gic.datum import (
    DatumInvalid,
    KVector,
    ParseError,
    SignConvention,
    gram_matrix,
    induction_extend,
    load_table_datum,
    radical_member,
    validate_datum,
)
from gic.exact_algebra import LaurentPoly, RatFunc
from gic.fixtures import sp4_doc
from gic.type_a import build_gl_datum

v = LaurentPoly.monomial
PLUS = SignConvention.PLUS_V


def rf(p):
    return RatFunc.from_laurent(p)


def test_gram_rank_one():
    d = build_gl_datum("glq:0,1;n=1")
    g = gram_matrix(d, PLUS)
    assert g == [[RatFunc.ONE, rf(v(1))], [rf(v(1)), RatFunc.ONE]]


def test_gram_block_zero_between_non_dual_classes():
    d = load_table_datum(sp4_doc(True))
    g = d.gram(PLUS)
    for s in range(4):
        for sp in (4, 5):
            assert g[s][sp].is_zero() and g[sp][s].is_zero()


def test_gram_001_diagonal_entry():
    d = build_gl_datum("glq:0,0,1;n=1")
    i = [b.label for b in d.basis].index("0.0.1")
    expect = rf(LaurentPoly.const(1) + v(2)) * rf(LaurentPoly.const(1) + v(-2))
    assert d.gram(PLUS)[i][i] == expect


MINIMAL_TORUS = {
    "name": "t1",
    "delta": [1, -1],
    "basis": [{"index": 0, "label": "pt"}],
    "primitive_classes": [
        {"id": 0, "dual": 0, "c_F": 0, "members": [0], "theta_ratio": [[0, 1]]}
    ],
    "pairing": [{"s": 0, "s_prime": 0, "tau": 0}],
    "sigma": [0],
    "theta_g": [[0, 1], [2, -1]],
    "orbits": {"1": [{"name": "o0", "dim": 0}], "-1": [{"name": "o0", "dim": 0}]},
    "closure": {},
    "etas": {},
    "leaf": {
        "rigid": True,
        "cprime": [{"s_F": 0, "r_F": [[0, 1]], "kappa_label": "triv"}],
    },
}


def test_load_minimal_torus():
    d = load_table_datum(json.dumps(MINIMAL_TORUS))
    assert len(d.basis) == 1
    assert d.leaf.rigid and d.leaf.cprime[0].r_f == LaurentPoly.const(1)
    assert validate_datum(d) == []


def test_load_sp4_fixture_shape():
    d = load_table_datum(sp4_doc(False))
    assert len(d.basis) == 4
    assert validate_datum(d) == []
    full = load_table_datum(sp4_doc(True))
    assert len(full.basis) == 6


def test_load_rejects_tau_violation():
    doc = sp4_doc(False)
    doc["pairing"][0]["tau"] += 1
    with pytest.raises(DatumInvalid, match="c_F|symmetric"):
        load_table_datum(doc)


def test_load_rejects_malformed():
    with pytest.raises(ParseError):
        load_table_datum("{not json")
    with pytest.raises(ParseError):
        load_table_datum({"name": "x"})


def test_validate_flags_broken_sigma():
    doc = sp4_doc(False)
    doc["sigma"] = [1, 2, 3, 0]  # a 4-cycle, not an involution
    with pytest.raises(DatumInvalid, match="sigma"):
        load_table_datum(doc)
    d = load_table_datum(doc, validate=False)
    assert any("sigma not involutive" in f for f in validate_datum(d))


def test_validate_clean_on_builder_output():
    for spec in ("glq:0,1;n=1", "glq:0,0,1;n=1", "glq:0,1|0;n=2"):
        assert validate_datum(build_gl_datum(spec)) == []


def test_induction_extend():
    d = build_gl_datum("glq:0,1;n=1")
    eta = d.etas[1][0]
    image = induction_extend(eta, KVector.basis_vector(0))
    assert image == KVector.basis_vector(eta.induction[0])
    assert induction_extend(eta, KVector()).is_zero()
    coef = rf(v(1)) / rf(LaurentPoly.const(1) + v(2))
    scaled = induction_extend(eta, KVector({0: coef}))
    assert scaled == KVector({eta.induction[0]: coef})
    # extension commutes with the coordinate bar
    x = KVector({0: coef + RatFunc.ONE})
    assert induction_extend(eta, x.bar()) == induction_extend(eta, x).bar()


def test_radical_membership():
    d = build_gl_datum("glq:0,1;n=1")
    assert radical_member(d, KVector(), PLUS)
    assert not radical_member(d, KVector.basis_vector(0), PLUS)

    d3 = build_gl_datum("glq:0,0,1;n=1")
    labels = [b.label for b in d3.basis]
    kernel = KVector(
        {
            labels.index("0.0.1"): RatFunc.ONE,
            labels.index("0.1.0"): -(rf(v(1)) + rf(v(-1))),
            labels.index("1.0.0"): RatFunc.ONE,
        }
    )
    assert radical_member(d3, kernel, PLUS)
    assert not radical_member(d3, KVector.basis_vector(0), PLUS)


def test_children_resolve_by_reference_and_spec_string():
    doc = sp4_doc(False)
    d = load_table_datum(doc)
    assert d.etas[2][0].child.name == "glq:0,0;n=2"
    assert d.etas[2][1].child.name == "gl1sl2"
