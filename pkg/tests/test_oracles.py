import itertools

import pytest

from gic.engine import run
from gic.oracles import (
    OracleMismatch,
    TooLarge,
    bruhat_le,
    check_e_against_counts,
    flag_point_count,
    kl_polynomial,
    multisegment_permutation,
    perm_length,
)
from gic.type_a import (
    build_gl_datum,
    multisegment_label,
    multisegments_of,
)


def ms_by_label(factors, m):
    return {
        multisegment_label(factors, m, ms): ms
        for ms in multisegments_of(factors, m)
    }


def test_flag_count_rank_one():
    factors = ((0, 1),)
    mss = ms_by_label(factors, 1)
    zero, openo = mss["[0]+[1]"], mss["[0..1]"]
    # the flag space of the fixed subgroup is a single point
    assert flag_point_count(factors, 1, ((1, 0),), zero, 2) == 1
    assert flag_point_count(factors, 1, ((1, 0),), openo, 2) == 1
    assert flag_point_count(factors, 1, ((0, 1),), zero, 2) == 1
    assert flag_point_count(factors, 1, ((0, 1),), openo, 2) == 0


def test_flag_count_001():
    factors = ((0, 0, 1),)
    mss = ms_by_label(factors, 1)
    zero, rank1 = mss["[0]+[0]+[1]"], mss["[0]+[0..1]"]
    # every line of the projective plane of the weight-0 space counts
    assert flag_point_count(factors, 1, ((0, 0, 1),), zero, 2) == 3
    assert flag_point_count(factors, 1, ((0, 0, 1),), zero, 3) == 4
    # exactly the flags whose first weight-0 line lies in the kernel
    assert flag_point_count(factors, 1, ((0, 1, 0),), rank1, 2) == 1
    assert flag_point_count(factors, 1, ((0, 0, 1),), rank1, 2) == 0
    assert flag_point_count(factors, 1, ((1, 0, 0),), rank1, 2) == 3


def test_flag_count_representative_invariance():
    factors = ((0, 0, 1, 1),)
    mss = ms_by_label(factors, 1)
    for label, ms in mss.items():
        for word in (((0, 0, 1, 1),), ((0, 1, 0, 1),), ((1, 1, 0, 0),)):
            a = flag_point_count(factors, 1, word, ms, 2, rep_variant="default")
            b = flag_point_count(factors, 1, word, ms, 2, rep_variant="reversed")
            assert a == b, (label, word)


def test_flag_count_guard():
    factors = ((0, 0, 0, 0, 1, 1, 1),)
    with pytest.raises(TooLarge):
        flag_point_count(factors, 1, (tuple(sorted(factors[0])),),
                         multisegments_of(factors, 1)[0], 2)


@pytest.mark.parametrize("spec", ["glq:0,1;n=1", "glq:0,0,1;n=1", "glq:0,1|0;n=1"])
@pytest.mark.parametrize("q", [2, 3])
def test_check_e_small(spec, q):
    r = run(build_gl_datum(spec))
    assert check_e_against_counts(r, q) == []


def test_kl_base_cases():
    assert kl_polynomial(3, (0, 1, 2), (0, 1, 2)) == {0: 1}
    assert kl_polynomial(3, (2, 1, 0), (0, 1, 2)) == {}
    # the smallest nontrivial polynomial: 1 + q at the 3412 pattern
    assert kl_polynomial(4, (0, 1, 2, 3), (2, 3, 0, 1)) == {0: 1, 1: 1}
    assert kl_polynomial(4, (0, 1, 2, 3), (3, 1, 2, 0)) == {0: 1, 1: 1}


def test_kl_degree_bound_s4():
    for y in itertools.permutations(range(4)):
        for x in itertools.permutations(range(4)):
            p = kl_polynomial(4, x, y)
            if not bruhat_le(x, y):
                assert p == {}
                continue
            if x == y:
                assert p == {0: 1}
                continue
            bound = (perm_length(y) - perm_length(x) - 1) // 2
            assert all(0 <= e <= bound for e in p)


def test_kl_dictionary_matches_f_matrix():
    # distinct consecutive weights: every multiplicity entry is
    # v^(l(w)-l(w')) P_{w',w}(v^-2) under the segment-cycling dictionary
    from gic.exact_algebra import LaurentPoly

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
                    findings.append((k, el.orbit, el2.orbit))
    assert findings == []
