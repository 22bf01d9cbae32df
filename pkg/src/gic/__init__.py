"""Exact multiplicity and canonical-basis tables for graded orbit data.

Quick start::

    from gic import build_gl_datum, run

    datum = build_gl_datum("glq:0,1;n=1")
    result = run(datum)
    result.sides[1].c        # the multiplicity matrix at degree 1
    result.fourier[1]        # the degree 1 <-> -1 pairing of classes

Table data for groups outside the GL family are loaded from JSON via
``load_table_datum``; two symplectic rank-two fixtures ship in
``gic/data``.
"""

from .datum import (
    DatumInvalid,
    GradedDatum,
    KVector,
    ParseError,
    SignConvention,
    gram_matrix,
    induction_extend,
    load_table_datum,
    radical_member,
    validate_datum,
)
from .engine import (
    AlgorithmBroken,
    RunResult,
    check_invariants,
    result_to_csv,
    result_to_jsonable,
    run,
)
from .exact_algebra import (
    LaurentPoly,
    NotExpandable,
    RatFunc,
    SingularMatrix,
    eval_at_one,
    lp_bar,
    rf_bar,
    series_prefix,
    solve_linear,
)
from .oracles import (
    OracleMismatch,
    TooLarge,
    check_e_against_counts,
    flag_point_count,
    kl_polynomial,
)
from .type_a import (
    build_gl_datum,
    closure_leq,
    enumerate_orbits,
    enumerate_small_data,
    make_type_a_datum,
    rigidity_check,
    tau_of_pair,
)

__version__ = "0.1.0"
