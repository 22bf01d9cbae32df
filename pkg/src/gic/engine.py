"""The end-to-end recursion producing multiplicity and weight tables.

Given a ``GradedDatum``, ``run`` builds, for each degree m in {n, -n}:

  * the induced family: for every proper parabolic class (eta), the child
    datum's top elements pushed through the induction map;
  * bar triangularization: the unique matrix a with
    bar(xi) = sum a[xi, xi1] xi1 modulo the radical, then the bar-fixed
    companions W with change-of-basis matrix c (unit diagonal, off-diagonal
    in vZ[v], support descending along the orbit-dimension order);
  * for rigid data, the top elements over the open orbit: orthogonal
    projections Y of the opposite-degree W-elements that survive the
    radical test, plus the semicuspidal entries from the leaf table;
  * the full change-of-basis matrix c (whose rows are the multiplicity
    polynomials), the e-matrix expressing each basis vector in the produced
    family modulo the radical, weight dimensions at v = 1, a partial order
    on the labels, the degree n <-> -n matching of W-elements modulo the
    radical, the (s, r, L) table, and the set of non-open classes whose
    Fourier partner is open.

Every solvability or integrality promise the construction relies on is
checked at run time; a violation raises ``AlgorithmBroken`` rather than
producing silently wrong tables.  All orderings are deterministic: elements
are stored by descending orbit dimension, then label.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .datum import (
    GradedDatum,
    KVector,
    SignConvention,
    induction_extend,
    radical_member,
)
from .exact_algebra import (
    LaurentPoly,
    RatFunc,
    SingularMatrix,
    series_prefix,
    solve_linear,
)


class AlgorithmBroken(Exception):
    """A solvability or integrality guarantee failed on this datum."""

    def __init__(self, step: str, context: str = ""):
        self.step = step
        self.context = context
        super().__init__(f"{step}: {context}" if context else step)


@dataclass
class ZElement:
    key: str  # "<orbit>::<ls>", unique per side
    orbit: str
    ls: str
    d: int
    origin: str  # "induced" | "fourier" | "cprime"
    vector: KVector
    eta_id: int | None = None
    child_key: str | None = None  # for induced elements
    source_key: str | None = None  # for fourier-born elements


@dataclass
class LEntry:
    s_index: int
    r: LaurentPoly
    coords_z: list  # RatFunc over the side's z order
    coords_w: list  # LaurentPoly over the side's z order


@dataclass
class Side:
    n: int
    z: list  # ZElement, descending (d, key) order
    by_key: dict
    a_keys: list  # keys of the induced block, in its own order
    a: list  # LaurentPoly matrix over a_keys
    c: list  # LaurentPoly matrix over z
    w: list  # KVector per z element
    gram_z: list  # RatFunc matrix over z
    e: list  # LaurentPoly rows per basis element, columns over z
    weight_dims: list
    order: frozenset = field(default_factory=frozenset)  # pairs (lo, hi)
    ltable: dict = field(default_factory=dict)  # key -> LEntry
    xi: list = field(default_factory=list)

    def pos(self, key: str) -> int:
        return self._pos[key]

    def __post_init__(self):
        self._pos = {el.key: i for i, el in enumerate(self.z)}


@dataclass
class RunResult:
    datum: GradedDatum
    convention: SignConvention
    sides: dict  # m -> Side
    fourier: dict  # m -> {key at m -> key at -m}
    cache: dict  # (name, convention) -> RunResult, shared down the tree

    def child_run(self, child: GradedDatum) -> "RunResult":
        return self.cache[(child.name, self.convention)]


def _sort_elements(elements: list) -> list:
    return sorted(elements, key=lambda el: (-el.d, el.key))


def _laurent_or_broken(r: RatFunc, step: str, ctx: str) -> LaurentPoly:
    p = r.as_laurent()
    if p is None:
        raise AlgorithmBroken(step, f"{ctx}: value {r} is not a Laurent polynomial")
    return p


def run(datum: GradedDatum, convention: SignConvention = SignConvention.PLUS_V,
        cache: dict | None = None) -> RunResult:
    """Execute the full recursion on a datum (children memoized by name)."""
    cache = {} if cache is None else cache
    key = (datum.name, convention)
    if key in cache:
        return cache[key]

    zp = {m: _z_prime(datum, m, convention, cache) for m in datum.delta}
    bw = {m: _bar_and_w(datum, m, zp[m], convention) for m in datum.delta}

    extra: dict = {m: [] for m in datum.delta}
    if datum.leaf.rigid:
        for m in datum.delta:
            extra[m] = _rigid_top(datum, m, zp, bw, convention)
            open_orbit = datum.open_orbit(m)
            for entry in datum.leaf.cprime:
                vec = KVector({entry.s_f: RatFunc.from_laurent(entry.r_f).inv()})
                extra[m].append(
                    ZElement(
                        key=f"{open_orbit.name}::{entry.kappa_label}",
                        orbit=open_orbit.name,
                        ls=entry.kappa_label,
                        d=open_orbit.dim,
                        origin="cprime",
                        vector=vec,
                    )
                )

    sides: dict = {}
    for m in datum.delta:
        z = _sort_elements(zp[m] + extra[m])
        if not z:
            raise AlgorithmBroken("assemble", f"empty family at degree {m}")
        keys = [el.key for el in z]
        if len(set(keys)) != len(keys):
            raise AlgorithmBroken("assemble", f"duplicate labels at degree {m}")
        for i in range(len(z)):
            for j in range(i + 1, len(z)):
                if z[i].vector == z[j].vector:
                    raise AlgorithmBroken(
                        "assemble",
                        f"families not disjoint at {m}: {z[i].key} = {z[j].key}",
                    )
        sides[m] = _assemble_side(datum, m, z, zp, bw, convention)

    result = RunResult(datum, convention, sides, {}, cache)
    cache[key] = result

    _fourier_match(result)
    for m in datum.delta:
        sides[m].order = _partial_order(result, m)
        _check_c_support(result, m)
    for m in datum.delta:
        _l_table(result, m)
        sides[m].xi = _xi_set(result, m)
    return result


# ---------------------------------------------------------------------------
# step 1: induced families


def _z_prime(datum, m, convention, cache) -> list:
    out = []
    for eta in sorted(datum.etas[m], key=lambda e: (e.d, e.orbit)):
        child_run = run(eta.child, convention, cache)
        tops = [el for el in child_run.sides[m].z if el.origin != "induced"]
        if not tops:
            raise AlgorithmBroken(
                "z-prime", f"child {eta.child.name} has no top elements at {m}"
            )
        for el in tops:
            out.append(
                ZElement(
                    key=f"{eta.orbit}::{el.ls}",
                    orbit=eta.orbit,
                    ls=el.ls,
                    d=eta.d,
                    origin="induced",
                    vector=induction_extend(eta, el.vector),
                    eta_id=eta.id,
                    child_key=el.key,
                )
            )
    keys = [el.key for el in out]
    if len(set(keys)) != len(keys):
        raise AlgorithmBroken("z-prime", f"label collision at degree {m}")
    return _sort_elements(out)


# ---------------------------------------------------------------------------
# step 2: bar matrix and bar-fixed companions (on the induced family)


def _bar_and_w(datum, m, zp, convention):
    """Returns (gram, a, c_block, w_vectors) over the induced family."""
    k = len(zp)
    if k == 0:
        return [], [], [], []
    gram = [
        [datum.pair(zp[i].vector, zp[j].vector, convention) for j in range(k)]
        for i in range(k)
    ]
    bars = [el.vector.bar() for el in zp]
    rhs = [
        [datum.pair(bars[j], zp[i].vector, convention) for j in range(k)]
        for i in range(k)
    ]
    try:
        cols = solve_linear(gram, rhs)
    except SingularMatrix as exc:
        raise AlgorithmBroken(
            "bar-matrix", f"induced-family pairing matrix singular at {m}: {exc}"
        ) from exc
    a = [[None] * k for _ in range(k)]
    for j in range(k):
        for i in range(k):
            a[j][i] = _laurent_or_broken(
                cols[i][j], "bar-matrix not Laurent", f"a[{zp[j].key},{zp[i].key}]"
            )
    one = LaurentPoly.const(1)
    for j in range(k):
        if a[j][j] != one:
            raise AlgorithmBroken(
                "triangularity violated", f"a diagonal at {zp[j].key}"
            )
        for i in range(k):
            if i != j and a[j][i] and not zp[i].d < zp[j].d:
                raise AlgorithmBroken(
                    "triangularity violated",
                    f"a[{zp[j].key},{zp[i].key}] nonzero without strict descent",
                )

    # the unique unitriangular solution of c = bar(c) a with off-diagonal
    # entries in vZ[v]; targets are processed left to right, which is
    # descending in orbit dimension
    c = [[LaurentPoly() for _ in range(k)] for _ in range(k)]
    for j in range(k):
        c[j][j] = one
        for t in range(j + 1, k):
            if not zp[t].d < zp[j].d:
                continue
            acc = LaurentPoly()
            for l in range(j, t):
                if (l == j or c[j][l]) and zp[l].d > zp[t].d and a[l][t]:
                    acc = acc + c[j][l].bar() * a[l][t]
            if acc.coeff(0) != 0 or acc.bar() != -acc:
                raise AlgorithmBroken(
                    "no vZ[v] solution", f"c[{zp[j].key},{zp[t].key}] from {acc}"
                )
            c[j][t] = LaurentPoly({e: x for e, x in acc.c.items() if e > 0})

    w = []
    for j in range(k):
        vec = KVector()
        for t in range(k):
            if c[j][t]:
                vec = vec + zp[t].vector.scale(RatFunc.from_laurent(c[j][t]))
        w.append(vec)
    return gram, a, c, w


# ---------------------------------------------------------------------------
# step 3: rigid top


def _rigid_top(datum, m, zp, bw, convention) -> list:
    sources = zp[-m]
    if not sources:
        return []
    w_neg = bw[-m][3]
    gram_m = bw[m][0]
    own = zp[m]
    k = len(own)
    out = []
    open_orbit = datum.open_orbit(m)
    for src, wv in zip(sources, w_neg):
        y = wv
        if k:
            rhs = [[datum.pair(wv, own[i].vector, convention)] for i in range(k)]
            try:
                gam = solve_linear(gram_m, rhs)
            except SingularMatrix as exc:
                raise AlgorithmBroken(
                    "projection", f"singular pairing matrix at {m}: {exc}"
                ) from exc
            for i in range(k):
                if gam[i][0]:
                    y = y - own[i].vector.scale(gam[i][0])
        if radical_member(datum, y, convention):
            continue
        out.append(
            ZElement(
                key=f"{open_orbit.name}::F({src.orbit};{src.ls})",
                orbit=open_orbit.name,
                ls=f"F({src.orbit};{src.ls})",
                d=open_orbit.dim,
                origin="fourier",
                vector=y,
                source_key=src.key,
            )
        )
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if out[i].vector == out[j].vector:
                raise AlgorithmBroken(
                    "fourier-top not injective", f"{out[i].key} = {out[j].key}"
                )
    return out


# ---------------------------------------------------------------------------
# step 4: full matrices


def _assemble_side(datum, m, z, zp_all, bw, convention) -> Side:
    zp = zp_all[m]
    gram_zp, a, c_block, w_block = bw[m]
    zp_neg = zp_all[-m]
    w_neg = bw[-m][3]
    neg_pos = {el.key: i for i, el in enumerate(zp_neg)}

    k = len(z)
    kp = len(zp)
    zp_pos = {el.key: i for i, el in enumerate(zp)}
    pos = {el.key: i for i, el in enumerate(z)}
    one = LaurentPoly.const(1)

    w = [None] * k
    c = [[LaurentPoly() for _ in range(k)] for _ in range(k)]

    for el in z:
        i = pos[el.key]
        if el.origin == "induced":
            w[i] = w_block[zp_pos[el.key]]
            src_row = c_block[zp_pos[el.key]]
            for el2 in zp:
                c[i][pos[el2.key]] = src_row[zp_pos[el2.key]]
        elif el.origin == "fourier":
            w[i] = w_neg[neg_pos[el.source_key]]
        else:
            w[i] = el.vector

    # rows of elements outside the induced block: the induced-block
    # coordinates solve the pairing system against the induced family
    col_elements = [el for el in z if el.origin != "induced"]
    if col_elements:
        if kp:
            rhs = [
                [
                    datum.pair(w[pos[el.key]], zp[i].vector, convention)
                    for el in col_elements
                ]
                for i in range(kp)
            ]
            try:
                sol = solve_linear(gram_zp, rhs)
            except SingularMatrix as exc:
                raise AlgorithmBroken(
                    "multiplicity rows", f"singular system at {m}: {exc}"
                ) from exc
        else:
            sol = []
        for col, el in enumerate(col_elements):
            i = pos[el.key]
            c[i][i] = one
            for t in range(kp):
                val = sol[t][col]
                if val:
                    c[i][pos[zp[t].key]] = _laurent_or_broken(
                        val, "multiplicity row not Laurent",
                        f"c[{el.key},{zp[t].key}]",
                    )

    for i in range(k):
        if c[i][i] != one:
            raise AlgorithmBroken(
                "triangularity violated", f"c diagonal at {z[i].key}"
            )
        for j in range(k):
            if i != j and c[i][j] and not c[i][j].in_v_z_v():
                raise AlgorithmBroken(
                    "multiplicity row not in vZ[v]",
                    f"c[{z[i].key},{z[j].key}] = {c[i][j]}",
                )

    gram_z = [
        [datum.pair(z[i].vector, z[j].vector, convention) for j in range(k)]
        for i in range(k)
    ]

    nb = len(datum.basis)
    rhs = [
        [
            datum.pair(KVector.basis_vector(s), z[i].vector, convention)
            for s in range(nb)
        ]
        for i in range(k)
    ]
    try:
        esol = solve_linear(gram_z, rhs)
    except SingularMatrix as exc:
        raise AlgorithmBroken(
            "e not solvable", f"full pairing matrix singular at {m}: {exc}"
        ) from exc
    e = [[None] * k for _ in range(nb)]
    for s in range(nb):
        for j in range(k):
            e[s][j] = _laurent_or_broken(
                esol[j][s], "e not Laurent",
                f"e[{datum.basis[s].label},{z[j].key}]",
            )
    weight_dims = [[p.eval_at_one() for p in row] for row in e]

    return Side(
        n=m,
        z=z,
        by_key={el.key: el for el in z},
        a_keys=[el.key for el in zp],
        a=a,
        c=c,
        w=w,
        gram_z=gram_z,
        e=e,
        weight_dims=weight_dims,
    )


# ---------------------------------------------------------------------------
# step 5: degree matching, order, tables


def _fourier_match(result: RunResult):
    datum, conv = result.datum, result.convention
    n, nn = datum.delta
    s_pos, s_neg = result.sides[n], result.sides[nn]
    if len(s_pos.z) != len(s_neg.z):
        raise AlgorithmBroken(
            "no/ambiguous Fourier partner",
            f"family sizes differ: {len(s_pos.z)} vs {len(s_neg.z)}",
        )
    fwd = {}
    for i, el in enumerate(s_pos.z):
        partners = [
            el2.key
            for j, el2 in enumerate(s_neg.z)
            if radical_member(datum, s_pos.w[i] - s_neg.w[j], conv)
        ]
        if len(partners) != 1:
            raise AlgorithmBroken(
                "no/ambiguous Fourier partner", f"{el.key}: {partners}"
            )
        fwd[el.key] = partners[0]
    if len(set(fwd.values())) != len(fwd):
        raise AlgorithmBroken("no/ambiguous Fourier partner", "match not injective")
    bwd = {v: k for k, v in fwd.items()}
    for side, match in ((s_pos, fwd), (s_neg, bwd)):
        for el in side.z:
            if el.origin == "fourier" and match[el.key] != el.source_key:
                raise AlgorithmBroken(
                    "fourier inconsistent with projection source",
                    f"{el.key} matched {match[el.key]} not {el.source_key}",
                )
            if el.origin == "cprime":
                other = (s_neg if side is s_pos else s_pos).by_key[match[el.key]]
                if other.origin != "cprime" or other.ls != el.ls:
                    raise AlgorithmBroken(
                        "semicuspidal Fourier partner mismatch", el.key
                    )
    result.fourier = {n: fwd, nn: bwd}


def _partial_order(result: RunResult, m: int) -> frozenset:
    datum = result.datum
    side = result.sides[m]
    memo: dict = {}

    def leq(m_at: int, ka: str, kb: str) -> bool:
        if ka == kb:
            return True
        mk = (m_at, ka, kb)
        if mk in memo:
            return memo[mk]
        sd = result.sides[m_at]
        ea, eb = sd.by_key[ka], sd.by_key[kb]
        if ea.origin == "cprime" or eb.origin == "cprime":
            out = False
        elif ea.orbit != eb.orbit:
            out = datum.closure_le(m_at, ea.orbit, eb.orbit)
        elif ea.origin == "induced" and eb.origin == "induced":
            if ea.eta_id != eb.eta_id:
                raise AlgorithmBroken(
                    "order", f"same orbit, different parabolic class at {m_at}"
                )
            eta = datum.etas[m_at][ea.eta_id]
            child = result.child_run(eta.child)
            out = (ea.child_key, eb.child_key) in child.sides[m_at].order
        elif ea.origin == "fourier" and eb.origin == "fourier":
            out = leq(-m_at, ea.source_key, eb.source_key)
        else:
            raise AlgorithmBroken(
                "order", f"mixed origins on one orbit at {m_at}: {ka}, {kb}"
            )
        memo[mk] = out
        return out

    keys = [el.key for el in side.z]
    rel = {(a, b) for a in keys for b in keys if leq(m, a, b)}
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise AlgorithmBroken("order", f"not antisymmetric: {a}, {b}")
    for a, b in rel:
        for b2, cc in rel:
            if b2 == b and (a, cc) not in rel:
                raise AlgorithmBroken("order", f"not transitive: {a},{b},{cc}")
    return frozenset(rel)


def _check_c_support(result: RunResult, m: int):
    side = result.sides[m]
    for i, el in enumerate(side.z):
        for j, el2 in enumerate(side.z):
            if i != j and side.c[i][j] and (el2.key, el.key) not in side.order:
                raise AlgorithmBroken(
                    "multiplicity support outside the order",
                    f"c[{el.key},{el2.key}] nonzero",
                )


def _l_table(result: RunResult, m: int):
    datum = result.datum
    side = result.sides[m]

    def resolve(m_at: int, key: str):
        sd = result.sides[m_at]
        el = sd.by_key[key]
        if el.origin == "cprime":
            for ce in datum.leaf.cprime:
                if ce.kappa_label == el.ls:
                    return ce.s_f, ce.r_f
            raise AlgorithmBroken("l-table", f"no leaf entry for {key}")
        if el.origin == "induced":
            eta = datum.etas[m_at][el.eta_id]
            child = result.child_run(eta.child)
            centry = child.sides[m_at].ltable[el.child_key]
            return eta.induction[centry.s_index], centry.r
        return resolve(-m_at, el.source_key)

    k = len(side.z)
    sr = {el.key: resolve(m, el.key) for el in side.z}
    if len({s for s, _ in sr.values()}) != len(sr):
        raise AlgorithmBroken("l-table", f"s-assignment not injective at {m}")

    # express r^-1 I_s over the family (the e-row), then in the W basis
    c_rf = [[RatFunc.from_laurent(p) for p in row] for row in side.c]
    c_t = [[c_rf[i][j] for i in range(k)] for j in range(k)]
    cols = []
    keys = [el.key for el in side.z]
    for key in keys:
        s, r = sr[key]
        rinv = RatFunc.from_laurent(r).inv()
        cols.append([RatFunc.from_laurent(side.e[s][j]) * rinv for j in range(k)])
    rhs = [[cols[c][j] for c in range(k)] for j in range(k)]
    try:
        wsol = solve_linear(c_t, rhs)
    except SingularMatrix as exc:  # unitriangular, cannot happen
        raise AlgorithmBroken("l-table", str(exc)) from exc
    for col, key in enumerate(keys):
        s, r = sr[key]
        coords_z = [cols[col][j] for j in range(k)]
        coords_w = [
            _laurent_or_broken(
                wsol[j][col], "l-table row not Laurent", f"L[{key},{keys[j]}]"
            )
            for j in range(k)
        ]
        i = side.pos(key)
        if coords_w[i] != LaurentPoly.const(1):
            raise AlgorithmBroken("l-table", f"leading coefficient not 1 at {key}")
        for j in range(k):
            if j != i and coords_w[j] and (keys[j], key) not in side.order:
                raise AlgorithmBroken(
                    "l-table", f"L[{key}] supported at {keys[j]} outside the order"
                )
        side.ltable[key] = LEntry(s, r, coords_z, coords_w)


def _xi_set(result: RunResult, m: int) -> list:
    datum = result.datum
    side = result.sides[m]
    open_here = datum.open_orbit(m).name
    open_there = datum.open_orbit(-m).name
    other = result.sides[-m]
    out = []
    for el in side.z:
        if el.orbit == open_here:
            continue
        partner = other.by_key[result.fourier[m][el.key]]
        if partner.orbit == open_there:
            out.append(el.key)
    return out


# ---------------------------------------------------------------------------
# invariant battery (soft findings; used by tests and the selftest command)


def check_invariants(result: RunResult, series_depth: int = 10) -> list:
    from .datum import validate_datum

    datum, conv = result.datum, result.convention
    findings = [f"datum: {f}" for f in validate_datum(datum)]
    eps = 1 if conv is SignConvention.PLUS_V else -1
    one = LaurentPoly.const(1)

    # bar-covariance of the pairing on basis vectors, the testable form of
    # the opposition identity: bar (x : y) = (bar theta / theta) eps^以-c)
    g = datum.gram(conv)
    for pc in datum.classes:
        theta = RatFunc.from_laurent(pc.theta_ratio)
        factor = theta.bar() / theta
        for s in pc.members:
            for sp in range(len(datum.basis)):
                lhs = g[s][sp].bar()
                sign = 1 if eps == 1 or pc.c_f % 2 == 0 else -1
                mono = RatFunc.from_laurent(LaurentPoly.monomial(-pc.c_f, sign))
                rhs = factor * mono * g[datum.sigma[s]][sp]
                if lhs != rhs:
                    findings.append(
                        f"pairing bar-covariance fails at ({s},{sp})"
                    )

    for m in datum.delta:
        side = result.sides[m]
        k = len(side.z)
        # bar self-consistency on the induced block
        ka = len(side.a_keys)
        for i in range(ka):
            for j in range(ka):
                acc = LaurentPoly()
                for l in range(ka):
                    if side.a[i][l] and side.a[l][j]:
                        acc = acc + side.a[i][l].bar() * side.a[l][j]
                want = one if i == j else LaurentPoly()
                if acc != want:
                    findings.append(f"bar matrix not involutive at {m}")

        # the family pairs to a permutation pattern modulo v
        const = [[None] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                p = side.gram_z[i][j].as_laurent()
                if p is None:
                    findings.append(
                        f"family pairing not Laurent at {m}: "
                        f"({side.z[i].key}:{side.z[j].key})"
                    )
                    continue
                if any(e < 0 for e in p.c):
                    findings.append(
                        f"family pairing has negative exponents at {m}: "
                        f"({side.z[i].key}:{side.z[j].key}) = {p}"
                    )
                const[i][j] = p.coeff(0)
        if all(x is not None for row in const for x in row):
            for i in range(k):
                if sum(1 for j in range(k) if const[i][j]) != 1 or sum(
                    1 for j in range(k) if const[j][i]
                ) != 1:
                    findings.append(f"mod-v pairing pattern not a permutation at {m}")
                    break
                j = next(j for j in range(k) if const[i][j])
                if const[i][j] != 1 or const[j][i] != 1:
                    findings.append(f"mod-v pairing pattern not an involution at {m}")
                    break

        # series form of the same statement, through the normalized pairing
        theta_inv = RatFunc.from_laurent(datum.theta_g).inv()
        for i in range(k):
            for j in range(k):
                s = side.gram_z[i][j] * theta_inv
                pref = series_prefix(s, series_depth)
                delta = const[i][j] if const[i][j] is not None else 0
                if pref.coeff(0) != delta or any(e < 0 for e in pref.c):
                    findings.append(
                        f"normalized pairing series off pattern at {m}: "
                        f"({side.z[i].key}:{side.z[j].key})"
                    )

        # e-rows reproduce the basis vectors modulo the radical
        for s in range(len(datum.basis)):
            residual = KVector.basis_vector(s)
            for j in range(k):
                if side.e[s][j]:
                    residual = residual - side.z[j].vector.scale(
                        RatFunc.from_laurent(side.e[s][j])
                    )
            if not radical_member(datum, residual, conv):
                findings.append(
                    f"e-row residual not radical at {m} for "
                    f"{datum.basis[s].label}"
                )

        # nonnegativity (expected for GL-type data; reported, not fatal)
        if datum.type_a_factors is not None:
            for s in range(len(datum.basis)):
                for j in range(k):
                    if not side.e[s][j].nonneg_coeffs():
                        findings.append(
                            f"negative e coefficient at {m}: "
                            f"e[{datum.basis[s].label},{side.z[j].key}]"
                        )
            for i in range(k):
                for j in range(k):
                    if not side.c[i][j].nonneg_coeffs():
                        findings.append(
                            f"negative multiplicity coefficient at {m}: "
                            f"c[{side.z[i].key},{side.z[j].key}]"
                        )

        # canonical-basis lattice: u and its partner agree modulo v in the
        # W-coordinates, and the defining W-identity of non-induced
        # elements holds against the whole basis
        c_rf = [[RatFunc.from_laurent(p) for p in row] for row in side.c]
        c_t = [[c_rf[i][j] for i in range(k)] for j in range(k)]
        ident = [
            [RatFunc.ONE if i == j else RatFunc.ZERO for j in range(k)]
            for i in range(k)
        ]
        cinv = solve_linear(c_t, ident)  # column i = W-coords of element i
        other = result.sides[-m]
        ko = len(other.z)
        co_rf = [[RatFunc.from_laurent(p) for p in row] for row in other.c]
        co_t = [[co_rf[i][j] for i in range(ko)] for j in range(ko)]
        ident_o = [
            [RatFunc.ONE if i == j else RatFunc.ZERO for j in range(ko)]
            for i in range(ko)
        ]
        cinv_o = solve_linear(co_t, ident_o)
        for i, el in enumerate(side.z):
            pk = result.fourier[m][el.key]
            pi = other.pos(pk)
            for j in range(k):
                here = cinv[j][i].as_laurent()
                jk = result.fourier[m][side.z[j].key]
                there = cinv_o[other.pos(jk)][pi].as_laurent()
                if here is None or there is None:
                    findings.append(f"W-coordinates not Laurent at {m}")
                    continue
                diff = here - there
                if diff and not diff.in_v_z_v():
                    findings.append(
                        f"element and partner differ beyond v-lattice at {m}: "
                        f"{el.key} vs {pk} in coordinate {side.z[j].key}"
                    )
        for i, el in enumerate(side.z):
            if el.origin == "induced":
                continue
            residual = side.w[i]
            for j in range(k):
                if side.c[i][j]:
                    residual = residual - side.z[j].vector.scale(
                        RatFunc.from_laurent(side.c[i][j])
                    )
            if not radical_member(datum, residual, conv):
                findings.append(f"W-identity fails modulo radical at {m}: {el.key}")

    return findings


# ---------------------------------------------------------------------------
# serialization


def _lp_pairs(p: LaurentPoly) -> list:
    return p.to_pairs()


def result_to_jsonable(result: RunResult, n_filter: int | None = None) -> dict:
    datum = result.datum
    sides_out = []
    for m in datum.delta:
        if n_filter is not None and m != n_filter:
            continue
        side = result.sides[m]
        kappas = [
            {
                "key": el.key,
                "orbit": el.orbit,
                "ls": el.ls,
                "d": el.d,
                "origin": el.origin,
            }
            for el in side.z
        ]
        z_vectors = [
            [[datum.basis[i].label, str(x)] for i, x in el.vector.items_sorted()]
            for el in side.z
        ]
        w_vectors = [
            [[datum.basis[i].label, str(x)] for i, x in wv.items_sorted()]
            for wv in side.w
        ]
        sides_out.append(
            {
                "n": m,
                "kappas": kappas,
                "z_vectors": z_vectors,
                "w_vectors": w_vectors,
                "a_keys": side.a_keys,
                "a_matrix": [[_lp_pairs(p) for p in row] for row in side.a],
                "c_matrix": [[_lp_pairs(p) for p in row] for row in side.c],
                "e_basis": [b.label for b in datum.basis],
                "e_matrix": [[_lp_pairs(p) for p in row] for row in side.e],
                "weight_dims": side.weight_dims,
                "order": sorted(
                    [list(p) for p in side.order if p[0] != p[1]]
                ),
                "l_table": [
                    {
                        "kappa": el.key,
                        "s": datum.basis[side.ltable[el.key].s_index].label,
                        "r": _lp_pairs(side.ltable[el.key].r),
                        "coords_w": [
                            _lp_pairs(p) for p in side.ltable[el.key].coords_w
                        ],
                    }
                    for el in side.z
                ],
                "xi": list(side.xi),
            }
        )
    n = datum.delta[0]
    return {
        "datum": datum.name,
        "delta": list(datum.delta),
        "sign_convention": result.convention.value,
        "sides": sides_out,
        "fourier": sorted([k, v] for k, v in result.fourier[n].items()),
    }


def result_to_csv(result: RunResult, n_filter: int | None = None) -> str:
    """f-matrix and weight-dimension tables, one block per degree."""
    datum = result.datum
    lines = []
    for m in datum.delta:
        if n_filter is not None and m != n_filter:
            continue
        side = result.sides[m]
        keys = [el.key for el in side.z]
        lines.append(f"# f-matrix,{datum.name},n={m}")
        lines.append("kappa," + ",".join(keys))
        for i, key in enumerate(keys):
            lines.append(key + "," + ",".join(str(p) for p in side.c[i]))
        lines.append(f"# weight-dims,{datum.name},n={m}")
        lines.append("basis," + ",".join(keys))
        for s, b in enumerate(datum.basis):
            lines.append(
                b.label + "," + ",".join(str(x) for x in side.weight_dims[s])
            )
    return "\n".join(lines) + "\n"
