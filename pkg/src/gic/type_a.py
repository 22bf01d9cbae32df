"""Automatic datum construction for products of general linear groups.

For G a product of GL factors and a grading cocharacter given by integer
weights on each factor's vector space, every ingredient of the recursion
reduces to combinatorics of words and segments:

  * basis classes are arrangements ("words") of each factor's weight
    multiset, one class per coset of the weight-preserving subgroup of the
    permutation group;
  * the pairing statistic tau between two arrangements counts line pairs
    whose weights differ by exactly n and are ordered oppositely, minus
    twice the oppositely ordered equal-weight pairs;
  * orbits on the degree-n piece are multisegments: multisets of intervals
    on the chains of weights linked by steps of n, with rank matrices giving
    the closure (degeneration) order;
  * the parabolic attached to an orbit is read off from a half-integer
    weighting on the lines of each segment (the arithmetic string
    n*(j - (len-1)/2)); its Levi groups lines by the difference
    c = weight - string value, each group becoming one factor of the child
    datum, blocks ordered by ascending c/n;
  * a pair is rigid exactly when each factor's doubled, centered weight
    multiset splits into symmetric strings {k, k-2, ..., -k}.

Everything returned is exact and deterministic: words sorted
lexicographically, orbits sorted by (dimension, label), children memoized by
their canonical name.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .datum import (
    BasisId,
    CPrimeEntry,
    EtaClass,
    GradedDatum,
    LeafData,
    OrbitLabel,
    PairingOrbit,
    ParseError,
    PrimitiveClass,
)
from .exact_algebra import LaurentPoly


def _q_int(i: int) -> LaurentPoly:
    # 1 + v^2 + ... + v^(2(i-1))
    return LaurentPoly({2 * j: 1 for j in range(i)})


def poincare_gl(m: int) -> LaurentPoly:
    """Poincare polynomial of the full flag variety of GL_m in v^2."""
    out = LaurentPoly.const(1)
    for i in range(1, m + 1):
        out = out * _q_int(i)
    return out


def theta_gl(m: int) -> LaurentPoly:
    """(1 - v^2)^m times the flag Poincare polynomial of GL_m."""
    out = LaurentPoly.const(1)
    for i in range(1, m + 1):
        out = out * LaurentPoly({0: 1, 2 * i: -1})
    return out


# ---------------------------------------------------------------------------
# words and the pairing statistic


def _factor_words(weights: tuple) -> list:
    return sorted(set(itertools.permutations(sorted(weights))))


def words_of(factors: tuple) -> list:
    """All basis words: one weight arrangement per factor, sorted."""
    per = [_factor_words(f) for f in factors]
    return [tuple(w) for w in itertools.product(*per)]


def canonical_lines(word_factor: tuple) -> tuple:
    """Lines (weight, copy#) for one factor word, copies in order of use."""
    seen: dict = {}
    out = []
    for w in word_factor:
        k = seen.get(w, 0)
        seen[w] = k + 1
        out.append((w, k))
    return tuple(out)


def _tau_factor(xa: tuple, ya: tuple, n: int) -> int:
    pos_x = {line: i for i, line in enumerate(xa)}
    pos_y = {line: i for i, line in enumerate(ya)}
    if set(pos_x) != set(pos_y):
        raise ValueError("arrangements use different lines")
    lines = list(xa)
    tau = 0
    an = abs(n)
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a, b = lines[i], lines[j]
            gap = abs(a[0] - b[0])
            if gap != an and gap != 0:
                continue
            flip = (pos_x[a] < pos_x[b]) != (pos_y[a] < pos_y[b])
            if not flip:
                continue
            tau += 1 if gap == an else -2
    return tau


def tau_of_pair(x, y, n: int) -> int:
    """Pairing statistic between two arrangements of the same lines.

    ``x`` and ``y`` are tuples of per-factor sequences whose entries are
    either plain weights (lines then get copy numbers in order of
    appearance) or explicit (weight, copy) lines.
    """

    def arr(word):
        out = []
        for fw in word:
            if fw and isinstance(fw[0], tuple):
                out.append(tuple(fw))
            else:
                out.append(canonical_lines(tuple(fw)))
        return out

    xs, ys = arr(x), arr(y)
    if len(xs) != len(ys):
        raise ValueError("factor count mismatch")
    return sum(_tau_factor(a, b, n) for a, b in zip(xs, ys))


# ---------------------------------------------------------------------------
# multisegments


def chains_of(factors: tuple, m: int) -> list:
    """Maximal weight chains stepping by m, as (factor, positions) pairs.

    Positions are listed in map order: a degree-m element sends the line at
    position i into position i+1 of the same chain.
    """
    out = []
    for f_idx, weights in enumerate(factors):
        present = sorted(set(weights), reverse=m < 0)
        left = set(present)
        for w in present:
            if w not in left:
                continue
            run = [w]
            left.discard(w)
            while run[-1] + m in left:
                run.append(run[-1] + m)
                left.discard(run[-1])
            out.append((f_idx, tuple(run)))
    return out


def _chain_multisegments(mults: tuple) -> list:
    """All interval multisets on positions 0..k-1 with given coverage."""
    k = len(mults)

    def rec(start: int, need: list):
        if start == k:
            yield ()
            return
        t = need[start]
        if t < 0:
            return
        if t == 0:
            for rest in rec(start + 1, need):
                yield rest
            return
        for ends in itertools.combinations_with_replacement(range(start, k), t):
            new = list(need)
            ok = True
            for e in ends:
                for p in range(start, e + 1):
                    new[p] -= 1
                    if new[p] < 0:
                        ok = False
            if not ok:
                continue
            segs = tuple(sorted((start, e - start + 1) for e in ends))
            for rest in rec(start + 1, new):
                yield segs + rest

    return [tuple(sorted(ms)) for ms in rec(0, list(mults))]


def multisegments_of(factors: tuple, m: int) -> list:
    """All orbits at degree m, each a tuple of per-chain segment multisets."""
    chains = chains_of(factors, m)
    per_chain = []
    for f_idx, positions in chains:
        mults = tuple(factors[f_idx].count(p) for p in positions)
        per_chain.append(_chain_multisegments(mults))
    return [tuple(combo) for combo in itertools.product(*per_chain)]


def segment_label(positions: tuple, start: int, length: int) -> str:
    ws = positions[start : start + length]
    lo, hi = min(ws), max(ws)
    return f"[{lo}]" if length == 1 else f"[{lo}..{hi}]"


def multisegment_label(factors: tuple, m: int, ms: tuple) -> str:
    chains = chains_of(factors, m)
    per_factor: dict = {i: [] for i in range(len(factors))}
    for (f_idx, positions), segs in zip(chains, ms):
        for start, length in segs:
            ws = positions[start : start + length]
            per_factor[f_idx].append((min(ws), max(ws)))
    parts = []
    for i in range(len(factors)):
        segs = sorted(per_factor[i])
        parts.append("+".join(
            f"[{lo}]" if lo == hi else f"[{lo}..{hi}]" for lo, hi in segs
        ))
    return "|".join(parts)


def rank_matrices(ms: tuple) -> tuple:
    """Composite-map ranks r[i][j] per chain; the degeneration invariants."""
    out = []
    for segs in ms:
        k = 0
        for start, length in segs:
            k = max(k, start + length)
        r = {}
        for i in range(k):
            for j in range(i, k):
                r[(i, j)] = sum(
                    1 for (s, L) in segs if s <= i and j <= s + L - 1
                )
        out.append(r)
    return tuple(out)


def closure_leq(a: tuple, b: tuple) -> bool:
    """Degeneration order: every composite rank of a is at most that of b."""
    ra, rb = rank_matrices(a), rank_matrices(b)
    if len(ra) != len(rb):
        raise ValueError("multisegments over different chain sets")
    for da, db in zip(ra, rb):
        keys = set(da) | set(db)
        for key in keys:
            if da.get(key, 0) > db.get(key, 0):
                return False
    return True


def orbit_dim_quiver(factors: tuple, ms: tuple) -> int:
    """Orbit dimension = dim of the acting group minus hom-space dimension.

    Independent of the parabolic bigrading: uses only interval-module homs
    Hom(I[a,b], I[c,d]) = k iff c <= a <= d <= b within each chain.
    """
    dim_g = sum(
        sum(f.count(w) ** 2 for w in set(f)) for f in factors
    )
    hom = 0
    for segs in ms:
        for (a_s, a_l) in segs:
            a, b = a_s, a_s + a_l - 1
            for (c_s, c_l) in segs:
                c, d = c_s, c_s + c_l - 1
                if c <= a <= d <= b:
                    hom += 1
    return dim_g - hom


# ---------------------------------------------------------------------------
# line data, the child Levi, and the parabolic dimension count


def _line_data(factors: tuple, m: int, ms: tuple) -> list:
    """Lines (factor, weight, string value) realizing a multisegment.

    Each segment of length L contributes lines with string values
    m*(j - (L-1)/2), j = 0..L-1, summing to zero per segment.
    """
    chains = chains_of(factors, m)
    lines = []
    for (f_idx, positions), segs in zip(chains, ms):
        for start, length in segs:
            for j in range(length):
                mu = positions[start + j]
                nu = Fraction(m * (2 * j - (length - 1)), 2)
                lines.append((f_idx, mu, nu))
    return lines


def _d_eta(factors: tuple, m: int, ms: tuple) -> int:
    """dim L_0 G - dim L_0 P + dim L_m P from the (string, grading) bigrade."""
    lines = _line_data(factors, m, ms)
    sign = 1 if m > 0 else -1

    def in_p(a, b):
        # E_{a,b} lies in the parabolic iff c(a)/m <= c(b)/m
        ca = (a[1] - a[2]) * sign
        cb = (b[1] - b[2]) * sign
        return ca <= cb

    d0g = d0p = dmp = 0
    for a in lines:
        for b in lines:
            if a[0] != b[0]:
                continue
            if a[1] == b[1]:
                d0g += 1
                if in_p(a, b):
                    d0p += 1
            if a[1] - b[1] == m and in_p(a, b):
                dmp += 1
    return d0g - d0p + dmp


def _child_blocks(factors: tuple, m: int, ms: tuple, flag_order: str) -> list:
    """Child factors of an orbit: lines grouped by c = weight - string value.

    Returns [(parent factor, c, weight tuple)] in induction block order:
    parent factors in order, then c/m ascending (descending under the
    alternate flag orientation).
    """
    lines = _line_data(factors, m, ms)
    groups: dict = {}
    for f_idx, mu, nu in lines:
        groups.setdefault((f_idx, mu - nu), []).append(mu)
    sign = 1 if m > 0 else -1
    if flag_order == "desc":
        sign = -sign
    keys = sorted(groups, key=lambda k: (k[0], k[1] * sign))
    return [(f, c, tuple(sorted(groups[(f, c)]))) for f, c in keys]


def rigidity_check(factors: tuple, n: int) -> LeafData:
    """Leaf data: rigidity by string decomposition, plus the one-orbit entry.

    A factor is rigid when, after centering, the doubled weights divided by
    n form a symmetric, parity-wise unimodal multiset of integers.  The
    cprime table is nonempty exactly when the degree-n piece vanishes,
    i.e. all weights coincide within each factor; the single entry carries
    r = v^(-dim X) * (flag Poincare polynomial).
    """
    an = abs(n)
    rigid = True
    for weights in factors:
        doubled = [2 * w for w in weights]
        center = min(doubled) + (max(doubled) - min(doubled)) // 2
        if (max(doubled) - min(doubled)) % 2:
            rigid = False
            break
        vals = [w - center for w in doubled]
        if any(x % an for x in vals):
            rigid = False
            break
        mult: dict = {}
        for x in vals:
            mult[x // an] = mult.get(x // an, 0) + 1
        ok = all(mult.get(-k, 0) == c for k, c in mult.items())
        if ok:
            top = max(mult)
            for k in range(0, top + 1):
                if mult.get(k + 2, 0) > mult.get(k, 0):
                    ok = False
                    break
        if not ok:
            rigid = False
            break
    if not rigid:
        return LeafData(False, ())
    if any(len(set(f)) > 1 for f in factors):
        return LeafData(True, ())
    # all weights equal per factor: the unique word is semicuspidal
    dim_x = sum(len(f) * (len(f) - 1) // 2 for f in factors)
    e_g = LaurentPoly.const(1)
    for f in factors:
        e_g = e_g * poincare_gl(len(f))
    r_f = LaurentPoly.monomial(-dim_x) * e_g
    return LeafData(True, (CPrimeEntry(0, r_f, "triv"),))


# ---------------------------------------------------------------------------
# the full datum


_DATUM_CACHE: dict = {}


def datum_name(factors: tuple, n: int, flag_order: str) -> str:
    body = "|".join(",".join(str(w) for w in f) for f in factors)
    suffix = "" if flag_order == "asc" else ";flag=desc"
    return f"glq:{body};n={n}{suffix}"


def parse_gl_spec(spec: str):
    """Parse ``glq:w1,w2|w3,...;n=K`` into (factors, n)."""
    if not spec.startswith("glq:"):
        raise ParseError(f"not a gl spec: {spec!r}")
    body = spec[4:]
    if ";n=" not in body:
        raise ParseError("gl spec is missing ';n=<int>'")
    weights_part, _, rest = body.partition(";n=")
    rest, _, flag_part = rest.partition(";flag=")
    try:
        n = int(rest)
        factors = tuple(
            tuple(sorted(int(w) for w in chunk.split(",")))
            for chunk in weights_part.split("|")
        )
    except ValueError as exc:
        raise ParseError(f"bad gl spec {spec!r}: {exc}") from exc
    if n == 0 or not factors or any(not f for f in factors):
        raise ParseError(f"bad gl spec {spec!r}")
    flag_order = flag_part or "asc"
    if flag_order not in ("asc", "desc"):
        raise ParseError(f"bad flag order {flag_order!r}")
    return factors, abs(n), flag_order


def build_gl_datum(spec: str) -> GradedDatum:
    factors, n, flag_order = parse_gl_spec(spec)
    return make_type_a_datum(factors, n, flag_order)


def make_type_a_datum(factors, n: int, flag_order: str = "asc") -> GradedDatum:
    """The full recursive datum for a product of GL factors at grading n."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if flag_order not in ("asc", "desc"):
        raise ValueError("flag_order must be 'asc' or 'desc'")
    factors = tuple(tuple(sorted(f)) for f in factors)
    name = datum_name(factors, n, flag_order)
    cached = _DATUM_CACHE.get(name)
    if cached is not None:
        return cached

    words = words_of(factors)
    word_index = {w: i for i, w in enumerate(words)}
    basis = tuple(
        BasisId(i, "|".join(".".join(str(x) for x in fw) for fw in w))
        for i, w in enumerate(words)
    )

    total_dim = sum(len(f) for f in factors)
    dims = {
        m: sum(
            1
            for f in factors
            for a in f
            for b in f
            if a - b == m
        )
        for m in (n, 0, -n)
    }
    c_f = dims[n] - dims[0] + total_dim
    theta_ratio = LaurentPoly.const(1)
    theta_g = LaurentPoly.const(1)
    for f in factors:
        for w in set(f):
            theta_ratio = theta_ratio * poincare_gl(f.count(w))
            theta_g = theta_g * theta_gl(f.count(w))
    classes = (
        PrimitiveClass(0, 0, c_f, tuple(range(len(words))), theta_ratio),
    )

    # pairing orbits: fix the canonical arrangement of each class
    # representative; one orbit per arrangement of the target lines
    line_sets = [
        [(w, k) for w in sorted(set(f)) for k in range(f.count(w))] for f in factors
    ]
    pairing = []
    for s_idx, word in enumerate(words):
        x_arr = [canonical_lines(fw) for fw in word]
        for y_parts in itertools.product(
            *[itertools.permutations(ls) for ls in line_sets]
        ):
            y_word = tuple(tuple(line[0] for line in fp) for fp in y_parts)
            tau = sum(
                _tau_factor(a, tuple(b), n) for a, b in zip(x_arr, y_parts)
            )
            pairing.append(PairingOrbit(s_idx, word_index[y_word], tau))

    sigma = tuple(
        word_index[tuple(tuple(reversed(fw)) for fw in w)] for w in words
    )

    orbits: dict = {}
    closure: dict = {}
    etas: dict = {}
    rigid_leaf = rigidity_check(factors, n)
    for m in (n, -n):
        records = []
        for ms in multisegments_of(factors, m):
            label = multisegment_label(factors, m, ms)
            dim = orbit_dim_quiver(factors, ms)
            records.append((dim, label, ms))
        records.sort(key=lambda r: (r[0], r[1]))
        orbits[m] = tuple(OrbitLabel(label, dim) for dim, label, _ in records)
        rel = set()
        for da, la, a in records:
            for db, lb, b in records:
                if closure_leq(a, b):
                    rel.add((la, lb))
        closure[m] = frozenset(rel)

        eta_list = []
        top_count = 0
        for dim, label, ms in records:
            blocks = _child_blocks(factors, m, ms, flag_order)
            if [b[2] for b in blocks] == list(factors) and all(
                b[0] == i for i, b in enumerate(blocks)
            ):
                # single c-value per factor: the parabolic is the whole group
                top_count += 1
                continue
            child_factors = tuple(b[2] for b in blocks)
            child = make_type_a_datum(child_factors, n, flag_order)
            induction = {}
            for ci, cw in enumerate(words_of(child_factors)):
                parent_parts: dict = {i: [] for i in range(len(factors))}
                for (f_idx, _, _), part in zip(blocks, cw):
                    parent_parts[f_idx].extend(part)
                pw = tuple(tuple(parent_parts[i]) for i in range(len(factors)))
                induction[ci] = word_index[pw]
            d = _d_eta(factors, m, ms)
            if d != dim:
                raise AssertionError(
                    f"bigrading dimension {d} disagrees with orbit dimension "
                    f"{dim} for {label} at degree {m}"
                )
            eta_list.append(EtaClass(len(eta_list), m, d, label, child, induction))
        if top_count != (1 if rigid_leaf.rigid else 0):
            raise AssertionError(
                "whole-group parabolic count does not match rigidity"
            )
        etas[m] = tuple(eta_list)

    datum = GradedDatum(
        name=name,
        delta=(n, -n),
        basis=basis,
        classes=classes,
        pairing=tuple(pairing),
        sigma=sigma,
        theta_g=theta_g,
        orbits=orbits,
        closure=closure,
        etas=etas,
        leaf=rigid_leaf,
        type_a_factors=factors,
    )
    _DATUM_CACHE[name] = datum
    return datum


def enumerate_orbits(factors, m: int, flag_order: str = "asc"):
    """All (multisegment, label, dim, eta-or-None) records at degree m.

    The eta is None exactly for the whole-group parabolic (the open orbit of
    a rigid pair), which is excluded from the proper parabolic classes.
    """
    if m == 0:
        raise ValueError("grading degree must be nonzero")
    factors = tuple(tuple(sorted(f)) for f in factors)
    datum = make_type_a_datum(factors, abs(m), flag_order)
    by_orbit = {eta.orbit: eta for eta in datum.etas[m]}
    out = []
    for ms in multisegments_of(factors, m):
        label = multisegment_label(factors, m, ms)
        out.append((ms, label, orbit_dim_quiver(factors, ms), by_orbit.get(label)))
    out.sort(key=lambda r: (r[2], r[1]))
    return out


def child_datum_of_orbit(factors, m: int, ms: tuple, flag_order: str = "asc"):
    """Child datum and induction word map for one orbit at degree m."""
    factors = tuple(tuple(sorted(f)) for f in factors)
    blocks = _child_blocks(factors, m, ms, flag_order)
    child_factors = tuple(b[2] for b in blocks)
    child = make_type_a_datum(child_factors, abs(m), flag_order)
    induction = {}
    for ci, cw in enumerate(words_of(child_factors)):
        parent_parts: dict = {i: [] for i in range(len(factors))}
        for (f_idx, _, _), part in zip(blocks, cw):
            parent_parts[f_idx].extend(part)
        induction[ci] = tuple(tuple(parent_parts[i]) for i in range(len(factors)))
    return child, induction


def enumerate_small_data(max_dim: int, weight_cap: int = 3) -> list:
    """Canonical gl specs for every datum shape up to a total dimension.

    Factors are normalized (sorted weights starting at 0, factor list
    sorted), so the sweep hits each isomorphism shape once.
    """
    def factor_shapes(k: int):
        for ws in itertools.combinations_with_replacement(range(weight_cap + 1), k):
            if min(ws) == 0:
                yield ws

    def partitions(d: int, max_part: int):
        if d == 0:
            yield ()
            return
        for p in range(min(d, max_part), 0, -1):
            for rest in partitions(d - p, p):
                yield (p,) + rest

    specs = []
    for d in range(1, max_dim + 1):
        for parts in partitions(d, d):
            pools = [sorted(factor_shapes(k)) for k in parts]
            seen = set()
            for combo in itertools.product(*pools):
                canon = tuple(sorted(combo))
                if canon in seen:
                    continue
                seen.add(canon)
                body = "|".join(",".join(str(w) for w in f) for f in canon)
                specs.append(f"glq:{body}")
    return specs
