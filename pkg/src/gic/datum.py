"""Combinatorial data describing a graded reductive pair, and its pairing.

A ``GradedDatum`` is the recursive record everything else consumes: a basis
indexed by classes of (parabolic, cuspidal-sheaf) pairs, the partition of
that basis into primitive classes, the orbit pairing table (a list of orbits
with an integer statistic tau), the opposition involution sigma, per-degree
orbit lists with closure order, the parabolic classes (etas) with child data
and induction maps, and leaf-level data for rigid pairs.

The Gram form on the basis is

    (I_s : I_s') = theta_ratio(F) * sum over pairing orbits (s, s') of
                   eps^tau,     eps = v or -v by ``SignConvention``,

and is zero unless the primitive class of s' is dual to that of s.  Data are
immutable after construction; the Gram matrix is cached per convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .exact_algebra import LaurentPoly, RatFunc


class DatumInvalid(Exception):
    """A datum violates one of its structural invariants."""


class ParseError(Exception):
    """A table-datum file is malformed."""


class SignConvention(Enum):
    PLUS_V = "plusv"
    PRINTED_MINUS_V = "printed"

    def epsilon_pow(self, tau: int) -> RatFunc:
        """eps^tau as an exact rational function (tau may be negative)."""
        sign = 1 if self is SignConvention.PLUS_V or tau % 2 == 0 else -1
        return RatFunc.from_laurent(LaurentPoly.monomial(tau, sign))


@dataclass(frozen=True)
class BasisId:
    index: int
    label: str


@dataclass(frozen=True)
class PrimitiveClass:
    id: int
    dual: int
    c_f: int
    members: tuple
    theta_ratio: LaurentPoly


@dataclass(frozen=True)
class PairingOrbit:
    s: int
    s_prime: int
    tau: int


@dataclass(frozen=True)
class OrbitLabel:
    name: str
    dim: int


@dataclass(frozen=True)
class CPrimeEntry:
    s_f: int
    r_f: LaurentPoly
    kappa_label: str


@dataclass(frozen=True)
class LeafData:
    rigid: bool
    cprime: tuple = ()


@dataclass(frozen=True)
class EtaClass:
    id: int
    n: int
    d: int
    orbit: str
    child: "GradedDatum"
    induction: dict  # child basis index -> parent basis index


@dataclass(frozen=True)
class GradedDatum:
    name: str
    delta: tuple  # (n, -n) with n the positive member
    basis: tuple  # BasisId, indices 0..len-1
    classes: tuple  # PrimitiveClass
    pairing: tuple  # PairingOrbit
    sigma: tuple  # basis index -> basis index
    theta_g: LaurentPoly  # Poincare-type polynomial of the fixed subgroup
    orbits: dict  # n -> tuple[OrbitLabel]
    closure: dict  # n -> frozenset[(lower_name, upper_name)], reflexive+transitive
    etas: dict  # n -> tuple[EtaClass]
    leaf: LeafData
    type_a_factors: tuple | None = None  # set by the GL builder, else None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    # -- lookups -----------------------------------------------------------

    def class_of(self, s: int) -> PrimitiveClass:
        table = self._cache.get("class_of")
        if table is None:
            table = {}
            for pc in self.classes:
                for m in pc.members:
                    table[m] = pc
            self._cache["class_of"] = table
        return table[s]

    def open_orbit(self, n: int) -> OrbitLabel:
        best = max(self.orbits[n], key=lambda o: o.dim)
        return best

    def orbit_by_name(self, n: int, name: str) -> OrbitLabel:
        for o in self.orbits[n]:
            if o.name == name:
                return o
        raise KeyError(name)

    def closure_le(self, n: int, lo: str, hi: str) -> bool:
        return lo == hi or (lo, hi) in self.closure[n]

    # -- pairing -----------------------------------------------------------

    def gram(self, convention: SignConvention) -> list:
        key = ("gram", convention)
        g = self._cache.get(key)
        if g is None:
            g = gram_matrix(self, convention)
            self._cache[key] = g
        return g

    def pair(self, x: "KVector", y: "KVector", convention: SignConvention) -> RatFunc:
        g = self.gram(convention)
        acc = RatFunc.ZERO
        for i, xi in x.coords.items():
            row = g[i]
            for j, yj in y.coords.items():
                if row[j]:
                    acc = acc + xi * yj * row[j]
        return acc


class KVector:
    """Finitely supported vector over the datum basis with Q(v) coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        self.coords = {}
        if coords:
            for i, x in coords.items() if isinstance(coords, dict) else coords:
                if x:
                    self.coords[i] = x

    @staticmethod
    def basis_vector(i: int) -> "KVector":
        return KVector({i: RatFunc.ONE})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return isinstance(other, KVector) and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(sorted(self.coords.items())))

    def __add__(self, other):
        out = dict(self.coords)
        for i, x in other.coords.items():
            s = out.get(i, RatFunc.ZERO) + x
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return KVector(out)

    def __sub__(self, other):
        return self + other.scale(RatFunc.from_int(-1))

    def scale(self, r: RatFunc) -> "KVector":
        if not r:
            return KVector()
        return KVector({i: x * r for i, x in self.coords.items()})

    def bar(self) -> "KVector":
        """Coordinate-wise bar; the basis vectors themselves are fixed."""
        return KVector({i: x.bar() for i, x in self.coords.items()})

    def items_sorted(self):
        return sorted(self.coords.items())

    def describe(self, datum: GradedDatum) -> str:
        if not self.coords:
            return "0"
        parts = []
        for i, x in self.items_sorted():
            parts.append(f"({x})*I[{datum.basis[i].label}]")
        return " + ".join(parts)


def gram_matrix(datum: GradedDatum, convention: SignConvention) -> list:
    """Dense Gram matrix of the pairing on the datum basis."""
    n = len(datum.basis)
    g = [[RatFunc.ZERO] * n for _ in range(n)]
    for orb in datum.pairing:
        theta = RatFunc.from_laurent(datum.class_of(orb.s).theta_ratio)
        g[orb.s][orb.s_prime] = g[orb.s][orb.s_prime] + theta * convention.epsilon_pow(
            orb.tau
        )
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise DatumInvalid(
                    f"gram matrix not symmetric at ({datum.basis[i].label}, "
                    f"{datum.basis[j].label})"
                )
            if g[i][j] and datum.class_of(j).id != datum.class_of(i).dual:
                raise DatumInvalid(
                    "nonzero pairing between non-dual primitive classes"
                )
    return g


def induction_extend(eta: EtaClass, x: KVector) -> KVector:
    """Relocate child coordinates through the eta's basis embedding."""
    return KVector({eta.induction[i]: v for i, v in x.coords.items()})


def radical_member(
    datum: GradedDatum, x: KVector, convention: SignConvention = SignConvention.PLUS_V
) -> bool:
    """True iff x pairs to zero with every basis vector."""
    g = datum.gram(convention)
    n = len(datum.basis)
    for j in range(n):
        acc = RatFunc.ZERO
        for i, xi in x.coords.items():
            if g[i][j]:
                acc = acc + xi * g[i][j]
        if acc:
            return False
    return True


# ---------------------------------------------------------------------------
# validation


def validate_datum(datum: GradedDatum) -> list:
    """Structural findings for a datum; an empty list means valid."""
    findings: list[str] = []
    n_basis = len(datum.basis)

    for i, b in enumerate(datum.basis):
        if b.index != i:
            findings.append(f"basis index {b.index} out of order at position {i}")
    labels = [b.label for b in datum.basis]
    if len(set(labels)) != len(labels):
        findings.append("duplicate basis labels")

    # primitive classes partition the basis and are closed under duality
    seen = []
    by_id = {pc.id: pc for pc in datum.classes}
    for pc in datum.classes:
        seen.extend(pc.members)
        dual = by_id.get(pc.dual)
        if dual is None or dual.dual != pc.id:
            findings.append(f"primitive class {pc.id}: duality is not involutive")
        elif dual.theta_ratio != pc.theta_ratio:
            findings.append(f"primitive class {pc.id}: theta ratio differs from dual")
        elif dual.c_f != pc.c_f:
            findings.append(f"primitive class {pc.id}: c_F differs from dual")
    if sorted(seen) != list(range(n_basis)):
        findings.append("primitive classes do not partition the basis")

    # sigma is an involution preserving primitive classes
    if sorted(datum.sigma) != list(range(n_basis)):
        findings.append("sigma is not a permutation")
    else:
        for i in range(n_basis):
            if datum.sigma[datum.sigma[i]] != i:
                findings.append("sigma not involutive")
                break
        for i in range(n_basis):
            if datum.class_of(datum.sigma[i]).id != datum.class_of(i).id:
                findings.append("sigma does not preserve primitive classes")
                break

    # pairing orbits respect duality blocks, and the c_F identity holds:
    # the tau multiset at (sigma(s), s') equals {c_F - tau} at (s, s')
    tau_sets: dict = {}
    for orb in datum.pairing:
        pc = datum.class_of(orb.s)
        if datum.class_of(orb.s_prime).id != pc.dual:
            findings.append(
                f"pairing orbit ({orb.s},{orb.s_prime}) crosses non-dual classes"
            )
        tau_sets.setdefault((orb.s, orb.s_prime), []).append(orb.tau)
    if not findings:
        for (s, sp), taus in tau_sets.items():
            c_f = datum.class_of(s).c_f
            flipped = sorted(tau_sets.get((datum.sigma[s], sp), []))
            if sorted(c_f - t for t in taus) != flipped:
                findings.append(
                    f"c_F mismatch: tau multiset at ({s},{sp}) is not the "
                    f"c_F-reflection of the one at ({datum.sigma[s]},{sp})"
                )
                break

    # Gram symmetry and block structure (gram_matrix raises on violation)
    try:
        datum.gram(SignConvention.PLUS_V)
    except DatumInvalid as exc:
        findings.append(str(exc))

    for n in datum.delta:
        if n not in datum.orbits or not datum.orbits[n]:
            findings.append(f"no orbits listed for degree {n}")
            continue
        names = [o.name for o in datum.orbits[n]]
        if len(set(names)) != len(names):
            findings.append(f"duplicate orbit names at degree {n}")
        dims = [o.dim for o in datum.orbits[n]]
        if dims.count(max(dims)) != 1:
            findings.append(f"open orbit not unique at degree {n}")
        for lo, hi in datum.closure.get(n, ()):
            try:
                if datum.orbit_by_name(n, lo).dim > datum.orbit_by_name(n, hi).dim:
                    findings.append(
                        f"closure order at degree {n} increases dimension: "
                        f"{lo} <= {hi}"
                    )
            except KeyError as exc:
                findings.append(f"closure names unknown orbit {exc} at degree {n}")
        for eta in datum.etas.get(n, ()):
            try:
                orb = datum.orbit_by_name(n, eta.orbit)
            except KeyError:
                findings.append(f"eta {eta.id} at degree {n}: unknown orbit")
                continue
            if eta.d != orb.dim:
                findings.append(
                    f"eta {eta.id} at degree {n}: d={eta.d} but orbit dim={orb.dim}"
                )
            imgs = list(eta.induction.values())
            if len(set(imgs)) != len(imgs):
                findings.append(f"eta {eta.id} at degree {n}: induction not injective")
            if sorted(eta.induction.keys()) != list(range(len(eta.child.basis))):
                findings.append(
                    f"eta {eta.id} at degree {n}: induction domain is not the "
                    "child basis"
                )
            if any(i < 0 or i >= n_basis for i in imgs):
                findings.append(f"eta {eta.id} at degree {n}: image out of range")
            if eta.child.delta != datum.delta:
                findings.append(
                    f"eta {eta.id} at degree {n}: child delta {eta.child.delta} "
                    f"differs from parent {datum.delta}"
                )

    if datum.leaf.cprime and not datum.leaf.rigid:
        findings.append("cprime entries on a non-rigid leaf")
    sfs = [e.s_f for e in datum.leaf.cprime]
    if len(set(sfs)) != len(sfs):
        findings.append("cprime entries repeat a basis class")

    return findings


# ---------------------------------------------------------------------------
# table-datum loader (JSON)


def _lp(pairs) -> LaurentPoly:
    try:
        return LaurentPoly.from_pairs(pairs)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad Laurent encoding {pairs!r}") from exc


def load_table_datum(source, *, registry=None, validate=True) -> GradedDatum:
    """Build a GradedDatum from its JSON description.

    ``source`` may be a JSON string or an already-parsed dict.  Children may
    be inline datum objects, names registered in the file's ``children``
    table, or ``glq:...`` builder strings.  All structural invariants are
    checked; the first violation is raised as ``DatumInvalid``.
    """
    if isinstance(source, (str, bytes)):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    registry = dict(registry or {})
    for name, sub in (doc.get("children") or {}).items():
        registry[name] = load_table_datum(sub, registry=registry, validate=validate)
    datum = _load_datum_obj(doc, registry, validate)
    if validate:
        findings = validate_datum(datum)
        if findings:
            raise DatumInvalid(findings[0])
    return datum


def _resolve_child(spec, registry, validate) -> GradedDatum:
    if isinstance(spec, dict):
        return _load_datum_obj(spec, registry, validate)
    if isinstance(spec, str):
        if spec.startswith("glq:"):
            from .type_a import build_gl_datum

            return build_gl_datum(spec)
        if spec in registry:
            return registry[spec]
        raise ParseError(f"unknown child reference {spec!r}")
    raise ParseError(f"bad child spec {spec!r}")


def _load_datum_obj(doc: dict, registry, validate) -> GradedDatum:
    try:
        name = doc["name"]
        delta = tuple(int(x) for x in doc["delta"])
        basis = tuple(
            BasisId(int(b["index"]), str(b["label"])) for b in doc["basis"]
        )
        classes = tuple(
            PrimitiveClass(
                int(c["id"]),
                int(c["dual"]),
                int(c["c_F"]),
                tuple(int(m) for m in c["members"]),
                _lp(c["theta_ratio"]),
            )
            for c in doc["primitive_classes"]
        )
        pairing = tuple(
            PairingOrbit(int(p["s"]), int(p["s_prime"]), int(p["tau"]))
            for p in doc["pairing"]
        )
        sigma = tuple(int(x) for x in doc["sigma"])
        theta_g = _lp(doc["theta_g"])
        orbits = {
            int(n): tuple(OrbitLabel(str(o["name"]), int(o["dim"])) for o in lst)
            for n, lst in doc["orbits"].items()
        }
        closure_in = {
            int(n): [(str(a), str(b)) for a, b in lst]
            for n, lst in (doc.get("closure") or {}).items()
        }
        etas = {}
        for n, lst in (doc.get("etas") or {}).items():
            out = []
            for k, e in enumerate(lst):
                child = _resolve_child(e["child"], registry, validate)
                induction = {int(a): int(b) for a, b in e["induction"]}
                out.append(
                    EtaClass(k, int(n), int(e["d"]), str(e["orbit"]), child, induction)
                )
            etas[int(n)] = tuple(out)
        leaf_doc = doc.get("leaf") or {"rigid": False}
        leaf = LeafData(
            bool(leaf_doc["rigid"]),
            tuple(
                CPrimeEntry(int(e["s_F"]), _lp(e["r_F"]), str(e["kappa_label"]))
                for e in leaf_doc.get("cprime", ())
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"missing or malformed field: {exc}") from exc

    if len(delta) != 2 or delta[0] + delta[1] != 0 or delta[0] == 0:
        raise ParseError("delta must be [n, -n] with n nonzero")
    if delta[0] < 0:
        delta = (delta[1], delta[0])

    closure = {n: _transitive_closure(closure_in.get(n, []), orbits.get(n, ()))
               for n in delta}
    for n in delta:
        orbits.setdefault(n, ())
        etas.setdefault(n, ())

    return GradedDatum(
        name=name,
        delta=delta,
        basis=basis,
        classes=classes,
        pairing=pairing,
        sigma=sigma,
        theta_g=theta_g,
        orbits=orbits,
        closure=closure,
        etas=etas,
        leaf=leaf,
    )


def _transitive_closure(pairs, orbit_labels) -> frozenset:
    rel = set(pairs)
    names = [o.name for o in orbit_labels]
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for b2, c in list(rel):
                if b2 == b and (a, c) not in rel and a != c:
                    rel.add((a, c))
                    changed = True
    for a, b in rel:
        if (b, a) in rel and a != b:
            raise DatumInvalid(f"closure order has a cycle through {a}, {b}")
    rel.update((x, x) for x in names)
    return frozenset(rel)
