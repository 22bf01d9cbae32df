"""Exact arithmetic over Z[v, v^-1] and its fraction field Q(v).

Everything downstream (Gram pairings, bar triangularization, multiplicity
matrices) needs exact coefficients: canonical-basis style entries routinely
cancel down to single monomials, so equality tests must be structural and
arithmetic must be arbitrary precision.

Three layers:

  * plain polynomials in v: dense tuples of ints, private helpers `_zp_*`;
  * ``LaurentPoly``: sparse {exponent: coefficient} maps over Z;
  * ``RatFunc``: reduced fractions num/den of integer polynomials, with
    den having positive leading coefficient and gcd(num, den) = 1, so that
    equality and hashing are structural.

Linear solving is fraction-field Gaussian elimination with a deterministic
pivot rule (first nonzero in row order), so intermediate values are
reproducible across runs and platforms.
"""

from __future__ import annotations

import math
from fractions import Fraction


class SingularMatrix(Exception):
    """Coefficient matrix is not invertible over Q(v)."""


class NotExpandable(Exception):
    """Rational function has no Laurent series expansion at v = 0."""


# ---------------------------------------------------------------------------
# dense integer polynomials: tuple of coefficients, index = exponent


def _zp_trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


_ZP_ZERO = ()
_ZP_ONE = (1,)


def _zp_add(a, b):
    n = max(len(a), len(b))
    return _zp_trim(
        [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _zp_neg(a):
    return tuple(-x for x in a)


def _zp_sub(a, b):
    return _zp_add(a, _zp_neg(b))


def _zp_mul(a, b):
    if not a or not b:
        return _ZP_ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _zp_trim(out)


def _zp_scale(a, k: int):
    if k == 0:
        return _ZP_ZERO
    return tuple(k * x for x in a)


def _zp_shift(a, k: int):
    # multiply by v^k, k >= 0
    if not a:
        return a
    return (0,) * k + tuple(a)


def _zp_content(a) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _zp_primitive(a):
    if not a:
        return 0, _ZP_ZERO
    c = _zp_content(a)
    return c, tuple(x // c for x in a)


def _zp_prem(a, b):
    # pseudo-remainder of a by b, b != 0
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if dr < db or not r:
            return _zp_trim(r)
        lr = r[-1]
        r = [lb * x for x in r]
        for i, bc in enumerate(b):
            r[dr - db + i] -= lr * bc


def _zp_gcd(a, b):
    # positive-leading-coefficient gcd over Z (Gauss content form)
    a, b = _zp_trim(a), _zp_trim(b)
    if not a:
        g = b
    elif not b:
        g = a
    else:
        ca, pa = _zp_primitive(a)
        cb, pb = _zp_primitive(b)
        c = math.gcd(ca, cb)
        while pb:
            r = _zp_prem(pa, pb)
            pa, pb = pb, (_zp_primitive(r)[1] if r else _ZP_ZERO)
        g = _zp_scale(pa, c)
    if g and g[-1] < 0:
        g = _zp_neg(g)
    return g


def _zp_divexact(a, b):
    # exact quotient a / b; requires b | a over Z[v]
    if not a:
        return _ZP_ZERO
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    while True:
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
        dr = len(r) - 1
        if dr < db:
            raise ArithmeticError("inexact polynomial division")
        c, rem = divmod(r[-1], b[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        q[dr - db] = c
        for i, bc in enumerate(b):
            r[dr - db + i] -= c * bc
    return _zp_trim(q)


def _zp_valuation(a) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return 0


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse integer Laurent polynomial in v: {exponent: nonzero coeff}."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, x in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                if x:
                    c[int(e)] = c.get(int(e), 0) + int(x)
                    if not c[int(e)]:
                        del c[int(e)]
        self.c = c

    @staticmethod
    def monomial(exp: int, coef: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coef})

    @staticmethod
    def const(k: int) -> "LaurentPoly":
        return LaurentPoly({0: k})

    @staticmethod
    def from_pairs(pairs) -> "LaurentPoly":
        """Decode the sparse [[exponent, coefficient], ...] wire format."""
        return LaurentPoly({int(e): int(x) for e, x in pairs})

    def to_pairs(self) -> list:
        return [[e, self.c[e]] for e in sorted(self.c)]

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        other = _as_laurent_operand(other)
        return NotImplemented if other is None else self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        other = _as_laurent_operand(other)
        if other is None:
            return NotImplemented
        out = dict(self.c)
        for e, x in other.c.items():
            out[e] = out.get(e, 0) + x
            if not out[e]:
                del out[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -x for e, x in self.c.items()}
        return r

    def __sub__(self, other):
        other = _as_laurent_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent_operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent_operand(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, x1 in self.c.items():
            for e2, x2 in other.c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + x1 * x2
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: x for e, x in out.items() if x}
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    def max_exp(self) -> int:
        return max(self.c) if self.c else 0

    def bar(self) -> "LaurentPoly":
        """The involution v^k -> v^-k."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {-e: x for e, x in self.c.items()}
        return r

    def eval_at_one(self) -> int:
        return sum(self.c.values())

    def in_z_v(self) -> bool:
        return all(e >= 0 for e in self.c)

    def in_v_z_v(self) -> bool:
        return all(e >= 1 for e in self.c)

    def nonneg_coeffs(self) -> bool:
        return all(x >= 0 for x in self.c.values())

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            x = self.c[e]
            if e == 0:
                term = str(abs(x))
            else:
                mon = "v" if e == 1 else f"v^{e}"
                term = mon if abs(x) == 1 else f"{abs(x)}*{mon}"
            if not parts:
                parts.append(term if x > 0 else "-" + term)
            else:
                parts.append(("+" if x > 0 else "-") + term)
        return "".join(parts)

    __repr__ = __str__


def _as_laurent_operand(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return None


def lp_bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Reduced fraction of integer polynomials in v.

    Canonical form: gcd(num, den) = 1 over Z[v], den has positive leading
    coefficient, zero is 0/1.  Equality and hash are structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ZP_ONE):
        num = _zp_trim(num)
        den = _zp_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = _ZP_ZERO, _ZP_ONE
            return
        if den != _ZP_ONE:
            g = _zp_gcd(num, den)
            if g != _ZP_ONE:
                num = _zp_divexact(num, g)
                den = _zp_divexact(den, g)
        if den[-1] < 0:
            num, den = _zp_neg(num), _zp_neg(den)
        self.num, self.den = num, den

    # -- constructors

    @staticmethod
    def from_int(k: int) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = (k,) if k else _ZP_ZERO
        r.den = _ZP_ONE
        return r

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "RatFunc":
        if not p.c:
            return RatFunc.from_int(0)
        m = p.min_exp()
        coeffs = [0] * (p.max_exp() - min(m, 0) + 1)
        shift = -m if m < 0 else 0
        for e, x in p.c.items():
            coeffs[e + shift] = x
        num = _zp_trim(coeffs)
        den = _zp_shift(_ZP_ONE, shift)
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = num, den
        if num and num[0] != 0:
            return r
        return RatFunc(num, den)

    ZERO: "RatFunc"
    ONE: "RatFunc"

    # -- predicates and conversions

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def as_laurent(self) -> LaurentPoly | None:
        """The value as a Laurent polynomial, or None if it is not one.

        Units of Z[v, v^-1] are +-v^k, so after reduction the value is
        Laurent exactly when the denominator is a power of v.
        """
        d = self.den
        if any(d[i] for i in range(len(d) - 1)) or d[-1] != 1:
            return None
        shift = len(d) - 1
        return LaurentPoly({i - shift: x for i, x in enumerate(self.num) if x})

    def is_laurent(self) -> bool:
        return self.as_laurent() is not None

    # -- arithmetic

    def __eq__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(_zp_add(self.num, other.num), self.den)
        return RatFunc(
            _zp_add(_zp_mul(self.num, other.den), _zp_mul(other.num, self.den)),
            _zp_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = _zp_neg(self.num), self.den
        return r

    def __sub__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc.from_int(0)
        # cross-reduce first to keep intermediate degrees small
        n1, d2 = self.num, other.den
        n2, d1 = other.num, self.den
        g1 = _zp_gcd(n1, d2) if d2 != _ZP_ONE else _ZP_ONE
        if g1 != _ZP_ONE:
            n1, d2 = _zp_divexact(n1, g1), _zp_divexact(d2, g1)
        g2 = _zp_gcd(n2, d1) if d1 != _ZP_ONE else _ZP_ONE
        if g2 != _ZP_ONE:
            n2, d1 = _zp_divexact(n2, g2), _zp_divexact(d1, g2)
        num = _zp_mul(n1, n2)
        den = _zp_mul(d1, d2)
        if den[-1] < 0:
            num, den = _zp_neg(num), _zp_neg(den)
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = num, den
        return r

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverting zero")
        num, den = self.den, self.num
        if den[-1] < 0:
            num, den = _zp_neg(num), _zp_neg(den)
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = num, den
        return r

    def __truediv__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _as_ratfunc_operand(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def bar(self) -> "RatFunc":
        """The involution v -> v^-1 extended to Q(v)."""
        d = max(len(self.num), len(self.den)) - 1
        num = _zp_trim([0] * (d - (len(self.num) - 1)) + list(reversed(self.num)))
        den = _zp_trim([0] * (d - (len(self.den) - 1)) + list(reversed(self.den)))
        return RatFunc(num, den)

    def __str__(self):
        n = _zp_str(self.num)
        if self.den == _ZP_ONE:
            return n
        return f"({n})/({_zp_str(self.den)})"

    __repr__ = __str__


def _zp_str(a) -> str:
    return str(LaurentPoly({i: x for i, x in enumerate(a) if x}))


def _as_ratfunc_operand(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, int):
        return RatFunc.from_int(x)
    if isinstance(x, LaurentPoly):
        return RatFunc.from_laurent(x)
    return None


RatFunc.ZERO = RatFunc.from_int(0)
RatFunc.ONE = RatFunc.from_int(1)


def rf_bar(r: RatFunc) -> RatFunc:
    return r.bar()


def series_prefix(r: RatFunc, n: int) -> LaurentPoly:
    """Laurent series expansion of r in Z((v)), truncated below exponent n.

    The denominator is normalized to have a nonzero constant term by
    factoring out its v-valuation; the recurrence then runs over exact
    rationals and every kept coefficient must come out integral.
    """
    if r.is_zero():
        return LaurentPoly()
    vd = _zp_valuation(r.den)
    den = r.den[vd:]
    if not den or den[0] == 0:
        raise NotExpandable("denominator has no nonzero leading series term")
    vn = _zp_valuation(r.num)
    num = r.num[vn:]
    base = vn - vd  # exponent of the first potential series term
    count = n - base
    if count <= 0:
        return LaurentPoly()
    d0 = Fraction(den[0])
    coeffs: list[Fraction] = []
    for j in range(count):
        acc = Fraction(num[j]) if j < len(num) else Fraction(0)
        for i in range(1, min(j, len(den) - 1) + 1):
            acc -= den[i] * coeffs[j - i]
        coeffs.append(acc / d0)
    out = {}
    for j, x in enumerate(coeffs):
        if x:
            if x.denominator != 1:
                raise NotExpandable("series coefficient is not an integer")
            out[base + j] = int(x)
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# exact dense linear algebra over Q(v)

Matrix = list  # list[list[RatFunc]], rectangular


def mat_identity(n: int) -> Matrix:
    return [
        [RatFunc.ONE if i == j else RatFunc.ZERO for j in range(n)] for i in range(n)
    ]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    out = []
    for row in a:
        new = []
        for j in range(len(b[0]) if b else 0):
            acc = RatFunc.ZERO
            for k, x in enumerate(row):
                if x:
                    acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def solve_linear(a: Matrix, b: Matrix) -> Matrix:
    """Exact solution X of A X = B over Q(v).

    Gaussian elimination with the first nonzero pivot in row order, so the
    sequence of intermediate fractions is deterministic.  Raises
    ``SingularMatrix`` if A is not invertible.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix not square")
    if len(b) != n:
        raise ValueError("rhs row count mismatch")
    w = len(b[0]) if b and b[0] else 0
    m = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise SingularMatrix(f"no pivot in column {col}")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inv()
        for j in range(col, n + w):
            if m[col][j]:
                m[col][j] = m[col][j] * inv
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                for j in range(col, n + w):
                    if m[col][j]:
                        m[r][j] = m[r][j] - f * m[col][j]
    return [row[n:] for row in m]
