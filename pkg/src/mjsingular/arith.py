"""Exact scalars: rationals, univariate polynomials over Q, and simple
extensions Q[z]/(m(z)).

Rationals are ``gmpy2.mpq`` values.  Extension elements are immutable
residue classes tagged with their :class:`ExtField`.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

Rational = type(mpq(0))


def Q(value, den=None) -> Rational:
    """Coerce ints, strings like ``"3/4"``, Fractions or mpq to an mpq."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


ZERO = mpq(0)
ONE = mpq(1)


class UPoly:
    """Dense univariate polynomial over Q, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, deg: int, coeff=1) -> "UPoly":
        return cls([0] * deg + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Q(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == ((Q(other),) if other != 0 else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({self.to_str()})"

    def to_str(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{_fmt_rat(a)}*{mono}"
            else:
                body = _fmt_rat(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "UPoly":
        other = _as_upoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "UPoly":
        return self + (-_as_upoly(other))

    def __rsub__(self, other) -> "UPoly":
        return _as_upoly(other) - self

    def __mul__(self, other) -> "UPoly":
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        result = UPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple["UPoly", "UPoly"]:
        other = _as_upoly(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        quot = [ZERO] * (dq + 1)
        inv_lc = 1 / other.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv_lc
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quot), UPoly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other) -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UPoly":
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return UPoly(c * inv for c in self.coeffs)

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content_normalized(self) -> "UPoly":
        return self.monic()


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    return UPoly([x])


def _fmt_rat(c: Rational) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = UPoly([1]), UPoly()
    t0, t1 = UPoly(), UPoly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0.monic(), s0 * inv, t0 * inv


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic square-free, pairwise coprime factors with
    multiplicities; constant factors are omitted."""
    if not p:
        raise ValueError("zero input")
    out = []
    dp = p.derivative()
    a = upoly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = upoly_gcd(b, d)
        b = b // a
        c = d // a if a else c
        if a.degree > 0:
            out.append((a.monic(), k))
        d = c - b.derivative()
        k += 1
    return out


def univariate_factor(p: UPoly) -> list[tuple[UPoly, int]]:
    """Factor ``p`` over Q into monic irreducibles with multiplicities.

    The leading coefficient is dropped; ``lc(p) * prod(f**k) == p``.
    """
    if not isinstance(p, UPoly):
        p = UPoly(p)
    if not p:
        raise ValueError("zero input")
    if p.degree == 0:
        return []
    import sympy

    z = sympy.Symbol("z")
    sp = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                     for c in reversed(p.coeffs)], z, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for fac, mult in factors:
        cs = [Q(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append((UPoly(cs).monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return out


def is_irreducible(p: UPoly) -> bool:
    if p.degree < 1:
        return False
    fs = univariate_factor(p)
    return len(fs) == 1 and fs[0][1] == 1


class ExtField:
    """The field Q[z]/(m(z)) for a monic irreducible m of degree >= 2."""

    __slots__ = ("minpoly", "name")

    def __init__(self, minpoly: UPoly | Sequence, name: str = "a"):
        if not isinstance(minpoly, UPoly):
            minpoly = UPoly(minpoly)
        if minpoly.degree < 2:
            raise ValueError("extension degree must be at least 2")
        minpoly = minpoly.monic()
        if not is_irreducible(minpoly):
            raise ValueError("not irreducible")
        self.minpoly = minpoly
        self.name = name

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtField) and self.minpoly == other.minpoly

    def __hash__(self) -> int:
        return hash(("ExtField", self.minpoly.coeffs))

    def __repr__(self) -> str:
        return f"Q({self.name}), {self.minpoly.to_str(self.name)} = 0"

    def gen(self) -> "ExtElement":
        return ExtElement(self, UPoly([0, 1]))

    def element(self, value) -> "ExtElement":
        if isinstance(value, ExtElement):
            if value.field != self:
                raise ValueError("mixing elements of different extension fields")
            return value
        if isinstance(value, UPoly):
            return ExtElement(self, value)
        return ExtElement(self, UPoly([value]))


@total_ordering
class ExtElement:
    """Immutable residue class in an :class:`ExtField`."""

    __slots__ = ("field", "rep")

    def __init__(self, field: ExtField, rep: UPoly):
        self.field = field
        self.rep = rep % field.minpoly if rep.degree >= field.degree else rep

    def _coerce(self, other) -> "ExtElement | None":
        if isinstance(other, ExtElement):
            if other.field != self.field:
                raise ValueError("mixing elements of different extension fields")
            return other
        if isinstance(other, (int, Rational)):
            return ExtElement(self.field, UPoly([other]))
        return None

    def is_rational(self) -> bool:
        return self.rep.degree <= 0

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.rep.coeffs[0] if self.rep.coeffs else ZERO

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        # only used for deterministic sorting
        o = self._coerce(other)
        return self.rep.coeffs < o.rep.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.field, self.rep.coeffs))

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.field, -self.rep)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, o.rep - self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def inverse(self) -> "ExtElement":
        if not self.rep:
            raise ZeroDivisionError("division by zero")
        g, s, _ = upoly_xgcd(self.rep, self.field.minpoly)
        # minpoly irreducible, so g == 1
        return ExtElement(self.field, s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "ExtElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = ExtElement(self.field, UPoly([1]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return self.to_str()

    def to_str(self) -> str:
        return self.rep.to_str(self.field.name)


Scalar = Union[Rational, ExtElement]


def scalar_inverse(s: Scalar) -> Scalar:
    if isinstance(s, ExtElement):
        return s.inverse()
    s = Q(s)
    if s == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / s


def ext_root(p: UPoly | Sequence, name: str = "a") -> tuple[ExtField, ExtElement]:
    """Adjoin a root of the irreducible polynomial ``p``."""
    if not isinstance(p, UPoly):
        p = UPoly(p)
    if p.degree < 2:
        raise ValueError("degree must be at least 2")
    if not is_irreducible(p):
        raise ValueError("not irreducible")
    field = ExtField(p, name)
    return field, field.gen()


def is_zero(s) -> bool:
    return not s


def scalar_str(s: Scalar) -> str:
    if isinstance(s, ExtElement):
        if s.is_rational():
            return scalar_str(s.to_rational())
        return f"({s.to_str()})"
    s = Q(s)
    if s.denominator == 1:
        return str(s.numerator)
    return f"{s.numerator}/{s.denominator}"
