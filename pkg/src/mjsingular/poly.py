"""Multivariate polynomials over exact scalars and the germ invariants read
off them: multiplicity, initial forms, Jacobian rank at the origin, linear
coordinate changes and multiplicity patterns of binary forms."""

from __future__ import annotations

import math
from collections import Counter
from typing import Mapping, Sequence

from . import kernels
from .arith import ONE, ZERO, ExtElement, Q, Rational, UPoly, scalar_str, squarefree_decomposition
from .linalg import det, rank

INFINITY = math.inf


def _coerce(c):
    if isinstance(c, (ExtElement, Rational)):
        return c
    return Q(c)


class MultiPoly:
    """Immutable polynomial: exponent tuples -> nonzero scalars over a fixed
    ordered variable list."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None, *, _trusted=False):
        self.variables = tuple(variables)
        if _trusted:
            self.terms = terms
        else:
            n = len(self.variables)
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(int(e) for e in m)
                if len(m) != n:
                    raise ValueError("exponent length does not match variable count")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                c = _coerce(c)
                if not c:
                    continue
                if m in clean:
                    clean[m] = clean[m] + c
                else:
                    clean[m] = c
            self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls(variables, {}, _trusted=True)

    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        c = _coerce(c)
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, variables, name_or_index) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        m = [0] * len(variables)
        m[i] = 1
        return cls(variables, {tuple(m): ONE}, _trusted=True)

    @classmethod
    def gens(cls, variables) -> list["MultiPoly"]:
        return [cls.var(variables, i) for i in range(len(tuple(variables)))]

    def _new(self, terms) -> "MultiPoly":
        return MultiPoly(self.variables, terms, _trusted=True)

    # basic protocol ---------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Rational, ExtElement)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()!r}, vars={self.variables})"

    def __str__(self) -> str:
        return self.to_str()

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> "MultiPoly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        return self._new(kernels.add_scaled(dict(self.terms), other.terms, ONE))

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        return self._new(kernels.add_scaled(dict(self.terms), other.terms, -ONE))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            other = self._lift(other)
            return self._new(kernels.mul_terms(self.terms, other.terms, -1))
        c = _coerce(other)
        if not c:
            return self._new({})
        return self._new({m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        c = _coerce(other)
        inv = 1 / c
        return self._new({m: v * inv for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        return self.pow_trunc(k, -1)

    def mul_trunc(self, other: "MultiPoly", maxdeg: int) -> "MultiPoly":
        other = self._lift(other)
        return self._new(kernels.mul_terms(self.terms, other.terms, maxdeg))

    def pow_trunc(self, k: int, maxdeg: int = -1) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = {(0,) * self.nvars: ONE}
        base = self.terms
        while k:
            if k & 1:
                result = kernels.mul_terms(result, base, maxdeg)
            k >>= 1
            if k:
                base = kernels.mul_terms(base, base, maxdeg)
        return self._new(result)

    # degrees and graded pieces ----------------------------------------
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def mult_at_origin(self):
        return min((sum(m) for m in self.terms), default=INFINITY)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == d})

    def initial_form(self) -> "MultiPoly":
        if not self.terms:
            raise ValueError("initial form of the zero polynomial")
        return self.homogeneous_part(self.mult_at_origin())

    def truncate(self, maxdeg: int) -> "MultiPoly":
        return self._new({m: c for m, c in self.terms.items() if sum(m) <= maxdeg})

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, m) -> object:
        return self.terms.get(tuple(m), ZERO)

    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def used_variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # calculus and substitution ----------------------------------------
    def diff(self, var) -> "MultiPoly":
        i = self.variables.index(var) if isinstance(var, str) else var
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return self._new(out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        """Value at a point whose coordinates are Scalars."""
        acc = ZERO
        pw = [dict() for _ in point]
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    v = pw[i].get(e)
                    if v is None:
                        v = point[i] ** e
                        pw[i][e] = v
                    t = t * v
            acc = acc + t
        return acc

    def substitute(self, images: Sequence["MultiPoly"], maxdeg: int = -1) -> "MultiPoly":
        """Compose: x_i -> images[i] (all images share one variable list)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].variables if images else ()
        powers = [dict() for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                if e == 1:
                    cache[e] = images[i].terms
                else:
                    half = power(i, e // 2)
                    sq = kernels.mul_terms(half, half, maxdeg)
                    cache[e] = kernels.mul_terms(sq, images[i].terms, maxdeg) if e % 2 else sq
            return cache[e]

        out = {}
        one = {(0,) * len(target): ONE}
        for m, c in self.terms.items():
            acc = one
            for i, e in enumerate(m):
                if e:
                    acc = kernels.mul_terms(acc, power(i, e), maxdeg)
                    if not acc:
                        break
            if acc:
                kernels.add_scaled(out, acc, c)
        return MultiPoly(target, out, _trusted=True)

    def linear_change(self, matrix) -> "MultiPoly":
        return linear_change(self, matrix)

    def reorder(self, variables: Sequence[str]) -> "MultiPoly":
        """Same polynomial over another variable list containing all used
        variables."""
        variables = tuple(variables)
        idx = []
        for i, v in enumerate(self.variables):
            if v in variables:
                idx.append(variables.index(v))
            elif any(m[i] for m in self.terms):
                raise ValueError(f"variable {v} is used but missing from target")
            else:
                idx.append(None)
        out = {}
        n = len(variables)
        for m, c in self.terms.items():
            mm = [0] * n
            for i, e in enumerate(m):
                if e:
                    mm[idx[i]] = e
            out[tuple(mm)] = c
        return MultiPoly(variables, out, _trusted=True)

    def split_by_power(self, var) -> dict[int, "MultiPoly"]:
        """Coefficients with respect to one variable (kept in the ring with
        that variable's exponent zeroed)."""
        i = self.variables.index(var) if isinstance(var, str) else var
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            mm = list(m)
            k = mm[i]
            mm[i] = 0
            parts.setdefault(k, {})[tuple(mm)] = c
        return {k: self._new(t) for k, t in parts.items()}

    def is_rational(self) -> bool:
        return all(not isinstance(c, ExtElement) for c in self.terms.values())

    # serialization ------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple, object]]:
        """Terms in descending graded reverse lexicographic order."""
        return sorted(self.terms.items(), key=lambda mc: kernels.order_key(mc[0], ()), reverse=True)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.variables, m) if e
            )
            neg = (not isinstance(c, ExtElement)) and c < 0
            a = -c if neg else c
            cs = scalar_str(a)
            if mono:
                body = mono if a == 1 else f"{cs}*{mono}"
            else:
                body = cs
            pieces.append(("-" if neg else "+", body))
        s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s


def poly_from_dict(variables, terms) -> MultiPoly:
    return MultiPoly(variables, terms)


def mult_at_origin(f: MultiPoly):
    """Lowest total degree of a term; INFINITY for the zero polynomial."""
    return f.mult_at_origin()


def initial_form(f: MultiPoly) -> MultiPoly:
    return f.initial_form()


def linear_change(f: MultiPoly, matrix) -> MultiPoly:
    """Return f(M x): variable i is replaced by sum_j M[i][j] x_j."""
    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix size does not match variable count")
    if det(matrix) == 0:
        raise ValueError("non-invertible change")
    gens = MultiPoly.gens(f.variables)
    images = []
    for row in matrix:
        img = MultiPoly.zero(f.variables)
        for j, a in enumerate(row):
            if a:
                img = img + gens[j] * a
        images.append(img)
    return f.substitute(images)


def linear_part_matrix(gens: Sequence[MultiPoly]) -> list[list]:
    rows = []
    for g in gens:
        n = g.nvars
        row = []
        for i in range(n):
            m = [0] * n
            m[i] = 1
            row.append(g.coefficient(tuple(m)))
        rows.append(row)
    return rows


def jacobian_rank_at_origin(gens: Sequence[MultiPoly]) -> int:
    if not gens:
        raise ValueError("empty generator list")
    return rank(linear_part_matrix(gens))


def jacobian_matrix(gens: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    return [g.gradient() for g in gens]


def hessian_matrix(f: MultiPoly) -> list[list[MultiPoly]]:
    grad = f.gradient()
    return [[gi.diff(j) for j in range(f.nvars)] for gi in grad]


def minors(matrix: list[list[MultiPoly]], k: int) -> list[MultiPoly]:
    """All k x k minors of a matrix of polynomials."""
    from itertools import combinations

    nr, nc = len(matrix), len(matrix[0])
    out = []
    for rows in combinations(range(nr), k):
        for cols in combinations(range(nc), k):
            sub = [[matrix[r][c] for c in cols] for r in rows]
            m = _poly_det(sub)
            if m:
                out.append(m)
    return out


def _poly_det(sub):
    n = len(sub)
    if n == 1:
        return sub[0][0]
    if n == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    total = None
    for j in range(n):
        rest = [row[:j] + row[j + 1:] for row in sub[1:]]
        term = sub[0][j] * _poly_det(rest)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


# binary forms ---------------------------------------------------------------


def _binary_check(g: MultiPoly):
    if g.nvars != 2:
        raise ValueError("wrong variable count: binary form needs exactly 2 variables")
    if not g:
        raise ValueError("zero input")
    if not g.is_homogeneous():
        raise ValueError("binary form must be homogeneous")


def _dehomogenize_first(g: MultiPoly) -> UPoly:
    """g(y, 1) as a univariate polynomial in y (y = first variable)."""
    d = g.total_degree()
    coeffs = [ZERO] * (d + 1)
    for (a, _b), c in g.terms.items():
        if isinstance(c, ExtElement):
            raise ValueError("binary pattern needs rational coefficients")
        coeffs[a] += c
    return UPoly(coeffs)


def binary_multiplicity_pattern(g: MultiPoly) -> tuple[tuple[int, int], ...]:
    """Multiplicities of the linear factors of a binary form over the
    algebraic closure, as a sorted tuple of (multiplicity, 1) pairs.

    Works from the square-free decomposition of g(y, 1); the factor z is
    accounted for by the degree deficit.
    """
    _binary_check(g)
    d = g.total_degree()
    p = _dehomogenize_first(g)
    out: list[tuple[int, int]] = []
    deficit = d - p.degree
    if deficit:
        out.append((deficit, 1))
    for fac, k in squarefree_decomposition(p):
        out.extend([(k, 1)] * fac.degree)
    return tuple(sorted(out, reverse=True))


def pattern_counter(pattern) -> Counter:
    return Counter(pattern)


def is_perfect_cube_of_linear(g: MultiPoly) -> tuple[bool, MultiPoly | None]:
    """Whether a binary cubic is c * l^3; l is returned normalized."""
    _binary_check(g)
    if g.total_degree() != 3:
        return False, None
    if binary_multiplicity_pattern(g) != ((3, 1),):
        return False, None
    y, z = MultiPoly.gens(g.variables)
    p = _dehomogenize_first(g)
    if p.degree <= 0:
        return True, z
    # p = c (y - r)^3 with rational r
    r = -p.coeffs[2] / (3 * p.coeffs[3])
    return True, y - z * r


def double_and_simple_lines(g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """For a binary cubic with pattern {(2,1),(1,1)}: the doubled linear
    factor l1 and the simple one l2 (both rational), g = c l1^2 l2."""
    _binary_check(g)
    if binary_multiplicity_pattern(g) != ((2, 1), (1, 1)):
        raise ValueError("cubic does not have a double line")
    y, z = MultiPoly.gens(g.variables)
    p = _dehomogenize_first(g)
    deficit = 3 - p.degree
    if deficit == 2:
        # g = z^2 (a y + b z)
        return z, y * p.coeffs[1] + z * p.coeffs[0]
    sq = squarefree_decomposition(p)
    double = next(f for f, k in sq if k == 2)  # monic linear y - r
    l1 = y + z * double.coeffs[0]
    if deficit == 1:
        return l1, z
    simple = next(f for f, k in sq if k == 1)
    return l1, y + z * simple.coeffs[0]
