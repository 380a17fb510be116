"""Jet-scheme equations and jet-fiber dimension bounds for the MJ minimal
log discrepancy at the origin."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .arith import Q
from .groebner import EMPTY, Ideal, groebner_basis, ideal_dimension, local_dimension
from .poly import MultiPoly


class _MinusInfinity:
    """Sentinel for a certified value of minus infinity."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "MINUS_INFINITY_CERTIFIED"

    __str__ = __repr__


MINUS_INFINITY_CERTIFIED = _MinusInfinity()

PLAIN = "PLAIN"
MIXED = "MIXED"


def jet_variable(base: str, level: int) -> str:
    return f"{base}_{level}"


def jet_variables(base: Sequence[str], m: int, fiber: bool = True) -> tuple[str, ...]:
    """Level-major ordering of the jet variables of levels 1..m (or 0..m)."""
    start = 1 if fiber else 0
    return tuple(jet_variable(v, j) for j in range(start, m + 1) for v in base)


@dataclass
class JetSystem:
    level: int
    base_variables: tuple
    variables: tuple
    fiber: bool
    equations: dict = field(default_factory=dict)  # (generator index, j) -> MultiPoly

    def level_equations(self, upto: int | None = None) -> list[MultiPoly]:
        upto = self.level if upto is None else upto
        return [p for (i, j), p in sorted(self.equations.items()) if j <= upto and p]


def _series_mul(a, b, m, zero):
    out = [zero] * (m + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(0, m + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def jet_expansion(f: MultiPoly, m: int, fiber: bool = True) -> tuple[tuple, list[MultiPoly]]:
    """Coefficients F^(0..m) of t^j in f(sum_j x^(j) t^j)."""
    if m < 0:
        raise ValueError("level must be non-negative")
    jv = jet_variables(f.variables, m, fiber)
    zero = MultiPoly.zero(jv)
    n = f.nvars
    start = 1 if fiber else 0
    series = []
    for v in f.variables:
        s = [zero] * (m + 1)
        for j in range(start, m + 1):
            s[j] = MultiPoly.var(jv, jet_variable(v, j))
        series.append(s)
    powers: list[dict[int, list]] = [dict() for _ in range(n)]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            if e == 0:
                one = [zero] * (m + 1)
                one[0] = MultiPoly.constant(jv, 1)
                cache[0] = one
            elif e == 1:
                cache[1] = series[i]
            else:
                cache[e] = _series_mul(power(i, e // 2), power(i, e - e // 2), m, zero)
        return cache[e]

    out = [zero] * (m + 1)
    for mono, c in f.terms.items():
        if fiber and sum(mono) > m:
            continue  # every factor contributes t-order >= 1
        acc = None
        for i, e in enumerate(mono):
            if e:
                acc = power(i, e) if acc is None else _series_mul(acc, power(i, e), m, zero)
        if acc is None:
            acc = power(0, 0)
        for j in range(m + 1):
            if acc[j]:
                out[j] = out[j] + acc[j] * c
    return jv, out


def jet_equations(f: MultiPoly, m: int, fiber: bool = True) -> JetSystem:
    jv, coeffs = jet_expansion(f, m, fiber)
    eqs = {(0, j): coeffs[j] for j in range(m + 1)}
    return JetSystem(m, f.variables, jv, fiber, eqs)


def jet_system(generators: Sequence[MultiPoly], m: int, fiber: bool = True) -> JetSystem:
    if not generators:
        raise ValueError("no generators")
    base = generators[0].variables
    jv = jet_variables(base, m, fiber)
    eqs = {}
    for i, g in enumerate(generators):
        _, coeffs = jet_expansion(g, m, fiber)
        for j, p in enumerate(coeffs):
            eqs[(i, j)] = p
    return JetSystem(m, base, jv, fiber, eqs)


def _check_origin(gens):
    for g in gens:
        if g.constant_term() != 0:
            raise ValueError("germ not at origin")


def _fiber_dimension(jv, eqs) -> int:
    eqs = [p for p in eqs if p]
    if not eqs:
        return len(jv)
    d = ideal_dimension(Ideal(eqs, jv))
    if d == EMPTY:
        raise AssertionError("jet fiber over the origin cannot be empty")
    return d


def jet_fiber_dim(I: Ideal, m: int) -> int:
    """Dimension of the fiber over the origin of the level-m jet scheme."""
    _check_origin(I.generators)
    if m < 1:
        raise ValueError("level must be at least 1")
    js = jet_system(I.generators, m, fiber=True)
    return _fiber_dimension(js.variables, js.level_equations())


@dataclass
class MldBound:
    value: object  # Rational or MINUS_INFINITY_CERTIFIED
    witness: object  # level n, or (m, n) in mixed mode
    mode: str = PLAIN
    terms: list = field(default_factory=list)  # (level or (m, n), fiber dim, term)

    @property
    def certified_minus_infinity(self) -> bool:
        return self.value is MINUS_INFINITY_CERTIFIED

    def not_log_canonical(self) -> bool:
        return self.certified_minus_infinity

    def not_canonical(self) -> bool:
        return self.certified_minus_infinity or self.value < 1


def mld_upper_bound(I: Ideal, d: int, max_level: int) -> MldBound:
    """min over 1 <= n <= max_level of (n+1)d - dim(level-n fiber); stops at
    the first negative term, which certifies minus infinity."""
    _check_origin(I.generators)
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    if d != local_dimension(I):
        raise ValueError("inconsistent dimension")
    terms = []
    best = None
    witness = None
    for n in range(1, max_level + 1):
        fd = jet_fiber_dim(I, n)
        term = (n + 1) * d - fd
        terms.append((n, fd, term))
        if best is None or term < best:
            best, witness = term, n
        if term < 0:
            return MldBound(MINUS_INFINITY_CERTIFIED, n, PLAIN, terms)
    return MldBound(Q(best), witness, PLAIN, terms)


def _is_unit_ideal(a) -> bool:
    if a is None:
        return True
    gens = [g for g in a.generators]
    if not gens:
        return False
    if any(g.constant_term() != 0 for g in gens):
        return groebner_basis(Ideal(gens, a.variables)).is_unit()
    return False


def mld_mixed_upper_bound(I_X: Ideal, c: int, a: Ideal | None, t, max_m: int, max_n: int) -> MldBound:
    """min over (m, n) of (M+1)N - (m+1)t - (n+1)c - dim(fiber), M = max(m, n).

    A missing or unit ideal ``a`` contributes neither equations nor the
    t-term, so only the levels n are swept.
    """
    _check_origin(I_X.generators)
    N = I_X.nvars
    t = Q(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    if c != N - local_dimension(I_X):
        raise ValueError("inconsistent codimension")
    unit = _is_unit_ideal(a)
    if not unit:
        if a.variables != I_X.variables:
            raise ValueError("variable mismatch")
        _check_origin(a.generators)
    cells = [(0, n) for n in range(1, max_n + 1)] if unit else \
        [(m, n) for m in range(1, max_m + 1) for n in range(1, max_n + 1)]
    terms = []
    best = None
    witness = None
    for m, n in cells:
        M = max(m, n)
        eqs = []
        if I_X.generators:
            jx = jet_system(I_X.generators, M, fiber=True)
            eqs += jx.level_equations(n)
        if not unit:
            ja = jet_system(a.generators, M, fiber=True)
            eqs += ja.level_equations(m)
        jv = jet_variables(I_X.variables, M, True)
        fd = _fiber_dimension(jv, eqs)
        term = Q((M + 1) * N - (n + 1) * c - fd) - (0 if unit else (m + 1) * t)
        cell = n if unit else (m, n)
        terms.append((cell, fd, term))
        if best is None or term < best:
            best, witness = term, cell
        if term < 0:
            return MldBound(MINUS_INFINITY_CERTIFIED, cell, MIXED, terms)
    return MldBound(best, witness, MIXED, terms)
