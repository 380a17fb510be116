"""Buchberger-based ideal computations over Q: reduced Groebner bases,
Krull dimension from leading-term ideals, Hilbert series of monomial ideals,
projective emptiness and tangent cones at the origin."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from .arith import ONE
from .poly import MultiPoly

EMPTY = -1
"""Krull dimension reported for the empty scheme (1 in the ideal)."""

TANGENT_VAR = "_t"


class GroebnerLimitExceeded(RuntimeError):
    """Raised when Buchberger exceeds MJ_SINGULAR_MAX_GB_STEPS reductions."""


def _max_steps() -> int | None:
    v = os.environ.get("MJ_SINGULAR_MAX_GB_STEPS")
    if not v:
        return None
    return int(v)


@dataclass(frozen=True)
class Order:
    """Monomial order: ``grevlex``, ``lex`` or ``weighted`` (weight rows
    compared first, then grevlex)."""

    kind: str = "grevlex"
    weights: tuple = ()

    def matrix(self, n: int) -> tuple:
        if self.kind == "grevlex":
            return ()
        if self.kind == "lex":
            return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if self.kind == "weighted":
            for w in self.weights:
                if len(w) != n:
                    raise ValueError("weight vector length does not match variable count")
            return tuple(tuple(int(x) for x in w) for w in self.weights)
        raise ValueError(f"unknown order {self.kind!r}")


GREVLEX = Order("grevlex")
LEX = Order("lex")


def weighted(*rows) -> Order:
    return Order("weighted", tuple(tuple(r) for r in rows))


class Ideal:
    """Generator list over a common variable list; zeros are dropped."""

    def __init__(self, generators: Iterable[MultiPoly], variables: Sequence[str] | None = None):
        gens = list(generators)
        if variables is None:
            if not gens:
                raise ValueError("need variables for an empty generator list")
            variables = gens[0].variables
        self.variables = tuple(variables)
        for g in gens:
            if g.variables != self.variables:
                raise ValueError("all generators must share the ideal's variable list")
        self.generators = [g for g in gens if g]

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __repr__(self) -> str:
        return f"Ideal({[g.to_str() for g in self.generators]}, vars={self.variables})"


IdealPresentation = Ideal


# --- Buchberger ----------------------------------------------------------------


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _monic(terms, W):
    lm = kernels.leading_monomial(terms, W)
    c = terms[lm]
    if c == 1:
        return lm, terms
    inv = ONE / c
    return lm, {m: v * inv for m, v in terms.items()}


def _spoly(f, lmf, g, lmg):
    L = _lcm(lmf, lmg)
    s = {}
    kernels.add_scaled(s, f, ONE, tuple(x - y for x, y in zip(L, lmf)))
    kernels.add_scaled(s, g, -ONE, tuple(x - y for x, y in zip(L, lmg)))
    return s


def _reducer(lm, terms):
    return (lm, [(m, c) for m, c in terms.items() if m != lm])


def _update(lms, pairs, k, W):
    """Gebauer-Moeller update after appending basis element k."""
    lmk = lms[k]
    kept = set()
    for (i, j) in pairs:
        L = _lcm(lms[i], lms[j])
        if (not kernels.divides(lmk, L)) or L == _lcm(lms[i], lmk) or L == _lcm(lms[j], lmk):
            kept.add((i, j))
    groups: dict[tuple, list[int]] = {}
    for i in range(k):
        if lms[i] is None:
            continue
        groups.setdefault(_lcm(lms[i], lmk), []).append(i)
    minimal = []
    for L in sorted(groups, key=lambda m: kernels.order_key(m, W)):
        if all(not kernels.divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        members = groups[L]
        coprime = any(all(a == 0 or b == 0 for a, b in zip(lms[i], lmk)) for i in members)
        if not coprime:
            kept.add((min(members), k))
    return kept


def buchberger(polys: Sequence[dict], W: tuple) -> list[dict]:
    """Reduced Groebner basis (monic term dicts, ascending order) of the
    ideal generated by ``polys`` under the weight-matrix order ``W``."""
    limit = _max_steps()
    basis: list[dict] = []
    lms: list[tuple | None] = []
    reducers: list = []
    pairs: set = set()
    steps = 0

    def add(h):
        nonlocal pairs
        lm, h = _monic(h, W)
        basis.append(h)
        lms.append(lm)
        reducers.append(_reducer(lm, h))
        pairs = _update(lms, pairs, len(basis) - 1, W)

    for f in polys:
        if f:
            h = kernels.normal_form(f, reducers, W) if reducers else dict(f)
            if h:
                add(h)
    while pairs:
        i, j = min(pairs, key=lambda p: kernels.order_key(_lcm(lms[p[0]], lms[p[1]]), W))
        pairs.discard((i, j))
        steps += 1
        if limit is not None and steps > limit:
            raise GroebnerLimitExceeded(f"Buchberger exceeded {limit} reduction steps")
        s = _spoly(basis[i], lms[i], basis[j], lms[j])
        if not s:
            continue
        h = kernels.normal_form(s, reducers, W)
        if h:
            add(h)
    return _reduce_basis(basis, lms, W)


def _reduce_basis(basis, lms, W):
    order = sorted(range(len(basis)), key=lambda i: kernels.order_key(lms[i], W))
    minimal = []
    for i in order:
        if all(not kernels.divides(lms[j], lms[i]) for j in minimal):
            minimal.append(i)
    out = []
    for idx, i in enumerate(minimal):
        others = [_reducer(lms[j], basis[j]) for j in minimal if j != i]
        tail = {m: c for m, c in basis[i].items() if m != lms[i]}
        red = kernels.normal_form(tail, others, W) if others else tail
        red[lms[i]] = ONE
        out.append(red)
    out.sort(key=lambda t: kernels.order_key(kernels.leading_monomial(t, W), W))
    return out


class GroebnerBasis:
    """Reduced Groebner basis of an ideal under a fixed monomial order."""

    def __init__(self, variables, polys: list[dict], order: Order):
        self.variables = tuple(variables)
        self.order = order
        self.W = order.matrix(len(self.variables))
        self._terms = polys
        self.polys = [MultiPoly(self.variables, t, _trusted=True) for t in polys]
        self.leading_monomials = [kernels.leading_monomial(t, self.W) for t in polys]
        self._reducers = [_reducer(lm, t) for lm, t in zip(self.leading_monomials, polys)]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __repr__(self) -> str:
        return f"GroebnerBasis({[p.to_str() for p in self.polys]}, order={self.order.kind})"

    def is_unit(self) -> bool:
        n = len(self.variables)
        return any(lm == (0,) * n for lm in self.leading_monomials)

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        if f.variables != self.variables:
            raise ValueError("variable mismatch")
        if not self._reducers:
            return f
        return MultiPoly(self.variables, kernels.normal_form(f.terms, self._reducers, self.W), _trusted=True)

    def contains(self, f: MultiPoly) -> bool:
        return not self.normal_form(f)

    def leading_term(self, f: MultiPoly):
        return kernels.leading_monomial(f.terms, self.W)

    def is_groebner(self) -> bool:
        """Buchberger criterion: every S-polynomial reduces to zero."""
        for i in range(len(self._terms)):
            for j in range(i + 1, len(self._terms)):
                s = _spoly(self._terms[i], self.leading_monomials[i],
                           self._terms[j], self.leading_monomials[j])
                if s and kernels.normal_form(s, self._reducers, self.W):
                    return False
        return True


def groebner_basis(I: Ideal, order: Order = GREVLEX) -> GroebnerBasis:
    W = order.matrix(I.nvars)
    polys = buchberger([g.terms for g in I.generators], W)
    return GroebnerBasis(I.variables, polys, order)


# --- dimension -----------------------------------------------------------------


def _minimal_supports(lms) -> list[frozenset]:
    sups = sorted({frozenset(i for i, e in enumerate(m) if e) for m in lms}, key=len)
    minimal: list[frozenset] = []
    for s in sups:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    return minimal


def min_hitting_set_size(supports: list[frozenset], n: int) -> int:
    best = [n]

    def search(chosen: frozenset):
        if len(chosen) >= best[0]:
            return
        for s in supports:
            if not (s & chosen):
                break
        else:
            best[0] = len(chosen)
            return
        if len(chosen) + 1 >= best[0]:
            return
        for v in sorted(s):
            search(chosen | {v})

    search(frozenset())
    return best[0]


def dimension_from_leading_monomials(lms, n: int) -> int:
    """Krull dimension of k[x]/I from the leading monomials of a Groebner
    basis: the size of a largest variable set containing no leading-monomial
    support."""
    lms = list(lms)
    if any(sum(m) == 0 for m in lms):
        return EMPTY
    if not lms:
        return n
    return n - min_hitting_set_size(_minimal_supports(lms), n)


def ideal_dimension(I: Ideal) -> int:
    if not I.generators:
        return I.nvars
    gb = groebner_basis(I, GREVLEX)
    return dimension_from_leading_monomials(gb.leading_monomials, I.nvars)


def projective_is_empty(I: Ideal) -> bool:
    if not I.is_homogeneous():
        raise ValueError("projective_is_empty needs homogeneous generators")
    return ideal_dimension(I) <= 0


# --- Hilbert series ------------------------------------------------------------


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    out = [x - y for x, y in zip(a, b)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=4096)
def _hilbert_num(monos: frozenset) -> tuple:
    if not monos:
        return (1,)
    ms = sorted(monos)
    m = ms[-1]
    rest = frozenset(ms[:-1])
    colon = _minimalize({tuple(max(a - b, 0) for a, b in zip(x, m)) for x in rest})
    a = list(_hilbert_num(rest))
    b = [0] * sum(m) + list(_hilbert_num(colon))
    return tuple(_poly_sub(a, b))


def _minimalize(monos) -> frozenset:
    ms = sorted(monos, key=sum)
    keep = []
    for m in ms:
        if not any(kernels.divides(k, m) for k in keep):
            keep.append(m)
    return frozenset(keep)


def hilbert_numerator(monomials, n: int) -> list[int]:
    """Numerator K(t) of the Hilbert series K(t)/(1-t)^n of k[x]/(monomials)."""
    return list(_hilbert_num(_minimalize(tuple(m) for m in monomials)))


def hilbert_degree_dimension(monomials, n: int) -> tuple[int, int]:
    """(Krull dimension, degree) of k[x]/(monomials) for a monomial ideal."""
    K = hilbert_numerator(monomials, n)
    k = n
    while k > 0 and sum(K) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in K[:-1]:
            acc += c
            q.append(acc)
        K = q if q else [0]
        k -= 1
    if all(c == 0 for c in K):
        return EMPTY, 0
    return k, sum(K)


def projective_degree(I: Ideal) -> tuple[int, int]:
    """(projective dimension, degree) of V(I) for homogeneous I."""
    if not I.is_homogeneous():
        raise ValueError("projective_degree needs homogeneous generators")
    gb = groebner_basis(I, GREVLEX)
    dim, deg = hilbert_degree_dimension(gb.leading_monomials, I.nvars)
    return dim - 1, deg


def standard_monomials(gb: GroebnerBasis) -> list[tuple]:
    """Monomials outside the leading-term ideal (finite for 0-dim ideals)."""
    n = len(gb.variables)
    lms = gb.leading_monomials
    if dimension_from_leading_monomials(lms, n) > 0:
        raise ValueError("ideal is not zero-dimensional")
    if gb.is_unit():
        return []
    out = []
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        m = frontier.pop()
        out.append(m)
        for i in range(n):
            mm = list(m)
            mm[i] += 1
            mm = tuple(mm)
            if mm in seen:
                continue
            seen.add(mm)
            if not any(kernels.divides(lm, mm) for lm in lms):
                frontier.append(mm)
    return sorted(out, key=lambda m: kernels.order_key(m, gb.W))


# --- tangent cone -------------------------------------------------------------


def _check_at_origin(I: Ideal):
    for g in I.generators:
        if g.constant_term() != 0:
            raise ValueError("germ not at origin")


def tangent_cone(I: Ideal) -> Ideal:
    """Ideal of initial forms of all elements of I (localized at 0).

    Homogenize with an extra variable t, compute a Groebner basis under
    (total degree, t-degree descending, grevlex), set t = 1 and take lowest
    forms; the result is returned as a reduced homogeneous basis.
    """
    _check_at_origin(I)
    if not I.generators:
        return Ideal([], I.variables)
    if I.is_homogeneous():
        gb = groebner_basis(I, GREVLEX)
        return Ideal(gb.polys, I.variables)
    n = I.nvars
    hom = []
    for g in I.generators:
        D = g.total_degree()
        hom.append({m + (D - sum(m),): c for m, c in g.terms.items()})
    W = (tuple([1] * (n + 1)), tuple([0] * n + [1]))
    G = buchberger(hom, W)
    lowest = []
    for t in G:
        de = {}
        for m, c in t.items():
            mm = m[:-1]
            de[mm] = de.get(mm, 0) + c
        p = MultiPoly(I.variables, de)
        if p:
            lowest.append(p.initial_form())
    gb = groebner_basis(Ideal(lowest, I.variables), GREVLEX)
    return Ideal(gb.polys, I.variables)


def local_dimension(I: Ideal) -> int:
    """Krull dimension of the local ring of V(I) at the origin."""
    return ideal_dimension(tangent_cone(I))
