"""Newton polyhedra of germs and the one-directional non-lc / non-canonical
certificate read off the position of (1, ..., 1)."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .arith import ONE, ZERO, Q
from .lp import OPTIMAL, linprog_exact
from .poly import MultiPoly


class NewtonCertificate(str, Enum):
    NOT_LC = "NOT_LC"
    NOT_CANONICAL = "NOT_CANONICAL"
    NO_CERTIFICATE = "NO_CERTIFICATE"


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull of (support + positive orthant)."""

    support: frozenset
    dim: int

    def vertices_hint(self) -> list[tuple]:
        """Support points not dominated componentwise by another support point."""
        pts = sorted(self.support)
        return [p for p in pts
                if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]


def newton_polygon(f: MultiPoly) -> NewtonPolygon:
    if not f:
        raise ValueError("zero input")
    return NewtonPolygon(frozenset(f.terms), f.nvars)


def contains_point(P: NewtonPolygon, p, strict: bool = False) -> bool:
    """Exact membership of ``p`` in Gamma, or in its interior when ``strict``.

    Non-strict: find convex weights with sum(l_s * s) <= p.
    Strict: maximize e subject to sum(l_s * s) + e <= p (e <= 1); interior
    iff the optimum is positive.
    """
    if len(p) != P.dim:
        raise ValueError("dimension mismatch")
    p = [Q(v) for v in p]
    pts = P.vertices_hint()
    k = len(pts)
    A_ub = [[Q(s[i]) for s in pts] + [ONE] for i in range(P.dim)]
    A_ub.append([ZERO] * k + [ONE])
    b_ub = p + [ONE]
    A_eq = [[ONE] * k + [ZERO]]
    c = [ZERO] * k + [ONE if strict else ZERO]
    if not strict:
        A_ub = A_ub[:-1]
        b_ub = b_ub[:-1]
        A_ub = [row[:-1] for row in A_ub]
        A_eq = [[ONE] * k]
        c = [ZERO] * k
    res = linprog_exact(c, A_ub, b_ub, A_eq, [ONE])
    if res.status != OPTIMAL:
        return False
    if strict:
        return res.value > 0
    return True


def newton_nonlc_certificate(f: MultiPoly) -> NewtonCertificate:
    if not f:
        raise ValueError("zero input")
    if f.constant_term() != 0:
        raise ValueError("germ not at origin")
    if f.mult_at_origin() < 2:
        # smooth germ: the criterion concerns singular points only
        return NewtonCertificate.NO_CERTIFICATE
    P = newton_polygon(f)
    one = (1,) * f.nvars
    if not contains_point(P, one):
        return NewtonCertificate.NOT_LC
    if not contains_point(P, one, strict=True):
        return NewtonCertificate.NOT_CANONICAL
    return NewtonCertificate.NO_CERTIFICATE
