"""Reducedness and ordinary-node tests for projective plane curves and space
curves in P^3, plus extraction of the finitely many points of a
zero-dimensional projective scheme."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .arith import ONE, ZERO, ExtField, UPoly, scalar_str, squarefree_decomposition, univariate_factor
from .groebner import Ideal, dimension_from_leading_monomials, groebner_basis, ideal_dimension, projective_is_empty, standard_monomials
from .linalg import det, kernel, matmul, rank, solve
from .poly import MultiPoly, hessian_matrix, jacobian_matrix, minors

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


class ExtensionTooDeep(RuntimeError):
    """Points would need a tower of field extensions."""


@dataclass
class NodalVerdict:
    reduced: bool
    singular_locus_finite: bool
    all_nodes: bool
    witnesses: list = field(default_factory=list)
    status: str | None = None
    reason: str = ""

    def __post_init__(self):
        if self.status is None:
            ok = self.reduced and self.singular_locus_finite and self.all_nodes
            self.status = PASS if ok else FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates, last nonzero coordinate equal to 1."""

    coords: tuple
    field: ExtField | None = None

    def __str__(self) -> str:
        return "(" + ":".join(scalar_str(c) for c in self.coords) + ")"

    @property
    def chart(self) -> int:
        return max(i for i, c in enumerate(self.coords) if c)


def _check_homogeneous(forms, nvars=None):
    for F in forms:
        if nvars is not None and F.nvars != nvars:
            raise ValueError(f"wrong variable count: expected {nvars}")
        if not F:
            raise ValueError("zero form")
        if not F.is_homogeneous():
            raise ValueError("non-homogeneous form")


# --- plane curves --------------------------------------------------------------


def plane_curve_nodal(F: MultiPoly) -> NodalVerdict:
    """Point-free test: V(grad F) finite, and grad F together with the 2x2
    minors of the Hessian has no projective zero."""
    _check_homogeneous([F], 3)
    d = F.total_degree()
    if d < 1:
        raise ValueError("degree must be at least 1")
    grad = [g for g in F.gradient() if g]
    sigma = Ideal(grad, F.variables)
    finite = ideal_dimension(sigma) <= 1
    if not finite:
        return NodalVerdict(False, False, False, ["singular locus is positive-dimensional"],
                            reason="multiple component")
    if d <= 2:
        # a conic singular at a point is a line pair meeting there: a node
        return NodalVerdict(True, True, True)
    J = Ideal(grad + minors(hessian_matrix(F), 2), F.variables)
    if projective_is_empty(J):
        return NodalVerdict(True, True, True)
    witnesses = []
    try:
        witnesses = [str(p) for p in singular_points(J)]
    except (ExtensionTooDeep, ValueError):
        witnesses = ["non-nodal singular point"]
    return NodalVerdict(True, True, False, witnesses, reason="non-nodal singular point")


# --- points of zero-dimensional schemes ---------------------------------------


class _Quotient:
    """k[x]/J for zero-dimensional J, via normal forms on the staircase."""

    def __init__(self, J: Ideal):
        self.gb = groebner_basis(J)
        self.basis = standard_monomials(self.gb)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.variables = J.variables

    @property
    def size(self) -> int:
        return len(self.basis)

    def vector(self, p: MultiPoly) -> list:
        v = [ZERO] * self.size
        for m, c in self.gb.normal_form(p).terms.items():
            v[self.index[m]] = c
        return v

    def powers(self, p: MultiPoly, k: int):
        out = [MultiPoly.constant(self.variables, 1)]
        for _ in range(k):
            out.append(self.gb.normal_form(out[-1] * p))
        return out

    def min_poly(self, p: MultiPoly) -> UPoly:
        pw = self.powers(p, self.size)
        vecs = [self.vector(q) for q in pw]
        for k in range(1, self.size + 1):
            cols = [[vecs[j][i] for j in range(k)] for i in range(self.size)]
            c = solve(cols, vecs[k])
            if c is not None:
                return UPoly([-x for x in c] + [ONE])
        raise AssertionError("minimal polynomial degree exceeds quotient dimension")


def _radical_zero_dim(J: Ideal) -> Ideal:
    quo = _Quotient(J)
    extra = []
    X = MultiPoly.gens(J.variables)
    for x in X:
        mp = quo.min_poly(x)
        sq = UPoly([ONE])
        for fac, _k in squarefree_decomposition(mp):
            sq = sq * fac
        if sq.degree < mp.degree:
            extra.append(sum((x ** i * c for i, c in enumerate(sq.coeffs) if c),
                             MultiPoly.zero(J.variables)))
    if not extra:
        return J
    return Ideal(list(J.generators) + extra, J.variables)


def affine_points(J: Ideal, seed: int = 0) -> list[tuple[tuple, ExtField | None]]:
    """Points of a zero-dimensional affine ideal over Q, one entry per
    Galois orbit: (coordinates, field) with coordinates in Q or Q(a)."""
    gb = groebner_basis(J)
    if gb.is_unit():
        return []
    if dimension_from_leading_monomials(gb.leading_monomials, len(J.variables)) > 0:
        raise ValueError("positive-dimensional input")
    n = len(J.variables)
    if n == 0:
        return [((), None)]
    R = _radical_zero_dim(J)
    quo = _Quotient(R)
    s = quo.size
    X = MultiPoly.gens(J.variables)
    rng = random.Random(seed)
    for attempt in range(60):
        if attempt == 0:
            coeffs = [1] * n
        else:
            bound = 2 + attempt // 6
            coeffs = [rng.randint(-bound, bound) for _ in range(n)]
        z = sum((x * c for x, c in zip(X, coeffs) if c), MultiPoly.zero(J.variables))
        if not z:
            continue
        q = quo.min_poly(z)
        if q.degree == s:
            break
    else:
        raise ExtensionTooDeep("no separating linear form found")
    vecs = [quo.vector(p) for p in quo.powers(z, s - 1)]
    cols = [[vecs[j][i] for j in range(s)] for i in range(s)]
    hs = []
    for x in X:
        c = solve(cols, quo.vector(x))
        if c is None:
            raise AssertionError("coordinate not expressible in the separating element")
        hs.append(UPoly(c))
    out = []
    for fac, _k in univariate_factor(q):
        if fac.degree == 1:
            root = -fac.coeffs[0] / fac.coeffs[1]
            out.append((tuple(h(root) for h in hs), None))
        else:
            K = ExtField(fac, "a")
            a = K.gen()
            out.append((tuple(_norm_scalar(h(a)) for h in hs), K))
    return out


def _norm_scalar(c):
    if hasattr(c, "is_rational") and c.is_rational():
        return c.to_rational()
    return c


def singular_points(I: Ideal, seed: int = 0) -> list[ProjectivePoint]:
    """All points of the zero-dimensional projective scheme V(I), split by
    the chart of the last nonzero coordinate."""
    _check_homogeneous(I.generators)
    d = ideal_dimension(I)
    if d > 1:
        raise ValueError("positive-dimensional input")
    if d <= 0:
        return []
    V = I.variables
    n = len(V)
    points = []
    for k in range(n - 1, -1, -1):
        sub_vars = V[:k]
        consts = [1] + [0] * (n - k - 1)
        if k == 0:
            if all(g.evaluate([ONE] + [ZERO] * (n - 1)) == 0 for g in I.generators):
                points.append(ProjectivePoint(tuple([ONE] + [ZERO] * (n - 1))))
            continue
        tgt = tuple(sub_vars)
        imgs = [MultiPoly.var(tgt, i) for i in range(k)] + \
               [MultiPoly.constant(tgt, c) for c in consts]
        gens = [g.substitute(imgs) for g in I.generators]
        gens = [g for g in gens if g]
        if not gens:
            raise ValueError("positive-dimensional input")
        for coords, K in affine_points(Ideal(gens, tgt), seed):
            points.append(ProjectivePoint(tuple(coords) + (ONE,) + (ZERO,) * (n - k - 1), K))
    return points


# --- space curves -------------------------------------------------------------


def _grad_at(F: MultiPoly, p) -> list:
    return [g.evaluate(p) if g else ZERO for g in F.gradient()]


def _hessian_at(F: MultiPoly, p) -> list[list]:
    return [[h.evaluate(p) if h else ZERO for h in row] for row in hessian_matrix(F)]


def _restricted_hessian(H, chart: int, T):
    """B^T H B for the kernel basis T (vectors in the chart coordinates)."""
    idx = [i for i in range(len(H)) if i != chart]
    Hc = [[H[i][j] for j in idx] for i in idx]
    B = [[T[j][i] for j in range(len(T))] for i in range(len(idx))]
    Bt = [list(r) for r in zip(*B)]
    return matmul(matmul(Bt, Hc), B)


def local_node_test(forms: list[MultiPoly], p: ProjectivePoint) -> tuple[bool, str]:
    """Whether the curve V(forms) has an ordinary node at the singular point p.

    Picks a form with nonzero differential at p, kills the differentials of
    the others against it in the chart at p, and inspects the span of their
    Hessians on the tangent plane of the smooth surface."""
    pt = list(p.coords)
    k = p.chart
    grads = [_grad_at(F, pt) for F in forms]
    aff = [[g[i] for i in range(len(pt)) if i != k] for g in grads]
    r = rank(aff)
    if r == 0:
        return False, f"Jacobian rank 0 at {p}"
    if r >= 2:
        return True, f"smooth at {p}"
    lead = next(i for i, g in enumerate(aff) if any(v != 0 for v in g))
    piv = next(j for j, v in enumerate(aff[lead]) if v != 0)
    T = kernel([aff[lead]], len(aff[lead]))
    H0 = _hessian_at(forms[lead], pt)
    mats = []
    for i, F in enumerate(forms):
        if i == lead:
            continue
        c = aff[i][piv] / aff[lead][piv]
        Hi = _hessian_at(F, pt)
        H = [[a - c * b for a, b in zip(ra, rb)] for ra, rb in zip(Hi, H0)]
        mats.append(_restricted_hessian(H, k, T))
    vecs = [[m[0][0], m[0][1], m[1][1]] for m in mats]
    span = rank(vecs) if vecs else 0
    if span == 0:
        return False, f"multiplicity at least 3 at {p}"
    if span >= 2:
        return False, f"tangent cone not principal at {p}"
    m = next(m for m, v in zip(mats, vecs) if any(x != 0 for x in v))
    if det(m) == 0:
        return False, f"cuspidal or tacnodal point at {p}"
    return True, f"ordinary node at {p}"


def _space_curve_test(forms: list[MultiPoly], seed: int) -> NodalVerdict:
    V = forms[0].variables
    I = Ideal(forms, V)
    dim = ideal_dimension(I)
    if dim != 2:
        return NodalVerdict(False, False, False, [f"affine cone dimension {dim}, not a curve"],
                            reason="not a curve")
    J = jacobian_matrix(forms)
    sigma = Ideal(list(forms) + minors(J, 2), V)
    if ideal_dimension(sigma) > 1:
        return NodalVerdict(False, False, False, ["singular locus is positive-dimensional"],
                            reason="not reduced")
    try:
        pts = singular_points(sigma, seed)
    except ExtensionTooDeep as e:
        return NodalVerdict(True, True, False, [str(e)], status=INCONCLUSIVE, reason=str(e))
    witnesses = []
    ok = True
    for p in pts:
        good, msg = local_node_test(forms, p)
        witnesses.append(msg)
        if not good:
            ok = False
    return NodalVerdict(True, True, ok, witnesses, reason="" if ok else "non-nodal singular point")


def ci_space_curve_nodal(Q1: MultiPoly, Q2: MultiPoly, seed: int = 0) -> NodalVerdict:
    """Node test for the complete intersection of two quadrics in P^3."""
    _check_homogeneous([Q1, Q2], 4)
    if Q1.total_degree() != 2 or Q2.total_degree() != 2:
        raise ValueError("forms must be quadrics")
    return _space_curve_test([Q1, Q2], seed)


def space_curve_nodal(forms: list[MultiPoly], seed: int = 0) -> NodalVerdict:
    """Node test for a curve in P^3 cut out by arbitrary forms."""
    forms = [F for F in forms if F]
    if not forms:
        raise ValueError("no forms")
    _check_homogeneous(forms, 4)
    return _space_curve_test(forms, seed)
