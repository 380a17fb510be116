from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from helpers import P, XY, XYZ
from mjsingular.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog_exact
from mjsingular.newton import NewtonCertificate, contains_point, newton_nonlc_certificate, newton_polygon
from mjsingular.poly import MultiPoly


def test_lp_small_problems():
    # maximize x + y with x + 2y <= 4, 3x + y <= 6
    r = linprog_exact([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert r.status == OPTIMAL and r.value == Fraction(14, 5)
    assert linprog_exact([1], [[-1]], [-2], [[1]], [1]).status == INFEASIBLE
    assert linprog_exact([1, 0], [[0, 1]], [1]).status == UNBOUNDED


def test_support_examples():
    assert newton_polygon(P("x^2 + y^3", XY)).support == {(2, 0), (0, 3)}
    assert newton_polygon(P("x*y", XY)).support == {(1, 1)}
    assert newton_polygon(P("x^2 + y^5 + z^5")).support == {(2, 0, 0), (0, 5, 0), (0, 0, 5)}
    with pytest.raises(ValueError, match="zero input"):
        newton_polygon(MultiPoly.zero(XY))


def test_membership_examples():
    assert not contains_point(newton_polygon(P("x^2 + y^5 + z^5")), (1, 1, 1))
    G = newton_polygon(P("x^2 + y^3 + z^6"))
    assert contains_point(G, (1, 1, 1))
    assert not contains_point(G, (1, 1, 1), strict=True)
    assert contains_point(newton_polygon(P("x*y", XY)), (1, 1))


def test_certificate_examples():
    assert newton_nonlc_certificate(P("x^2 + y^5 + z^5")) == NewtonCertificate.NOT_LC
    assert newton_nonlc_certificate(P("x^2 + y^3 + z^6")) == NewtonCertificate.NOT_CANONICAL
    assert newton_nonlc_certificate(P("x^2 + y^2 + z^2")) == NewtonCertificate.NO_CERTIFICATE
    with pytest.raises(ValueError, match="germ not at origin"):
        newton_nonlc_certificate(P("x^2 + 1"))


def test_smooth_germ_gets_no_certificate():
    assert newton_nonlc_certificate(P("x", XY)) == NewtonCertificate.NO_CERTIFICATE
    assert newton_nonlc_certificate(P("x + y^7 + z^9")) == NewtonCertificate.NO_CERTIFICATE


def scipy_contains(support, p, strict):
    pts = list(support)
    k = len(pts)
    n = len(p)
    # variables: lambda_1..k, eps; maximize eps (strict) or feasibility
    A_ub = [[s[i] for s in pts] + [1 if strict else 0] for i in range(n)]
    A_eq = [[1] * k + [0]]
    c = [0] * k + [-1 if strict else 0]
    bounds = [(0, None)] * k + [(0, 1)]
    res = linprog(c, A_ub=A_ub, b_ub=list(p), A_eq=A_eq, b_eq=[1], bounds=bounds, method="highs")
    if res.status != 0:
        return False, None
    return True, -res.fun if strict else None


def grid_contains(support, p, steps=12):
    """Two-point convex combinations on a grid; a sufficient witness only."""
    pts = list(support)
    for a in pts:
        if all(x <= y for x, y in zip(a, p)):
            return True
        for b in pts:
            for s in range(steps + 1):
                lam = Fraction(s, steps)
                if all(lam * x + (1 - lam) * y <= q for x, y, q in zip(a, b, p)):
                    return True
    return False


supports = st.sets(st.tuples(*[st.integers(0, 7)] * 3).filter(lambda m: sum(m) >= 2),
                   min_size=1, max_size=5)


@settings(max_examples=80, deadline=None)
@given(supports, st.tuples(*[st.integers(0, 3)] * 3))
def test_membership_agrees_with_float_lp(support, p):
    G = newton_polygon(MultiPoly(XYZ, {m: 1 for m in support}))
    ours = contains_point(G, p)
    feas, _ = scipy_contains(support, p, False)
    assert ours == feas
    if grid_contains(support, p):
        assert ours
    inside = contains_point(G, p, strict=True)
    if inside:
        assert ours
    feas_s, eps = scipy_contains(G.vertices_hint(), p, True)
    if feas_s and eps is not None and abs(eps) > 1e-7:
        assert inside == (eps > 0)


@settings(max_examples=60, deadline=None)
@given(supports, st.tuples(*[st.integers(0, 3)] * 3), st.tuples(*[st.integers(0, 2)] * 3))
def test_membership_is_monotone(support, p, q):
    G = newton_polygon(MultiPoly(XYZ, {m: 1 for m in support}))
    bigger = tuple(a + b for a, b in zip(p, q))
    if contains_point(G, p):
        assert contains_point(G, bigger)
    if contains_point(G, p, strict=True):
        assert contains_point(G, bigger, strict=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9), st.integers(2, 9))
def test_brieskorn_boundary(a, b, c):
    f = P(f"x^{a} + y^{b} + z^{c}")
    s = Fraction(1, a) + Fraction(1, b) + Fraction(1, c)
    cert = newton_nonlc_certificate(f)
    if s < 1:
        assert cert == NewtonCertificate.NOT_LC
    elif s == 1:
        assert cert == NewtonCertificate.NOT_CANONICAL
    else:
        assert cert == NewtonCertificate.NO_CERTIFICATE
