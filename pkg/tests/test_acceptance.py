"""Acceptance criteria, one group per criterion.  The terminal summary
prints one PASS/FAIL line per criterion (see conftest.py)."""

import random

import pytest
import sympy

from helpers import (
    CAN, LC, NOT, SUITE, TERMINAL, TWISTED_CI, X4, X6, XY, XYZ,
    FIXTURES, P, fixture_ideal, ideal, random_invertible, substitution_oracle,
    suite_ideal, to_sympy,
)
from mjsingular.classify import Verdict, classify_germ, cone_criterion
from mjsingular.curves import PASS, affine_points, ci_space_curve_nodal
from mjsingular.groebner import Ideal
from mjsingular.jets import jet_expansion, jet_fiber_dim, jet_variable, mld_upper_bound
from mjsingular.newton import NewtonCertificate, newton_nonlc_certificate
from mjsingular.poly import MultiPoly, linear_change

THREEFOLDS = {"terminal_quotient", "brieskorn_3456", "threefold_a1", "threefold_cA"}
LOW_DIM = [c for c in SUITE if c[0] not in THREEFOLDS]
FIXTURE_NAMES = sorted(p.name for p in FIXTURES.glob("*.txt"))


def verdict(gens, variables=XYZ):
    return classify_germ(ideal(gens, variables)).verdict.value


def all_inputs():
    """Every suite germ and every fixture file, as (name, ideal)."""
    out = [(c[0], suite_ideal(c)) for c in SUITE]
    out += [(name, fixture_ideal(name)) for name in FIXTURE_NAMES]
    return out


# 1. dimension-one table

@pytest.mark.criterion(1)
@pytest.mark.parametrize("gens,variables,expected", [
    (["y"], XY, CAN),
    (["x*y"], XY, LC),
    (["x^2 - y^3"], XY, NOT),
    (["x^2 - y^4"], XY, NOT),
    (["x*y", "y*z", "z*x"], XYZ, NOT),
], ids=["smooth_line", "node", "cusp", "tacnode", "three_axes"])
def test_c1_curve_table(gens, variables, expected):
    assert verdict(gens, variables) == expected


# 2. rational double points

RDP = [(c[0], c[2], c[0]) for c in SUITE if c[0][0] in "ADE" and c[0][1:].isdigit()]
RDP += [
    ("A3_embedded", ("w - x*y", "x^2 + y^2 + z^4 + w^3"), "A3"),
    ("D7_disguised", ("x^2 + y^2*z + x*z^3",), "D7"),
    ("A5_disguised", ("y*z + x^6 + x^3*y",), "A5"),
    ("A3_product", ("x*y + z^4",), "A3"),
    ("D4_cubic", ("x^2 + y^3 + y*z^2",), "D4"),
    ("D6_form", ("x^2 + y^2*z + z^5",), "D6"),
    ("E6_tail", ("x^2 + y^3 + z^4 + y*z^3",), "E6"),
]


@pytest.mark.criterion(2)
def test_c2_has_twenty_fixtures():
    assert len(RDP) >= 20


@pytest.mark.criterion(2)
@pytest.mark.parametrize("name,gens,label", RDP, ids=[r[0] for r in RDP])
def test_c2_rdp_label(name, gens, label):
    variables = ("x", "y", "z", "w") if len(gens) == 2 else XYZ
    rep = classify_germ(ideal(gens, variables))
    assert rep.verdict == Verdict.MJ_CANONICAL
    assert str(rep.certificate[-1]) == f"rdp: {label}"


@pytest.mark.criterion(2)
@pytest.mark.parametrize("f", ["x^2 + y^4 + z^4", "x^2 + y^3 + z^6"])
def test_c2_log_canonical_not_canonical(f):
    assert verdict([f]) == LC


# 3. branch coverage of the hypersurface theorem

HYP3 = [
    ("hyp3(i)", "x*y*z", LC),
    ("hyp3(i)", "x^3 + y^3 + z^3", LC),
    ("hyp3(i)", "x^3 + y^3 + z^3 + x*y*z + z^4", LC),
    ("hyp3(i)", "x^3 + y^3 + x^2*y + x*y^2", NOT),
    ("hyp3(i)", "y^2*z - x^3", NOT),
    ("hyp3(ii)(a)", "x^2 + y^2 + z^5", CAN),
    ("hyp3(ii)(a)", "x^2 + y^2", LC),
    ("hyp3(ii)(b)", "x^2 + y^2*z + z^4", CAN),
    ("hyp3(ii)(b)", "x^2 + y^2*z", LC),
    ("hyp3(ii)(c)", "x^2 + y^3 + y*z^4", LC),
    ("hyp3(ii)(c)", "x^2 + y^3 + z^6", LC),
    ("hyp3(ii)(c)", "x^2 + y^3 + y*z^4 + z^6", LC),
    ("hyp3(ii)(c)", "x^2 + y^3 + z^7", NOT),
    ("hyp3(ii)(c)", "x^2 + y^3 + y*z^5 + z^7", NOT),
    ("hyp3(ii)(d)", "x^2 + y^4 + z^4", LC),
    ("hyp3(ii)(d)", "x^2 + y^2*z^2 + y^5", LC),
    ("hyp3(ii)(d)", "x^2 + y^3*z + z^5", NOT),
    ("hyp3(ii)(d)", "x^2 + y^4 + z^7", NOT),
    ("hyp3(ii)", "x^2 + y^5 + z^5", NOT),
    ("hyp3(ii)", "x^2", NOT),
]


@pytest.mark.criterion(3)
@pytest.mark.parametrize("branch,f,expected", HYP3, ids=[f"{b}:{f}" for b, f, _ in HYP3])
def test_c3_hyp3_branch(branch, f, expected):
    rep = classify_germ(ideal([f]))
    assert rep.verdict.value == expected
    assert rep.certificate[0].branch == branch


@pytest.mark.criterion(3)
def test_c3_two_fixtures_per_side():
    sides = {}
    for branch, _f, v in HYP3:
        sides.setdefault(branch, {}).setdefault(v != NOT, 0)
        sides[branch][v != NOT] += 1
    for branch in ("hyp3(i)", "hyp3(ii)(c)", "hyp3(ii)(d)"):
        assert sides[branch][True] >= 2 and sides[branch][False] >= 2
    # (a) and (b) only produce A, D, A-infinity and D-infinity points, all lc
    for branch in ("hyp3(ii)(a)", "hyp3(ii)(b)"):
        assert sides[branch][True] >= 2 and False not in sides[branch]


# 4. complete intersections

@pytest.mark.criterion(4)
def test_c4_ci():
    assert verdict(["x1*x3", "x2*x4"], X4) == LC
    assert ci_space_curve_nodal(*[P(t, X4) for t in TWISTED_CI]).status == PASS
    assert verdict(list(TWISTED_CI), X4) == LC
    assert verdict(["x1^2", "x2*x4"], X4) == NOT


# 5. terminal quotient example

@pytest.mark.criterion(5)
def test_c5_terminal_quotient():
    I = ideal(TERMINAL, X6)
    assert jet_fiber_dim(I, 2) == 10
    b = mld_upper_bound(I, 3, 2)
    assert b.terms[-1] == (2, 10, -1)
    assert b.certified_minus_infinity
    assert classify_germ(I).verdict == Verdict.NOT_MJ_LOG_CANONICAL


# 6. cones over Segre embeddings

@pytest.mark.criterion(6)
def test_c6_segre_table():
    for r in range(1, 6):
        for m in range(1, 6):
            N, d = (r + 1) * (m + 1), r + m + 1
            k = (r - 1) * (m - 1)
            assert cone_criterion(N, d, 2) == (k <= 1, k <= 2), (r, m)
    assert cone_criterion(4, 3, 2) == (True, True)


# 7. Newton soundness

@pytest.mark.criterion(7)
@pytest.mark.parametrize("name,I", all_inputs(), ids=[n for n, _ in all_inputs()])
def test_c7_newton_soundness(name, I):
    if len(I.generators) != 1:
        return
    rep = classify_germ(I)
    if rep.dim is None or I.nvars != rep.dim + 1:
        return
    cert = newton_nonlc_certificate(I.generators[0])
    if cert == NewtonCertificate.NOT_LC:
        assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL
    if cert == NewtonCertificate.NOT_CANONICAL:
        assert rep.verdict != Verdict.MJ_CANONICAL


# 8. jet bound vs classifier

@pytest.mark.criterion(8)
@pytest.mark.parametrize("name,I", all_inputs(), ids=[n for n, _ in all_inputs()])
def test_c8_minus_infinity_is_never_positive(name, I):
    rep = classify_germ(I)
    if rep.dim not in (1, 2, 3):
        return
    levels = {1: 5, 2: 3, 3: 2}[rep.dim]
    if rep.dim == 3 and name not in ("terminal_quotient", "terminal_r5_s2.txt"):
        return
    b = mld_upper_bound(I, rep.dim, levels)
    if b.certified_minus_infinity:
        assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL


# 9. invariance under linear changes of coordinates

INVARIANTS = ("tau", "m2", "tau2", "pattern")
INVARIANCE_CASES = [(c[0], c) for c in LOW_DIM]
INVARIANCE_CASES += [(n, n) for n in FIXTURE_NAMES if n != "terminal_r5_s2.txt"]


def _invariance_ideal(case):
    return fixture_ideal(case) if isinstance(case, str) else suite_ideal(case)


@pytest.mark.criterion(9)
@pytest.mark.parametrize("half", [0, 1])
@pytest.mark.parametrize("name,case", INVARIANCE_CASES, ids=[n for n, _ in INVARIANCE_CASES])
def test_c9_invariance(name, case, half):
    I = _invariance_ideal(case)
    base = classify_germ(I)
    rng = random.Random(f"c9:{name}")
    changes = [random_invertible(I.nvars, rng) for _ in range(10)]
    for M in changes[5 * half:5 * half + 5]:
        J = Ideal([linear_change(g, M) for g in I.generators], I.variables)
        rep = classify_germ(J)
        assert rep.verdict == base.verdict, M
        for key in INVARIANTS:
            assert rep.invariants.get(key) == base.invariants.get(key), (key, M)


# 10. jet expansion law and substitution oracle

def _random_germ(rng):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        while True:
            m = tuple(rng.randint(0, 3) for _ in range(3))
            if 1 <= sum(m) <= 4:
                break
        terms[m] = rng.choice([c for c in range(-4, 5) if c])
    return MultiPoly(XYZ, terms)


@pytest.mark.criterion(10)
def test_c10_keisan_law():
    rng = random.Random("c10:law")
    for _ in range(50):
        f = _random_germ(rng)
        m = rng.randint(1, 4)
        _, F = jet_expansion(f, m)
        mult = f.mult_at_origin()
        for j in range(min(mult, m + 1)):
            assert not F[j]
        if mult <= m:
            sub = {sympy.Symbol(v): sympy.Symbol(jet_variable(v, 1)) for v in f.variables}
            assert to_sympy(F[mult]) == sympy.expand(to_sympy(f.initial_form()).xreplace(sub))


@pytest.mark.criterion(10)
def test_c10_substitution_oracle():
    rng = random.Random("c10:oracle")
    for _ in range(50):
        f = _random_germ(rng)
        m = rng.randint(1, 3)
        fiber = rng.random() < 0.5
        _, F = jet_expansion(f, m, fiber)
        assert [to_sympy(p) for p in F] == substitution_oracle(f, m, fiber)


# 11. blow-up chart of the case (c) family

UVW = ("u", "v", "w")


def _translate(f, point):
    images = [MultiPoly.var(f.variables, i) + c for i, c in enumerate(point)]
    return f.substitute(images)


@pytest.mark.criterion(11)
@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (1, 1), (2, -1)])
def test_c11_blowup_chart(a, b):
    germ = classify_germ(ideal([f"x^2 + y^3 + ({a})*y*z^4 + ({b})*z^6"]))
    assert germ.verdict == Verdict.MJ_LOG_CANONICAL_ONLY
    f = P(f"u^2 + v^3*w + ({a})*v*w^3 + ({b})*w^4 + w^5", UVW)
    points = affine_points(Ideal([f] + f.gradient(), UVW))
    assert points
    for point, field in points:
        assert field is None, "singular point over an extension"
        g = _translate(f, point)
        assert classify_germ(Ideal([g], UVW)).verdict == germ.verdict
