"""Shared constructors for the test suite."""

import random
from pathlib import Path

import sympy

from mjsingular.groebner import Ideal
from mjsingular.jets import jet_variable
from mjsingular.linalg import det
from mjsingular.parser import parse_document, parse_poly

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

XY = ("x", "y")
XYZ = ("x", "y", "z")
X4 = ("x1", "x2", "x3", "x4")
X6 = ("x1", "x2", "x3", "x4", "x5", "x6")


def P(text, variables=XYZ):
    return parse_poly(text, variables)


def ideal(texts, variables=XYZ):
    return Ideal([parse_poly(t, variables) for t in texts], variables)


def load_fixture(name):
    path = FIXTURES / name
    return parse_document(path.read_text(), source=str(path))


def fixture_ideal(name):
    doc = load_fixture(name)
    return Ideal(doc.generators, doc.variables)


def random_invertible(n, rng, lo=-2, hi=2):
    while True:
        M = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
        if det(M) != 0:
            return M


def rng_for(seed):
    return random.Random(seed)


TERMINAL = ("x3*x4 - x5*x6", "x1*x2 - x4^5", "x1*x3^3 - x5^5", "x2*x3^2 - x6^5")
TWISTED_CI = ("x1*x3 - x2^2 + x2*x4 - x3^2", "x1*x4 - x2*x3")


def _monomials_below(n, N):
    out = [()]
    for _ in range(n):
        out = [m + (e,) for m in out for e in range(N)]
    return [m for m in out if sum(m) < N]


def _rank_mod(rows, p):
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def truncated_colength(gens, N, p=1000003):
    """dim_k k[x]/(I + m^N) by linear algebra mod a large prime."""
    n = gens[0].nvars
    monos = _monomials_below(n, N)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        for m in monos:
            row = [0] * len(monos)
            hit = False
            for mm, c in g.terms.items():
                t = tuple(a + b for a, b in zip(m, mm))
                if t in index:
                    row[index[t]] = (int(c.numerator) * pow(int(c.denominator), p - 2, p)) % p
                    hit = True
            if hit:
                rows.append(row)
    return len(monos) - (_rank_mod(rows, p) if rows else 0)


def local_colength(gens, start=2, limit=14):
    """Colength of an m-primary ideal in the local ring at 0, found once
    the truncated colength stabilizes (Nakayama); None if it never does."""
    prev = truncated_colength(gens, start)
    for N in range(start + 1, limit + 1):
        cur = truncated_colength(gens, N)
        if cur == prev:
            return cur
        prev = cur
    return None


CAN = "MJ_CANONICAL"
LC = "MJ_LOG_CANONICAL_ONLY"
NOT = "NOT_MJ_LOG_CANONICAL"
INC = "INCONCLUSIVE"

X5 = ("x1", "x2", "x3", "x4", "x5")
XYZW = ("x", "y", "z", "w")

# (name, variables, generators, expected verdict or None when only soundness is checked)
SUITE = [
    # curves
    ("smooth_plane_curve", XY, ["y - x^2"], CAN),
    ("node", XY, ["x*y"], LC),
    ("cusp", XY, ["x^2 - y^3"], NOT),
    ("tacnode", XY, ["x^2 - y^4"], NOT),
    ("three_axes", XYZ, ["x*y", "y*z", "z*x"], NOT),
    ("twisted_branch", XYZ, ["y - x^2", "z - x^3"], CAN),
    ("space_node", XYZ, ["x*y", "z - x^2 - y^3"], LC),
    ("a4_curve", XY, ["x^2 - y^5"], NOT),
    # surfaces: rational double points
    *[(f"A{n}", XYZ, [f"x^2 + y^2 + z^{n + 1}"], CAN) for n in range(1, 9)],
    *[(f"D{n}", XYZ, [f"x^2 + y^2*z + z^{n - 1}"], CAN) for n in range(4, 9)],
    ("E6", XYZ, ["x^2 + y^3 + z^4"], CAN),
    ("E7", XYZ, ["x^2 + y^3 + y*z^3"], CAN),
    ("E8", XYZ, ["x^2 + y^3 + z^5"], CAN),
    ("A3_embedded", XYZW, ["w - x*y", "x^2 + y^2 + z^4 + w^3"], CAN),
    # surfaces: double points beyond ADE
    ("quartic_lc", XYZ, ["x^2 + y^4 + z^4"], LC),
    ("sextic_boundary", XYZ, ["x^2 + y^3 + z^6"], LC),
    ("pinch", XYZ, ["x^2 + y^2*z"], LC),
    ("a_infinity", XYZ, ["x^2 + y^2"], LC),
    ("pinch_disguised", XYZ, ["x^2 + y^2*z + y^4"], LC),
    ("D7_disguised", XYZ, ["x^2 + y^2*z + x*z^3"], CAN),
    ("cube_boundary", XYZ, ["x^2 + y^3 + y*z^4 + z^6"], LC),
    ("cube_yz4", XYZ, ["x^2 + y^3 + y*z^4"], LC),
    ("cube_z7", XYZ, ["x^2 + y^3 + z^7"], NOT),
    ("cube_yz5_z7", XYZ, ["x^2 + y^3 + y*z^5 + z^7"], NOT),
    ("quartic_double_lines", XYZ, ["x^2 + y^2*z^2 + y^5"], LC),
    ("quartic_triple", XYZ, ["x^2 + y^4 + y^3*z"], NOT),
    ("quartic_fourfold", XYZ, ["x^2 + y^4 + z^7"], NOT),
    ("quintic_residual", XYZ, ["x^2 + y^5 + z^5"], NOT),
    ("nonreduced_plane", XYZ, ["x^2"], NOT),
    # surfaces: triple points
    ("coordinate_triangle", XYZ, ["x*y*z"], LC),
    ("cone_cubic", XYZ, ["x^3 + y^3 + z^3"], LC),
    ("nodal_cubic_cone", XYZ, ["y^2*z - x^3 - x^2*z + y^5"], LC),
    ("concurrent_lines", XYZ, ["x*y*(x + y) + z^4"], NOT),
    ("cuspidal_cone", XYZ, ["y^2*z - x^3"], NOT),
    ("quartic_cone", XYZ, ["x^4 + y^4 + z^4"], NOT),
    # surfaces: embedding dimension 4 and 5
    ("four_cycle", X4, ["x1*x3", "x2*x4"], LC),
    ("twisted_ci", X4, ["x1*x3 - x2^2 + x2*x4 - x3^2", "x1*x4 - x2*x3"], LC),
    ("nonreduced_ci", X4, ["x1^2", "x2*x4"], NOT),
    ("skew_lines", X4, ["x1*x3", "x1*x4", "x2*x3", "x2*x4"], LC),
    ("twisted_cubic_cone", X4, ["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"], LC),
    ("concurrent_lines_cone", X4, ["x1*x2", "x2*x3", "x1*x3"], NOT),
    ("rational_quartic_cone", X5, ["x1*x3 - x2^2", "x1*x4 - x2*x3", "x1*x5 - x2*x4",
                                   "x2*x4 - x3^2", "x2*x5 - x3*x4", "x3*x5 - x4^2"], NOT),
    # threefolds
    ("terminal_quotient", X6, list(TERMINAL), NOT),
    ("brieskorn_3456", XYZW, ["x^3 + y^4 + z^5 + w^6"], NOT),
    ("threefold_a1", XYZW, ["x^2 + y^2 + z^2 + w^2"], None),
    ("threefold_cA", XYZW, ["x*y + z^2 + w^5"], None),
]


def suite_ideal(case):
    _name, variables, gens, _expected = case
    return ideal(gens, variables)


def to_sympy(f):
    gens = sympy.symbols(f.variables)
    return sympy.expand(sum(sympy.Rational(int(c.numerator), int(c.denominator))
                            * sympy.prod([g ** e for g, e in zip(gens, m)])
                            for m, c in f.terms.items()))


def substitution_oracle(f, m, fiber):
    """Coefficients of t^j in f(sum_j x^(j) t^j), by sympy series algebra."""
    t = sympy.Symbol("t")
    start = 1 if fiber else 0
    sub = {}
    for v in f.variables:
        sub[sympy.Symbol(v)] = sum(sympy.Symbol(jet_variable(v, j)) * t ** j
                                   for j in range(start, m + 1))
    expr = sympy.expand(to_sympy(f).xreplace(sub))
    poly = sympy.Poly(expr, t)
    return [sympy.expand(poly.coeff_monomial(t ** j)) for j in range(m + 1)]
