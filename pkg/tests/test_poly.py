import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import P, XY, XYZ, X4, random_invertible
from mjsingular.arith import Q
from mjsingular.poly import (
    MultiPoly,
    binary_multiplicity_pattern,
    initial_form,
    is_perfect_cube_of_linear,
    jacobian_rank_at_origin,
    linear_change,
    mult_at_origin,
)

SY = sympy.symbols("x y z")


def to_sympy(f):
    gens = sympy.symbols(f.variables)
    return sympy.expand(sum(sympy.Rational(int(c.numerator), int(c.denominator))
                            * sympy.prod([g ** e for g, e in zip(gens, m)])
                            for m, c in f.terms.items()))


def terms_strategy(n=3, deg=4):
    mono = st.tuples(*[st.integers(0, deg)] * n)
    return st.dictionaries(mono, st.integers(-5, 5).filter(bool), max_size=6)


polys = terms_strategy().map(lambda t: MultiPoly(XYZ, t))


def test_mult_examples():
    assert mult_at_origin(P("x^2 + y^3", XY)) == 2
    assert mult_at_origin(MultiPoly.zero(XY)) == float("inf")
    assert mult_at_origin(P("x1*x3 - x2*x4", X4)) == 2


def test_initial_form_examples():
    assert initial_form(P("x^2 - y^3", XY)) == P("x^2", XY)
    assert initial_form(P("x^2 + y^2 + z^5")) == P("x^2 + y^2")
    assert initial_form(P("x1*x3 + x4^5", X4)) == P("x1*x3", X4)
    with pytest.raises(ValueError):
        initial_form(MultiPoly.zero(XY))


def test_linear_change_examples():
    assert linear_change(P("x*y", XY), [[1, 1], [1, -1]]) == P("x^2 - y^2", XY)
    f = P("x^3 - 2*x*y + 7", XY)
    assert linear_change(f, [[1, 0], [0, 1]]) == f
    assert linear_change(P("x^2", XY), [[0, 1], [1, 0]]) == P("y^2", XY)
    with pytest.raises(ValueError, match="non-invertible change"):
        linear_change(f, [[1, 1], [2, 2]])


def test_jacobian_rank_examples():
    assert jacobian_rank_at_origin([P("x*y"), P("y*z"), P("z*x")]) == 0
    assert jacobian_rank_at_origin([P("x", XY)]) == 1
    assert jacobian_rank_at_origin([P("x + y^2"), P("y + z^3")]) == 2


def test_binary_patterns():
    V = ("y", "z")
    assert binary_multiplicity_pattern(P("y^2*z", V)) == ((2, 1), (1, 1))
    assert binary_multiplicity_pattern(P("y^3", V)) == ((3, 1),)
    # y^4 + z^4: square-free, so four simple lines over the closure
    assert binary_multiplicity_pattern(P("y^4 + z^4", V)) == ((1, 1),) * 4


def test_perfect_cube():
    V = ("y", "z")
    ok, l = is_perfect_cube_of_linear(P("(y + 2*z)^3", V))
    assert ok and l == P("y + 2*z", V)
    assert not is_perfect_cube_of_linear(P("y^2*z", V))[0]
    assert not is_perfect_cube_of_linear(P("y^3 + z^3", V))[0]


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_ring_operations_match_sympy(f, g):
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
    assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))


@settings(max_examples=80, deadline=None)
@given(polys, polys, st.integers(0, 6))
def test_truncated_product(f, g, D):
    assert f.mul_trunc(g, D) == (f * g).truncate(D)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_derivative_matches_sympy(f):
    for i, s in enumerate(SY):
        assert to_sympy(f.diff(i)) == sympy.diff(to_sympy(f), s)


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 10 ** 6))
def test_linear_change_matches_sympy_and_inverts(f, seed):
    rng = random.Random(seed)
    M = random_invertible(3, rng)
    g = linear_change(f, M)
    sub = {s: sum(M[i][j] * SY[j] for j in range(3)) for i, s in enumerate(SY)}
    assert to_sympy(g) == sympy.expand(to_sympy(f).xreplace(sub))
    inv = sympy.Matrix(M).inv()
    back = linear_change(g, [[Q(str(inv[i, j])) for j in range(3)] for i in range(3)])
    assert back == f


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 10 ** 6))
def test_multiplicity_invariant_under_linear_change(f, seed):
    M = random_invertible(3, random.Random(seed))
    assert mult_at_origin(linear_change(f, M)) == mult_at_origin(f)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda t: t != (0, 0)),
                min_size=1, max_size=5))
def test_binary_pattern_of_product_of_lines(lines):
    V = ("y", "z")
    y, z = MultiPoly.gens(V)
    g = MultiPoly.constant(V, 1)
    for a, b in lines:
        g = g * (y * a + z * b)
    # oracle: group the lines by projective class
    classes = {}
    for a, b in lines:
        key = sympy.Rational(a, b) if b else "inf"
        classes[key] = classes.get(key, 0) + 1
    expected = tuple(sorted(((k, 1) for k in classes.values()), reverse=True))
    assert binary_multiplicity_pattern(g) == expected
