"""Finite-order normal forms for double points: splitting off squares,
invariants of the E-series and D-series, ADE recognition, and the
reduction of an ideal to a minimal embedding."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import ONE, ZERO, Q
from .groebner import Ideal, dimension_from_leading_monomials, groebner_basis, standard_monomials, tangent_cone
from .linalg import inverse, row_echelon
from .poly import (
    MultiPoly,
    binary_multiplicity_pattern,
    double_and_simple_lines,
    is_perfect_cube_of_linear,
    linear_part_matrix,
)

DEFAULT_ORDER = 12


@dataclass(frozen=True)
class Ord:
    """An order of vanishing: exact, or only known to be at least ``value``."""

    value: int
    exact: bool = True

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"

    def to_json(self):
        return self.value if self.exact else f">={self.value}"

    def le(self, k: int):
        if self.exact:
            return self.value <= k
        return False if self.value > k else None

    def eq(self, k: int):
        if self.exact:
            return self.value == k
        return False if self.value > k else None

    def ge(self, k: int):
        if self.exact:
            return self.value >= k
        return True if self.value >= k else None


def _order(p: MultiPoly, unknown_from: int) -> Ord:
    if not p:
        return Ord(unknown_from, exact=False)
    return Ord(int(p.mult_at_origin()))


def _single(variables, i, c=ONE):
    return MultiPoly.var(variables, i) * c


def _linear_images(variables, matrix):
    gens = MultiPoly.gens(variables)
    out = []
    for row in matrix:
        img = MultiPoly.zero(variables)
        for j, a in enumerate(row):
            if a:
                img = img + gens[j] * a
        out.append(img)
    return out


# --- splitting lemma -----------------------------------------------------------


@dataclass
class SplitResult:
    tau: int
    residual: MultiPoly
    D: int
    exact: bool
    pivots: tuple = ()
    coefficients: tuple = ()

    @property
    def residual_order(self) -> Ord:
        return _order(self.residual, self.D + 1)


def _shift(g: MultiPoly, v: int, image: MultiPoly, D: int) -> MultiPoly:
    """g with x_v replaced by image, truncated above degree D."""
    parts = g.split_by_power(v)
    out = parts.get(0, MultiPoly.zero(g.variables))
    power = MultiPoly.constant(g.variables, 1)
    for k in range(1, max(parts) + 1):
        power = power.mul_trunc(image, D)
        a = parts.get(k)
        if a:
            out = out + a.mul_trunc(power, D)
    return out


def _split(f: MultiPoly, D: int) -> SplitResult:
    n = f.nvars
    exact = f.total_degree() <= D
    g = f.truncate(D)
    gens = MultiPoly.gens(f.variables)
    free = list(range(n))
    pivots: list[tuple[int, object]] = []

    def mono2(i, j):
        m = [0] * n
        m[i] += 1
        m[j] += 1
        return tuple(m)

    while True:
        q = g.homogeneous_part(2)
        i = next((i for i in free if q.coefficient(mono2(i, i))), None)
        if i is None:
            pair = next(((a, b) for a in free for b in free
                         if a < b and q.coefficient(mono2(a, b))), None)
            if pair is None:
                break
            a, b = pair
            images = list(gens)
            images[b] = gens[b] + gens[a]
            g = g.substitute(images)
            continue
        c = q.coefficient(mono2(i, i))
        images = list(gens)
        shift = MultiPoly.zero(f.variables)
        for j in free:
            if j != i:
                b = q.coefficient(mono2(i, j))
                if b:
                    shift = shift + gens[j] * (b / (2 * c))
        if shift:
            images[i] = gens[i] - shift
            g = g.substitute(images)
        pivots.append((i, c))
        free.remove(i)

    # remove terms linear in a pivot, order by order
    for _ in range(D + 2):
        changed = False
        for v, c in pivots:
            f1 = g.split_by_power(v).get(1)
            if not f1:
                continue
            changed = True
            exact = False
            g = _shift(g, v, gens[v] - f1 * (ONE / (2 * c)), D)
        if not changed:
            break
    else:
        raise RuntimeError("square splitting did not stabilize")
    images = list(gens)
    for v, _ in pivots:
        images[v] = MultiPoly.zero(f.variables)
    residual = g.substitute(images).reorder([f.variables[j] for j in free]) if free else \
        MultiPoly.zero(())
    return SplitResult(len(pivots), residual, D, exact,
                       tuple(f.variables[v] for v, _ in pivots), tuple(c for _, c in pivots))


def split_off_squares(f: MultiPoly, D: int = DEFAULT_ORDER) -> SplitResult:
    """Write f = (sum of tau squares) + residual in the remaining variables,
    modulo degree D + 1, by rational diagonalization of the quadratic part
    and iterated completion of squares."""
    if D < 8:
        raise ValueError("truncation order D must be at least 8")
    if f.mult_at_origin() != 2:
        raise ValueError("multiplicity must be 2")
    return _split(f, D)


# --- E-series --------------------------------------------------------------------


def _to_first_coordinate(g: MultiPoly, l: MultiPoly) -> MultiPoly:
    """Linear change of a binary form so that the linear form l becomes y."""
    a = l.coefficient((1, 0))
    b = l.coefficient((0, 1))
    y, z = MultiPoly.gens(g.variables)
    if a:
        # Y = a y + b z, Z = z  =>  y = (Y - b Z) / a
        return g.substitute([(y - z * b) * (ONE / a), z])
    return g.substitute([z, y])


def _series_inverse(u: MultiPoly, D: int) -> MultiPoly:
    c = u.constant_term()
    w = MultiPoly.constant(u.variables, 1) - u * (ONE / c)
    acc = MultiPoly.constant(u.variables, 1)
    term = MultiPoly.constant(u.variables, 1)
    for _ in range(D):
        term = term.mul_trunc(w, D)
        if not term:
            break
        acc = acc + term
    return acc * (ONE / c)


def weierstrass_cubic(g: MultiPoly, D: int) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """For g with initial form c*y^3: (a2, a1, a0) in z with
    g = unit * (y^3 + a2 y^2 + a1 y + a0) modulo degree D + 1."""
    y, z = MultiPoly.gens(g.variables)
    c = g.coefficient((3, 0))
    g = g.truncate(D) * (ONE / c)
    gy0 = MultiPoly(g.variables, {m: v for m, v in g.terms.items() if m[1] == 0})
    u = MultiPoly(g.variables, {(m[0] - 3, 0): v for m, v in gy0.terms.items()})
    uinv = _series_inverse(u, D)
    E = g - gy0
    h = y ** 3
    r = MultiPoly.zero(g.variables)
    for _ in range(D + 2):
        if not h:
            break
        R0 = MultiPoly(g.variables, {m: v for m, v in h.terms.items() if m[0] < 3})
        Q0 = MultiPoly(g.variables, {(m[0] - 3, m[1]): v for m, v in h.terms.items() if m[0] >= 3})
        q = Q0.mul_trunc(uinv, D - 3)
        r = r + R0
        h = -(q.mul_trunc(E, D))
    else:
        raise RuntimeError("Weierstrass division did not terminate")
    parts = r.split_by_power(0)
    zvars = (g.variables[1],)

    def coeff(i):
        p = parts.get(i, MultiPoly.zero(g.variables))
        return -p.reorder(zvars).truncate(D - i)

    return coeff(2), coeff(1), coeff(0)


def e_series_invariants(g: MultiPoly, D: int = DEFAULT_ORDER) -> tuple[Ord, Ord]:
    """(alpha, beta) = orders of the depressed coefficients a1, a0 of the
    Weierstrass cubic of g, whose initial form is a perfect cube."""
    if g.nvars != 2:
        raise ValueError("wrong variable count: need a binary series")
    if D < 12:
        raise ValueError("truncation order D must be at least 12")
    if g.mult_at_origin() != 3:
        raise ValueError("multiplicity must be 3")
    ok, l = is_perfect_cube_of_linear(g.initial_form())
    if not ok:
        raise ValueError("initial cubic is not a perfect cube")
    g2 = _to_first_coordinate(g.truncate(D), l)
    a2, a1, a0 = weierstrass_cubic(g2, D)
    third = Q(1, 3)
    a1d = (a1 - a2 * a2 * third).truncate(D - 1)
    a0d = (a0 - a1 * a2 * third + a2 * a2 * a2 * Q(2, 27)).truncate(D)
    return _order(a1d, D), _order(a0d, D + 1)


# --- D-series --------------------------------------------------------------------


def d_series_index(g: MultiPoly, D: int = DEFAULT_ORDER) -> tuple[Ord, bool]:
    """Index k of the D_k type of a binary series whose initial cubic is
    l1^2 * l2 (distinct lines); returns (k, definite_non_isolated).

    The cubic's two factors lift to g = L * Q with in(L) = l2, in(Q) = l1^2;
    in the coordinate L, splitting a square off Q leaves psi(L) and
    k = ord(psi) + 2.
    """
    cubic = g.initial_form()
    l1, l2 = double_and_simple_lines(cubic)
    M = [[l1.coefficient((1, 0)), l1.coefficient((0, 1))],
         [l2.coefficient((1, 0)), l2.coefficient((0, 1))]]
    exact_in = g.total_degree() <= D
    g2 = g.truncate(D).substitute(_linear_images(g.variables, inverse(M)))
    c = g2.coefficient((2, 1))
    g2 = g2 * (ONE / c)
    V = g.variables
    Y, Z = MultiPoly.gens(V)
    L = {1: Z}
    Qp = {2: Y * Y}
    for d in range(4, D + 1):
        R = g2.homogeneous_part(d)
        for i in range(2, d - 2):
            R = R - L[i] * Qp[d - i]
        qa, lb = {}, {}
        for m, v in R.terms.items():
            if m[1] >= 1:
                qa[(m[0], m[1] - 1)] = v
            else:
                lb[(m[0] - 2, 0)] = v
        Qp[d - 1] = MultiPoly(V, qa)
        L[d - 2] = MultiPoly(V, lb)
    Lhi = MultiPoly.zero(V)
    for i in range(2, D - 1):
        Lhi = Lhi + L[i]
    Qfull = MultiPoly.zero(V)
    for j in range(2, D):
        Qfull = Qfull + Qp[j]
    # exact factorization with L - Z free of Z: the coordinate change inverts exactly
    z_free = all(m[1] == 0 for m in Lhi.terms)
    definite = exact_in and z_free and ((Z + Lhi) * Qfull) == g2
    # invert Z' = Z + Lhi(Y, Z)
    zimg = Z
    if Lhi:
        for _ in range(D + 1):
            nxt = Z - Lhi.substitute([Y, zimg], maxdeg=D)
            if nxt == zimg:
                break
            zimg = nxt
    Qt = Qfull.substitute([Y, zimg], maxdeg=D - 1)
    if definite:
        definite = Qfull.substitute([Y, Z - Lhi]) == Qt
    s = _split(Qt, D - 1)
    if s.tau != 1:
        raise RuntimeError("D-series lift lost the double line")
    psi = s.residual
    definite = definite and s.exact
    if not psi:
        return Ord(D + 2, exact=False), definite
    return Ord(int(psi.mult_at_origin()) + 2), False


# --- ADE -------------------------------------------------------------------------


@dataclass
class ADEResult:
    label: str | None  # "A3", "D5", "E6", ... ; None means not ADE
    undetermined: bool = False
    detail: str = ""

    def __str__(self) -> str:
        if self.label:
            return self.label
        return "NONE (undetermined at order D)" if self.undetermined else "NONE"


@dataclass
class DoublePointInvariants:
    """tau, m2, tau2 and the cubic data of a double point x^2 + g."""

    tau: int
    split: SplitResult
    m2: object = None  # int, or Ord when undetermined
    tau2: int | None = None
    pattern: tuple | None = None
    alpha: Ord | None = None
    beta: Ord | None = None


def double_point_invariants(f: MultiPoly, D: int = DEFAULT_ORDER) -> DoublePointInvariants:
    s = split_off_squares(f, D)
    inv = DoublePointInvariants(s.tau, s)
    if s.tau != f.nvars - 2:
        return inv
    g = s.residual
    if not g:
        inv.m2 = Ord(D + 1, exact=False)
        return inv
    inv.m2 = int(g.mult_at_origin())
    ing = g.initial_form()
    inv.pattern = binary_multiplicity_pattern(ing)
    inv.tau2 = 1 if inv.pattern == ((inv.m2, 1),) else 2
    if inv.m2 == 3 and inv.tau2 == 1 and D >= 12:
        inv.alpha, inv.beta = e_series_invariants(g, D)
    return inv


def ade_recognize(f: MultiPoly, D: int = DEFAULT_ORDER, exact: bool = True) -> ADEResult:
    """ADE type of the surface double point f = 0 in three variables.

    ``exact=False`` means f is only known up to degree D.  When the
    truncated normal form leaves the type open, the Milnor number settles
    it: infinite means non-isolated, otherwise it is the index (for a jet,
    only when mu + 1 <= D, so that the jet determines the germ)."""
    res = _ade_truncated(f, D, exact)
    if not res.undetermined:
        return res
    family = res.detail.split(":", 1)[0]
    mu = milnor_number(f.truncate(D) if not exact else f)
    if not exact and (mu is None or mu + 1 > D):
        return res
    if mu is None:
        return ADEResult(None, detail="non-isolated singularity")
    if family == "E" and mu not in (6, 7, 8):
        return ADEResult(None, detail=f"cube residual with Milnor number {mu}")
    return ADEResult(f"{family}{mu}")


def _ade_truncated(f: MultiPoly, D: int, exact: bool = True) -> ADEResult:
    if f.nvars != 3:
        raise ValueError("wrong variable count: need 3 variables")
    if f.mult_at_origin() != 2:
        raise ValueError("multiplicity must be 2")
    inv = double_point_invariants(f, D)
    s = inv.split
    if s.tau == 3:
        return ADEResult("A1")
    if s.tau == 2:
        g = s.residual
        if not g:
            return ADEResult(None, undetermined=not (s.exact and exact),
                             detail="A: residual vanishes to order D")
        return ADEResult(f"A{int(g.mult_at_origin()) - 1}")
    if s.tau < 2 and f.nvars - s.tau > 2:
        return ADEResult(None, detail="corank at least 3")
    if isinstance(inv.m2, Ord):
        # the residual has order > D >= 8, beyond any ADE type
        return ADEResult(None, detail=f"m2 = {inv.m2}")
    if inv.m2 >= 4:
        return ADEResult(None, detail=f"m2 = {inv.m2}")
    pat = inv.pattern
    if pat == ((1, 1), (1, 1), (1, 1)):
        return ADEResult("D4")
    if pat == ((2, 1), (1, 1)):
        k, definite = d_series_index(s.residual, D)
        if not k.exact:
            if definite and s.exact and exact:
                return ADEResult(None, detail="non-isolated singularity")
            return ADEResult(None, undetermined=True, detail=f"D: index {k}")
        return ADEResult(f"D{k.value}")
    a, b = inv.alpha, inv.beta
    if a is None:
        raise ValueError("truncation order D must be at least 12 for the E-series")
    if b.eq(4):
        return ADEResult("E6")
    if a.eq(3) and b.ge(5):
        return ADEResult("E7")
    if a.ge(4) and b.eq(5):
        return ADEResult("E8")
    decided = [b.eq(4), a.eq(3) and b.ge(5), a.ge(4) and b.eq(5)]
    undetermined = any(x is None for x in (b.eq(4), a.eq(3), b.ge(5), a.ge(4), b.eq(5)))
    return ADEResult(None, undetermined=undetermined and not all(x is False for x in decided),
                     detail=f"E: alpha={a}, beta={b}")


def milnor_number(f: MultiPoly) -> int | None:
    """Local Milnor number at the origin (None if not isolated)."""
    J = [p for p in f.gradient() if p]
    if not J:
        return None
    if any(p.constant_term() != 0 for p in J):
        return 0
    tc = tangent_cone(Ideal(J, f.variables))
    gb = groebner_basis(tc)
    if dimension_from_leading_monomials(gb.leading_monomials, f.nvars) > 0:
        return None
    return len(standard_monomials(gb))


# --- embedding reduction --------------------------------------------------------


@dataclass
class Reduction:
    variables: tuple
    generators: list
    exact: bool
    eliminated: tuple = ()


def _exact_substitute(p: MultiPoly, images, D: int):
    """(p o images, exact flag): exact when the untruncated degree is small
    enough to compute outright."""
    bound = max(0, p.total_degree()) * max([1] + [max(0, q.total_degree()) for q in images])
    if bound <= 4 * D:
        return p.substitute(images), True
    return p.substitute(images, maxdeg=D), False


def reduce_embedding(I: Ideal, D: int = DEFAULT_ORDER) -> Reduction:
    """Eliminate the variables solved by the linear parts of the generators;
    what remains is an ideal in emb-dim many variables."""
    gens = I.generators
    for g in gens:
        if g.constant_term() != 0:
            raise ValueError("germ not at origin")
    V = I.variables
    n = len(V)
    if not gens:
        return Reduction(V, [], True)
    r = len(gens)
    lin = linear_part_matrix(gens)
    aug = [row + [ONE if i == k else ZERO for k in range(r)] for i, row in enumerate(lin)]
    red, piv = row_echelon(aug)
    pivots = [p for p in piv if p < n]
    T = [row[n:] for row in red]
    comb = []
    for row in T:
        p = MultiPoly.zero(V)
        for k, a in enumerate(row):
            if a:
                p = p + gens[k] * a
        comb.append(p)
    if not pivots:
        return Reduction(V, list(gens), True)
    X = MultiPoly.gens(V)
    phi = {p: X[p] - comb[i] for i, p in enumerate(pivots)}
    images = list(X)
    for _ in range(D + 2):
        new = list(images)
        for p in pivots:
            new[p] = phi[p].substitute(images, maxdeg=D)
        if new == images:
            break
        images = new
    # an image reaching degree D is almost surely an infinite series; claiming
    # inexactness is always safe, so skip the costly untruncated check
    exact = all(images[p].total_degree() < D for p in pivots)
    for p in pivots:
        if not exact:
            break
        val, ok = _exact_substitute(phi[p], images, D)
        if not ok or val != images[p]:
            exact = False
    keep = [v for j, v in enumerate(V) if j not in pivots]
    rest = []
    for p in comb[len(pivots):]:
        if not p:
            continue
        if exact:
            val, ok = _exact_substitute(p, images, D)
            exact = ok
        else:
            val = p.substitute(images, maxdeg=D)
        if val:
            rest.append(val.reorder(keep))
    return Reduction(tuple(keep), rest, exact, tuple(V[p] for p in pivots))
