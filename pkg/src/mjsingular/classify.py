"""Decision trees for MJ-canonical and MJ-log-canonical germs of dimension
1 and 2, the cone criterion, and a corroborating dispatcher for higher
dimensions (jet bounds and Newton certificates only)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

from .curves import FAIL, PASS, ci_space_curve_nodal, plane_curve_nodal, space_curve_nodal
from .groebner import GroebnerLimitExceeded, Ideal, groebner_basis, ideal_dimension, local_dimension, projective_degree, tangent_cone
from .jets import jet_fiber_dim, mld_upper_bound
from .newton import NewtonCertificate, newton_nonlc_certificate
from .normalforms import DEFAULT_ORDER, Ord, ade_recognize, double_point_invariants, reduce_embedding
from .poly import MultiPoly, binary_multiplicity_pattern, jacobian_rank_at_origin


class Verdict(str, Enum):
    MJ_CANONICAL = "MJ_CANONICAL"
    MJ_LOG_CANONICAL_ONLY = "MJ_LOG_CANONICAL_ONLY"
    NOT_MJ_LOG_CANONICAL = "NOT_MJ_LOG_CANONICAL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def is_log_canonical(self) -> bool:
        return self in (Verdict.MJ_CANONICAL, Verdict.MJ_LOG_CANONICAL_ONLY)


MJ_CANONICAL = Verdict.MJ_CANONICAL
MJ_LOG_CANONICAL_ONLY = Verdict.MJ_LOG_CANONICAL_ONLY
NOT_MJ_LOG_CANONICAL = Verdict.NOT_MJ_LOG_CANONICAL
INCONCLUSIVE = Verdict.INCONCLUSIVE


@dataclass
class CertificateEntry:
    branch: str
    evidence: str

    def __str__(self) -> str:
        return f"{self.branch}: {self.evidence}"


def _jsonable(v):
    if isinstance(v, Ord):
        return v.to_json()
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return "inf" if v == float("inf") else v
    return str(v)


@dataclass
class GermReport:
    dim: int | None = None
    emb_dim: int | None = None
    mult: object = None
    invariants: dict = field(default_factory=dict)
    verdict: Verdict = Verdict.INCONCLUSIVE
    certificate: list = field(default_factory=list)

    def add(self, branch: str, evidence: str) -> None:
        self.certificate.append(CertificateEntry(branch, evidence))

    def conclude(self, verdict: Verdict, branch: str, evidence: str) -> "GermReport":
        self.add(branch, evidence)
        self.verdict = verdict
        return self

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "emb_dim": self.emb_dim,
            "mult": _jsonable(self.mult),
            "invariants": {k: _jsonable(v) for k, v in sorted(self.invariants.items())},
            "verdict": self.verdict.value,
            "certificate": [str(c) for c in self.certificate],
        }


def _check_origin(I: Ideal):
    for g in I.generators:
        if g.constant_term() != 0:
            raise ValueError("germ not at origin")


def emb_dim_at_origin(I: Ideal) -> int:
    """Embedding dimension N - rank of the Jacobian at the origin."""
    _check_origin(I)
    if not I.generators:
        return I.nvars
    return I.nvars - jacobian_rank_at_origin(I.generators)


def _hypersurface(I: Ideal, D: int):
    """(f, exact) for a germ of embedding dimension dim + 1, or (None, _)."""
    red = reduce_embedding(I, D)
    gens = red.generators
    if len(gens) == 1:
        return gens[0], red.exact
    if red.exact and gens:
        gb = groebner_basis(Ideal(gens, red.variables))
        if len(gb) == 1:
            return gb.polys[0], True
    return None, red.exact


# --- dimension 1 -----------------------------------------------------------------


def classify_curve_germ(I: Ideal, D: int = DEFAULT_ORDER) -> GermReport:
    """Curves: MJ-canonical iff smooth, MJ-log canonical iff smooth or an
    ordinary node."""
    _check_origin(I)
    rep = GermReport()
    try:
        rep.dim = local_dimension(I)
        if rep.dim != 1:
            raise ValueError(f"dimension must be 1, got {rep.dim}")
        e = rep.emb_dim = emb_dim_at_origin(I)
        if e >= 3:
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "emb", f"emb = {e} > 2d = 2")
        if e <= 1:
            rep.mult = 1
            return rep.conclude(MJ_CANONICAL, "1dim", "non-singular")
        f, _exact = _hypersurface(I, D)
        if f is None:
            return rep.conclude(INCONCLUSIVE, "1dim", "could not reduce to a plane curve equation")
        m = f.mult_at_origin()
        rep.mult = m
        if m == 2:
            pat = binary_multiplicity_pattern(f.initial_form())
            rep.invariants["tangent_pattern"] = pat
            if pat == ((1, 1), (1, 1)):
                return rep.conclude(MJ_LOG_CANONICAL_ONLY, "1dim", "ordinary node")
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "1dim", "double point with a double tangent")
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "1dim", f"multiplicity {m} > 2")
    except GroebnerLimitExceeded as exc:
        return rep.conclude(INCONCLUSIVE, "groebner", str(exc))


# --- dimension 2 -----------------------------------------------------------------


def _surface_hyp3(rep: GermReport, f: MultiPoly, D: int, exact: bool = True) -> GermReport:
    m = f.mult_at_origin()
    rep.mult = m
    if m >= 4:
        fd = jet_fiber_dim(Ideal([f], f.variables), 3)
        term = 4 * 2 - fd
        if term >= 0:
            raise AssertionError("multiplicity >= 4 without a negative level-3 jet term")
        rep.invariants["jet_level3_term"] = term
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "hyp3",
                            f"mult {m} >= 4; jet level 3: fiber dim {fd}, bound {term}")
    if m == 3:
        v = plane_curve_nodal(f.initial_form())
        rep.invariants["tangent_cone_nodal"] = v.status
        if v.passed:
            return rep.conclude(MJ_LOG_CANONICAL_ONLY, "hyp3(i)",
                                "mult 3, projective tangent cone reduced with at worst ordinary nodes")
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "hyp3(i)",
                            f"mult 3, projective tangent cone fails: {v.reason}")
    if D < 8:
        raise ValueError("truncation order D must be at least 8 for double points")
    inv = double_point_invariants(f, D)
    rep.invariants["tau"] = inv.tau
    lc = None
    if inv.tau >= 2:
        lc = ("hyp3(ii)(a)", "x^2 + y^2 + g(z)")
    else:
        rep.invariants["m2"] = inv.m2
        m2 = inv.m2
        if isinstance(m2, Ord) or m2 >= 5:
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "hyp3(ii)", f"tau = 1, m2 = {m2} >= 5")
        rep.invariants["tau2"] = inv.tau2
        rep.invariants["pattern"] = inv.pattern
        if m2 == 4:
            if max(k for k, _ in inv.pattern) <= 2:
                lc = ("hyp3(ii)(d)", f"quartic pattern {list(inv.pattern)}")
            else:
                return rep.conclude(NOT_MJ_LOG_CANONICAL, "hyp3(ii)(d)",
                                    "quartic has a linear factor of multiplicity > 2")
        elif inv.tau2 == 2:
            lc = ("hyp3(ii)(b)", "cubic is not a cube of a linear form")
        else:
            if D < 12:
                raise ValueError("truncation order D must be at least 12 for the cube branch")
            a, b = inv.alpha, inv.beta
            rep.invariants["alpha"] = a
            rep.invariants["beta"] = b
            if a.le(4) or b.le(6):
                lc = ("hyp3(ii)(c)", f"alpha = {a}, beta = {b}")
            else:
                return rep.conclude(NOT_MJ_LOG_CANONICAL, "hyp3(ii)(c)",
                                    f"alpha = {a} > 4 and beta = {b} > 6")
    rep.add(*lc)
    ade = ade_recognize(f, D, exact)
    rep.invariants["ade"] = str(ade)
    if ade.label:
        return rep.conclude(MJ_CANONICAL, "rdp", ade.label)
    if ade.undetermined:
        return rep.conclude(INCONCLUSIVE, "rdp", "log canonical; ADE type undetermined at order D")
    return rep.conclude(MJ_LOG_CANONICAL_ONLY, "rdp", f"not a rational double point ({ade.detail or 'NONE'})")


def _quadric_candidates(basis: list[MultiPoly], bound: int):
    """Small-integer combinations of a basis, one per projective class,
    simplest first."""
    k = len(basis)
    vecs = []
    for c in product(range(-bound, bound + 1), repeat=k):
        nz = [x for x in c if x]
        if not nz or nz[0] < 0:
            continue
        vecs.append(c)
    vecs.sort(key=lambda c: (sum(1 for x in c if x), sum(abs(x) for x in c), c))
    out = []
    for c in vecs:
        p = MultiPoly.zero(basis[0].variables)
        for x, q in zip(c, basis):
            if x:
                p = p + q * x
        out.append((c, p))
    return out


def _search_ci(basis, bound: int, max_pairs: int, seed: int):
    cands = _quadric_candidates(basis, bound)
    tried = 0
    pairs = sorted(combinations(range(len(cands)), 2), key=lambda ij: (ij[0] + ij[1], ij))
    for i, j in pairs:
        (_, p), (_, q) = cands[i], cands[j]
        tried += 1
        if tried > max_pairs:
            break
        if ideal_dimension(Ideal([p, q], p.variables)) != 2:
            continue
        v = ci_space_curve_nodal(p, q, seed)
        if v.passed:
            return (p, q), tried
    return None, tried


def _tangent_cone_ci_pair(tc: Ideal, q2: list[MultiPoly]):
    """The two quadrics when they form a regular sequence generating tc."""
    if len(q2) != 2 or ideal_dimension(Ideal(q2, tc.variables)) != 2:
        return None
    gb = groebner_basis(Ideal(q2, tc.variables))
    if all(gb.contains(g) for g in tc.generators):
        return q2[0], q2[1]
    return None


def _surface_emb4(rep: GermReport, I: Ideal, D: int, search_bound: int, max_pairs: int,
                  seed: int) -> GermReport:
    red = reduce_embedding(I, D)
    if not red.exact:
        return rep.conclude(INCONCLUSIVE, "emb4", "embedding reduction is not exact at order D")
    I4 = Ideal(red.generators, red.variables)
    tc = tangent_cone(I4)
    gens = tc.generators
    q2 = [g for g in gens if g.total_degree() == 2]
    rep.mult = projective_degree(tc)[1]
    rep.invariants["tangent_cone"] = [g.to_str() for g in gens]
    ci_pair = _tangent_cone_ci_pair(tc, q2)
    rep.invariants["complete_intersection"] = ci_pair is not None
    if ci_pair is not None:
        v = ci_space_curve_nodal(ci_pair[0], ci_pair[1], seed)
        rep.invariants["E_X"] = v.status
        if v.status == PASS:
            return rep.conclude(MJ_LOG_CANONICAL_ONLY, "ci(i)",
                                "complete intersection of two quadrics; E_X reduced with ordinary nodes")
        if v.status == FAIL:
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "ci(i)", f"E_X fails: {v.reason}")
        return rep.conclude(INCONCLUSIVE, "ci(i)", v.reason)
    # non complete intersection: necessary conditions first
    fd2 = jet_fiber_dim(I4, 2)
    term2 = 3 * 2 - fd2
    rep.invariants["jet_level2_term"] = term2
    if term2 < 0:
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "jets", f"jet level 2: bound {term2}")
    if len(q2) < 2 or ideal_dimension(Ideal(q2, tc.variables)) > 2:
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "emb4(i)",
                            "tangent-cone quadrics contain no regular sequence")
    v = space_curve_nodal(gens, seed)
    rep.invariants["E_X"] = v.status
    if v.status == FAIL:
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "emb4(ii)", f"E_X fails: {v.reason}")
    if v.status != PASS:
        return rep.conclude(INCONCLUSIVE, "emb4(ii)", v.reason)
    pdim, deg = projective_degree(tc)
    rep.invariants["deg_E_X"] = deg
    if deg > 3:
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "ci(ii)", f"deg E_X = {deg} > 3 for a non complete intersection")
    pair, tried = _search_ci(q2, search_bound, max_pairs, seed)
    if pair is None:
        return rep.conclude(INCONCLUSIVE, "ci(ii)",
                            f"necessary conditions hold; no nodal quadric pair among {tried} tried")
    p, q = pair
    rep.invariants["ci_pair"] = [p.to_str(), q.to_str()]
    return rep.conclude(MJ_LOG_CANONICAL_ONLY, "ci(ii)",
                        f"contained in the nodal complete intersection ({p.to_str()}, {q.to_str()})")


def classify_surface_germ(I: Ideal, D: int = DEFAULT_ORDER, search_bound: int = 2,
                          max_pairs: int = 4000, seed: int = 0) -> GermReport:
    """Surfaces: smooth, hypersurface (emb 3), emb 4 and the emb bound."""
    _check_origin(I)
    rep = GermReport()
    try:
        rep.dim = local_dimension(I)
        if rep.dim != 2:
            raise ValueError(f"dimension must be 2, got {rep.dim}")
        e = rep.emb_dim = emb_dim_at_origin(I)
        if e <= 2:
            rep.mult = 1
            return rep.conclude(MJ_CANONICAL, "rdp", "non-singular")
        if e >= 5:
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "emb", f"emb = {e} > 2d = 4")
        if e == 4:
            return _surface_emb4(rep, I, D, search_bound, max_pairs, seed)
        f, exact = _hypersurface(I, D)
        if f is None:
            return rep.conclude(INCONCLUSIVE, "hyp3", "could not reduce to a single equation")
        return _surface_hyp3(rep, f, D, exact)
    except GroebnerLimitExceeded as exc:
        return rep.conclude(INCONCLUSIVE, "groebner", str(exc))


# --- any dimension ------------------------------------------------------------------


def newton_applicable(I: Ideal) -> bool:
    """Newton certificates only for one exact generator in A^(d+1)."""
    return len(I.generators) == 1


def classify_germ(I: Ideal, D: int = DEFAULT_ORDER, levels: int | None = None,
                  search_bound: int = 2, seed: int = 0) -> GermReport:
    """Dispatch on the local dimension; dimension >= 3 uses only the
    one-directional jet and Newton certificates."""
    _check_origin(I)
    try:
        d = local_dimension(I)
    except GroebnerLimitExceeded as exc:
        return GermReport().conclude(INCONCLUSIVE, "groebner", str(exc))
    if d <= 0:
        raise ValueError("germ has dimension 0")
    if d == 1:
        return classify_curve_germ(I, D)
    if d == 2:
        return classify_surface_germ(I, D, search_bound, seed=seed)
    rep = GermReport(dim=d)
    rep.emb_dim = emb_dim_at_origin(I)
    if rep.emb_dim > 2 * d:
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "emb", f"emb = {rep.emb_dim} > 2d = {2 * d}")
    try:
        b = mld_upper_bound(I, d, levels or 3)
    except GroebnerLimitExceeded as exc:
        return rep.conclude(INCONCLUSIVE, "groebner", str(exc))
    if b.certified_minus_infinity:
        n, fd, term = b.terms[-1]
        return rep.conclude(NOT_MJ_LOG_CANONICAL, "jets", f"jet level {n}: bound {term}")
    if newton_applicable(I) and I.nvars == d + 1:
        cert = newton_nonlc_certificate(I.generators[0])
        if cert is NewtonCertificate.NOT_LC:
            return rep.conclude(NOT_MJ_LOG_CANONICAL, "newton", "1 is not in the Newton polyhedron")
    return rep.conclude(INCONCLUSIVE, "jets", f"no certificate up to level {levels or 3}")


# --- cones ------------------------------------------------------------------------


def cone_criterion(N: int, d: int, a: int) -> tuple[bool, bool]:
    """(canonical, log_canonical) for the cone over a smooth projectively
    normal base cut out by forms of degree a."""
    for name, v in (("N", N), ("d", d), ("a", a)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"{name} must be an integer")
    if not (1 <= d < N):
        raise ValueError("need 1 <= d < N")
    if a < 1:
        raise ValueError("need a >= 1")
    return a * (N - d) <= N - 1, a * (N - d) <= N
