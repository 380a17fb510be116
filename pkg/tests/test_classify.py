import pytest

from helpers import CAN, INC, LC, NOT, SUITE, X4, XY, ideal, suite_ideal
from mjsingular.classify import (
    Verdict,
    classify_curve_germ,
    classify_germ,
    classify_surface_germ,
    cone_criterion,
    emb_dim_at_origin,
)
from mjsingular.jets import mld_upper_bound
from mjsingular.newton import NewtonCertificate, newton_nonlc_certificate
from mjsingular.normalforms import ade_recognize


def branches(rep):
    return [c.branch for c in rep.certificate]


def test_emb_dim_examples():
    assert emb_dim_at_origin(ideal(["x*y", "y*z", "z*x"])) == 3
    assert emb_dim_at_origin(ideal(["x^2 - y^3"], XY)) == 2
    assert emb_dim_at_origin(ideal(["y - x^2"], XY)) == 1


def test_curve_examples():
    rep = classify_curve_germ(ideal(["x*y"], XY))
    assert rep.verdict == Verdict.MJ_LOG_CANONICAL_ONLY and branches(rep) == ["1dim"]
    assert "ordinary node" in str(rep.certificate[0])
    assert classify_curve_germ(ideal(["x^2 - y^3"], XY)).verdict == Verdict.NOT_MJ_LOG_CANONICAL
    rep = classify_curve_germ(ideal(["x*y", "y*z", "z*x"]))
    assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL and branches(rep) == ["emb"]


def test_surface_examples():
    rep = classify_surface_germ(ideal(["x^2 + y^2*z"]))
    assert rep.verdict == Verdict.MJ_LOG_CANONICAL_ONLY
    assert "hyp3(ii)(b)" in branches(rep)
    assert ade_recognize(ideal(["x^2 + y^2*z"]).generators[0]).label is None
    rep = classify_surface_germ(ideal(["x^2 + y^3 + z^7"]))
    assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL and "hyp3(ii)(c)" in branches(rep)
    assert newton_nonlc_certificate(ideal(["x^2 + y^3 + z^7"]).generators[0]) == NewtonCertificate.NOT_LC
    rep = classify_surface_germ(ideal(["x1*x3", "x2*x4"], X4))
    assert rep.verdict == Verdict.MJ_LOG_CANONICAL_ONLY and "ci(i)" in branches(rep)


def test_rdp_certificate_names_the_type():
    rep = classify_germ(ideal(["x^2 + y^2 + z^3"]))
    assert rep.verdict == Verdict.MJ_CANONICAL
    assert str(rep.certificate[-1]) == "rdp: A2"


def test_terminal_certificate():
    from helpers import TERMINAL, X6
    rep = classify_germ(ideal(TERMINAL, X6))
    assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL
    assert str(rep.certificate[-1]) == "jets: jet level 2: bound -1"


def test_errors():
    with pytest.raises(ValueError, match="germ not at origin"):
        classify_germ(ideal(["x - 1", "y"], XY))
    with pytest.raises(ValueError):
        classify_germ(ideal(["x", "y"], XY))
    with pytest.raises(ValueError):
        classify_surface_germ(ideal(["x*y"], XY))


def test_cone_criterion():
    assert cone_criterion(4, 3, 2) == (True, True)
    assert cone_criterion(12, 6, 2) == (False, True)
    assert cone_criterion(16, 7, 2) == (False, False)
    with pytest.raises(ValueError):
        cone_criterion(3, 3, 2)
    with pytest.raises(ValueError):
        cone_criterion(4, 3, 0)


@pytest.mark.parametrize("case", SUITE, ids=[c[0] for c in SUITE])
def test_suite_verdicts_and_soundness(case):
    I = suite_ideal(case)
    rep = classify_germ(I)
    expected = case[3]
    if expected is not None:
        assert rep.verdict.value == expected
    if rep.verdict != Verdict.INCONCLUSIVE:
        assert rep.certificate
    d = rep.dim
    if len(I.generators) == 1 and I.nvars == d + 1:
        cert = newton_nonlc_certificate(I.generators[0])
        if cert == NewtonCertificate.NOT_LC:
            assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL
        if cert == NewtonCertificate.NOT_CANONICAL:
            assert rep.verdict != Verdict.MJ_CANONICAL
        if d == 2 and I.generators[0].mult_at_origin() == 2:
            if ade_recognize(I.generators[0]).label:
                assert rep.verdict == Verdict.MJ_CANONICAL
    if d in (1, 2):
        b = mld_upper_bound(I, d, 3 if d == 2 else 5)
        if b.certified_minus_infinity:
            assert rep.verdict == Verdict.NOT_MJ_LOG_CANONICAL
        if rep.verdict == Verdict.MJ_CANONICAL:
            assert b.value >= 1 or d == 1


def test_verdict_labels():
    assert {CAN, LC, NOT, INC} == {v.value for v in Verdict}
    assert Verdict.MJ_CANONICAL.is_log_canonical()
    assert not Verdict.INCONCLUSIVE.is_log_canonical()
