"""Exact classification of low-dimensional singularities by Mather-Jacobian
discrepancies: jet schemes, Newton polyhedra and the curve and surface
decision trees."""

__version__ = "0.1.0"

from .arith import ExtField, Q, UPoly
from .classify import (
    GermReport,
    Verdict,
    classify_curve_germ,
    classify_germ,
    classify_surface_germ,
    cone_criterion,
    emb_dim_at_origin,
)
from .groebner import Ideal, groebner_basis, ideal_dimension, tangent_cone
from .jets import jet_equations, jet_fiber_dim, mld_mixed_upper_bound, mld_upper_bound
from .kernels import BACKEND
from .newton import newton_nonlc_certificate, newton_polygon
from .normalforms import ade_recognize, e_series_invariants, split_off_squares
from .parser import parse_poly
from .poly import MultiPoly

__all__ = [
    "BACKEND", "ExtField", "GermReport", "Ideal", "MultiPoly", "Q", "UPoly", "Verdict",
    "ade_recognize", "classify_curve_germ", "classify_germ", "classify_surface_germ",
    "cone_criterion", "e_series_invariants", "emb_dim_at_origin", "groebner_basis",
    "ideal_dimension", "jet_equations", "jet_fiber_dim", "mld_mixed_upper_bound",
    "mld_upper_bound", "newton_nonlc_certificate", "newton_polygon", "parse_poly",
    "split_off_squares", "tangent_cone",
]
