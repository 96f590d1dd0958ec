"""Exact-arithmetic toric engine for 3-fold divisorial contractions.

The package computes weighted blowups over three kinds of toric germs
(smooth points, terminal cyclic quotients, the ordinary double point),
extracts the induced exceptional surface and curve geometry, verifies
the discrepancy conditions that single out the classified families, and
renders the resulting contraction reports and dual-graph diagrams.
"""

from .classifier import (
    ContractionType,
    build_report,
    check_conditions,
    closed_form_gamma_tilde_sq,
    du_val_recognize,
    enumerate_types,
    gamma_tilde_sq,
    parse_type,
)
from .discrepancy import (
    MonomialBranch,
    MonomialDivisorSpec,
    is_canonical_pair_toric,
    lc_decompose_2d,
    nonplt_bound,
    parse_boundary,
    toric_log_discrepancy_minus_one,
)
from .exactmath import Rational
from .fan import Cone, Fan, fan_from_json, germ_fan, star_subdivide, star_surface
from .germs import GermSpec, blowup_ray, parse_germ
from .quotient import (
    CyclicQuotientType,
    cone_to_quotient,
    quotient_2d,
    reid_tai_classify,
    verify_terminal_lemma,
)
from .surface import gamma_tilde_sq_star, gamma_tilde_sq_wpp

__all__ = [
    "ContractionType",
    "build_report",
    "check_conditions",
    "closed_form_gamma_tilde_sq",
    "du_val_recognize",
    "enumerate_types",
    "gamma_tilde_sq",
    "parse_type",
    "MonomialBranch",
    "MonomialDivisorSpec",
    "is_canonical_pair_toric",
    "lc_decompose_2d",
    "nonplt_bound",
    "parse_boundary",
    "toric_log_discrepancy_minus_one",
    "Rational",
    "Cone",
    "Fan",
    "fan_from_json",
    "germ_fan",
    "star_subdivide",
    "star_surface",
    "GermSpec",
    "blowup_ray",
    "parse_germ",
    "CyclicQuotientType",
    "cone_to_quotient",
    "quotient_2d",
    "reid_tai_classify",
    "verify_terminal_lemma",
    "gamma_tilde_sq_star",
    "gamma_tilde_sq_wpp",
]

__version__ = "0.1.0"
