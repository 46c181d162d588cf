"""Exact and numeric computation of generalized Stirling numbers and functions."""

from .asymptotics import asym_error_study, asym_estimate, theorem51_coefficients, w_coefficients
from .core import ALGORITHMS, StirlingTriangle, build_triangle, stirling_explicit, verify_pair_inverse
from .errors import GenStirlingError
from .factorials import gen_factorial, k_gamma
from .functions import StirlingFunctionQuery, egf_coefficients, stirling_function, verify_fn_recurrence
from .presets import CATALOG, preset_lookup
from .riordan import a_sequence, coefficient_extract, riordan_triangle, stirling_generating_pair
from .triple import ParameterTriple

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CATALOG",
    "GenStirlingError",
    "ParameterTriple",
    "StirlingFunctionQuery",
    "StirlingTriangle",
    "a_sequence",
    "asym_error_study",
    "asym_estimate",
    "build_triangle",
    "coefficient_extract",
    "egf_coefficients",
    "gen_factorial",
    "k_gamma",
    "preset_lookup",
    "riordan_triangle",
    "stirling_explicit",
    "stirling_function",
    "stirling_generating_pair",
    "theorem51_coefficients",
    "verify_fn_recurrence",
    "verify_pair_inverse",
    "w_coefficients",
]
