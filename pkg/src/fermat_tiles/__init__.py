"""Fermat tiles modulo prime powers, Exp/Log digit functions and the
double-recursion ("zipper") system."""

from .context import PrimeContext, find_primitive_root, totient_power
from .digits import DigitVector, digit_g, exp_series, h_eval, shift_lemma_report
from .tiles import (
    box_intersection,
    bounding_line_search,
    curve_lattice_points,
    roots_of_minus_one,
    theta_statistics,
    tile_membership,
    tile_points,
)
from .zipper import (
    a_shift_identity_check,
    extract_s0,
    h_profiles,
    linearize,
    semilinearity_report,
    z_set,
    zipper_solve,
)

__all__ = [
    "PrimeContext",
    "find_primitive_root",
    "totient_power",
    "DigitVector",
    "digit_g",
    "exp_series",
    "h_eval",
    "shift_lemma_report",
    "box_intersection",
    "bounding_line_search",
    "curve_lattice_points",
    "roots_of_minus_one",
    "theta_statistics",
    "tile_membership",
    "tile_points",
    "a_shift_identity_check",
    "extract_s0",
    "h_profiles",
    "linearize",
    "semilinearity_report",
    "z_set",
    "zipper_solve",
]
