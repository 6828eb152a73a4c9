"""stripcert: exact certificates of polynomial nonnegativity on [0,1] x R.

A polynomial f(X, Y) nonnegative on the strip [0,1] x R admits a
representation

    f = sigma0 + sigma1 * X*(1-X)

with sigma0, sigma1 sums of squares.  This package constructs such
representations along three routes (a Polya-expansion route for general
degree, a cone-decomposition route for deg_Y f <= 2, and closed forms for
deg_X f <= 1), verifies them exactly, and reports the attained degrees
against the theoretical bounds.
"""

from .polyring import (
    RatPoly,
    DegreeProfile,
    parse_poly,
    render,
    homogenize_bar,
    lift_F,
    inf_norm,
    polya_norm,
)

__all__ = [
    "RatPoly",
    "DegreeProfile",
    "parse_poly",
    "render",
    "homogenize_bar",
    "lift_F",
    "inf_norm",
    "polya_norm",
]

__version__ = "0.1.0"
