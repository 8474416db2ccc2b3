"""Exact leading coefficients for joint moments of derivatives of CUE
characteristic polynomials, with Monte Carlo and number-theory companions."""

from .momentcoeffs import (
    CoeffResult,
    Family,
    MomentSpec,
    Route,
    RouteDisagreement,
    a_coeff,
    b_coeff,
    coeff,
)

__all__ = [
    "CoeffResult",
    "Family",
    "MomentSpec",
    "Route",
    "RouteDisagreement",
    "a_coeff",
    "b_coeff",
    "coeff",
]

__version__ = "0.1.0"
