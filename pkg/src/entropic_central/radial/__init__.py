"""Numerical pipeline for arbitrary central potentials."""

from .hankel import HankelResult, bessel_zeros, hankel_transform, wynn_epsilon
from .potential import PotentialSpec, parse_expression, parse_potential
from .solver import NumericRadialState, SolverConfig, solve_radial
from .verify import VerificationReport, verify_state

__all__ = [
    "HankelResult",
    "NumericRadialState",
    "PotentialSpec",
    "SolverConfig",
    "VerificationReport",
    "bessel_zeros",
    "hankel_transform",
    "parse_expression",
    "parse_potential",
    "solve_radial",
    "verify_state",
    "wynn_epsilon",
]
