"""Scalar special functions used by the bounds and the model densities.

Gamma, digamma and Bessel J are thin, domain-checked wrappers around
:mod:`scipy.special`.  The classical orthogonal polynomials are evaluated
by their upward three-term recurrence in the degree, which is stable for
Laguerre at non-negative arguments and for Gegenbauer on [-1, 1]; the
explicit power-sum forms overflow long before the degrees needed here.
"""

import math

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "PolyParams",
    "ln_gamma",
    "digamma",
    "laguerre",
    "gegenbauer",
    "bessel_j",
    "laguerre_roots",
    "gegenbauer_roots",
]


class PolyParams:
    """Degree and parameter of a classical orthogonal polynomial.

    Parameters
    ----------
    degree : int
        Non-negative polynomial degree ``k``.
    alpha : float
        Family parameter.  Laguerre needs ``alpha > -1``, Gegenbauer
        ``alpha > -1/2``; the check happens in the evaluating function.
    """

    __slots__ = ("degree", "alpha")

    def __init__(self, degree, alpha):
        if int(degree) != degree or degree < 0:
            raise DomainError(f"polynomial degree must be a non-negative integer, got {degree!r}")
        self.degree = int(degree)
        self.alpha = float(alpha)

    def __repr__(self):
        return f"PolyParams(degree={self.degree}, alpha={self.alpha})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyParams)
            and self.degree == other.degree
            and self.alpha == other.alpha
        )

    def __hash__(self):
        return hash((self.degree, self.alpha))


def _positive(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} requires x > 0, got {x!r}")
    return arr


def _scalar_or_array(value, like):
    if np.ndim(like) == 0:
        return float(value)
    return value


def ln_gamma(x):
    """Natural log of the gamma function for ``x > 0``."""
    arr = _positive(x, "ln_gamma")
    if arr.ndim == 0:
        return math.lgamma(float(arr))
    return special.gammaln(arr)


def digamma(x):
    """Digamma function ``psi(x) = Gamma'(x)/Gamma(x)`` for ``x > 0``."""
    arr = _positive(x, "digamma")
    return _scalar_or_array(special.psi(arr), x)


def laguerre(p, x):
    """Generalized Laguerre polynomial ``L_k^(alpha)(x)``.

    Uses ``(k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}``.
    ``x`` may be a scalar or an array.
    """
    if p.alpha <= -1.0:
        raise DomainError(f"Laguerre parameter must exceed -1, got {p.alpha}")
    x_arr = np.asarray(x, dtype=float)
    a = p.alpha
    prev = np.ones_like(x_arr)
    if p.degree == 0:
        return _scalar_or_array(prev, x)
    cur = 1.0 + a - x_arr
    for k in range(1, p.degree):
        prev, cur = cur, ((2 * k + 1 + a - x_arr) * cur - (k + a) * prev) / (k + 1)
    return _scalar_or_array(cur, x)


def gegenbauer(p, x):
    """Gegenbauer polynomial ``C_k^(alpha)(x)`` on ``[-1, 1]``.

    Uses ``(k+1) C_{k+1} = 2(k+alpha) x C_k - (k+2 alpha-1) C_{k-1}``.
    """
    if p.alpha <= -0.5:
        raise DomainError(f"Gegenbauer parameter must exceed -1/2, got {p.alpha}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0 + 1e-12):
        raise DomainError("Gegenbauer argument must lie in [-1, 1]")
    a = p.alpha
    prev = np.ones_like(x_arr)
    if p.degree == 0:
        return _scalar_or_array(prev, x)
    cur = 2.0 * a * x_arr
    for k in range(1, p.degree):
        prev, cur = cur, (2 * (k + a) * x_arr * cur - (k + 2 * a - 1) * prev) / (k + 1)
    return _scalar_or_array(cur, x)


def bessel_j(nu, x):
    """Bessel function of the first kind ``J_nu(x)`` for ``nu >= -1/2, x >= 0``."""
    if nu < -0.5:
        raise DomainError(f"Bessel order must be >= -1/2, got {nu}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise DomainError("bessel_j requires x >= 0")
    out = np.asarray(special.jv(nu, x_arr), dtype=float)
    # jv flushes subnormal arguments to zero; below 1e-150 the leading series
    # term (x/2)^nu / Gamma(nu+1) is exact in double precision.
    tiny = (x_arr > 0) & (x_arr < 1e-150)
    if np.any(tiny):
        out = np.array(out, copy=True)
        out[tiny] = np.exp(nu * (np.log(x_arr[tiny]) - math.log(2.0)) - special.gammaln(nu + 1.0))
    return _scalar_or_array(out, x)


def laguerre_roots(p):
    """Zeros of ``L_k^(alpha)``, ascending."""
    if p.degree == 0:
        return np.empty(0)
    return np.sort(special.roots_genlaguerre(p.degree, p.alpha)[0])


def gegenbauer_roots(p):
    """Zeros of ``C_k^(alpha)`` in (-1, 1), ascending."""
    if p.degree == 0:
        return np.empty(0)
    return np.sort(special.roots_gegenbauer(p.degree, p.alpha)[0])
