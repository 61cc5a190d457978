"""Hyperspherical harmonics on S^{D-1} and their Shannon entropy.

Coordinates follow the usual chain ``x_1 = r cos t_1``,
``x_2 = r sin t_1 cos t_2``, ..., ``x_D = r sin t_1 ... sin t_{D-1}``,
with polar angles ``t_1 .. t_{D-2}`` in ``[0, pi]`` and the azimuth
``t_{D-1}`` in ``[0, 2 pi)``.  The surface element is
``prod_j sin(t_j)**(D-j-1) dt_j``.

For quantum numbers ``(l = mu_1, mu_2, ..., mu_{D-1} = m)`` the harmonic is
the product of one normalized Gegenbauer factor per polar angle,

    C_{mu_j - mu_{j+1}}^{(mu_{j+1} + (D-j-1)/2)}(cos t_j) * sin(t_j)**mu_{j+1},

times ``exp(i m t_{D-1}) / sqrt(2 pi)``.  Because ``|Y|^2`` is an exact
product, its entropy is the sum of one-dimensional entropies.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import InvalidQuantumNumbers
from .quadrature import DEFAULT, integrate_finite
from .specfun import PolyParams, gegenbauer, gegenbauer_roots, ln_gamma

__all__ = [
    "AngularState",
    "PolarFactor",
    "angular_density",
    "angular_amplitude",
    "angular_entropy",
    "check_normalization",
    "max_angular_entropy",
]


@dataclass(frozen=True)
class AngularState:
    """Dimension and hyperangular quantum numbers ``(l, mu_2, ..., m)``.

    ``mu`` always has ``D - 1`` entries; for ``D = 2`` it is just ``(l,)``
    with ``l`` any integer.
    """

    D: int
    mu: tuple

    def __post_init__(self):
        D = self.D
        if int(D) != D or D < 2:
            raise InvalidQuantumNumbers(f"dimension D must be an integer >= 2, got {D!r}")
        mu = tuple(self.mu)
        if any(int(v) != v for v in mu):
            raise InvalidQuantumNumbers(f"quantum numbers must be integers, got {mu!r}")
        mu = tuple(int(v) for v in mu)
        object.__setattr__(self, "D", int(D))
        object.__setattr__(self, "mu", mu)
        if len(mu) != D - 1:
            raise InvalidQuantumNumbers(
                f"D={D} needs {D - 1} hyperangular quantum numbers, got {len(mu)}"
            )
        if D == 2:
            return
        if mu[0] < 0:
            raise InvalidQuantumNumbers(f"l must be >= 0 for D >= 3, got l={mu[0]}")
        chain = list(mu[:-1]) + [abs(mu[-1])]
        for j in range(len(chain) - 1):
            if chain[j] < chain[j + 1]:
                raise InvalidQuantumNumbers(
                    "quantum numbers must satisfy l >= mu_2 >= ... >= |m|, "
                    f"violated at position {j + 1}: {mu!r}"
                )

    @classmethod
    def of(cls, D, l, *rest):
        """``AngularState.of(3, l, m)``, ``AngularState.of(4, l, mu2, m)``..."""
        return cls(D, (l, *rest))

    @property
    def l(self):
        return abs(self.mu[0]) if self.D == 2 else self.mu[0]

    @property
    def m(self):
        return self.mu[-1]

    def polar_factors(self):
        """One :class:`PolarFactor` per polar angle ``t_1 .. t_{D-2}``."""
        D = self.D
        out = []
        for j in range(1, D - 1):
            upper = self.mu[j - 1]
            lower = abs(self.mu[j])
            weight = D - j - 1
            out.append(PolarFactor(upper - lower, lower + weight / 2.0, lower, weight))
        return out


@dataclass(frozen=True)
class PolarFactor:
    """Squared normalized factor ``C_k^(a)(cos t)^2 sin(t)^(2s) / h`` on ``[0, pi]``
    against ``sin(t)**weight dt``; ``2a = 2s + weight``."""

    degree: int
    alpha: float
    sin_power: int
    weight: int

    @property
    def log_norm(self):
        k, a = self.degree, self.alpha
        return (
            math.log(math.pi)
            + (1.0 - 2.0 * a) * math.log(2.0)
            + ln_gamma(k + 2.0 * a)
            - ln_gamma(k + 1.0)
            - math.log(k + a)
            - 2.0 * ln_gamma(a)
        )

    def amplitude(self, theta):
        c = gegenbauer(PolyParams(self.degree, self.alpha), np.cos(theta))
        return c * np.sin(theta) ** self.sin_power * math.exp(-0.5 * self.log_norm)

    def density(self, theta):
        return self.amplitude(theta) ** 2

    def log_density(self, theta):
        c = gegenbauer(PolyParams(self.degree, self.alpha), np.cos(theta))
        with np.errstate(divide="ignore"):
            return 2.0 * np.log(np.abs(c)) + 2.0 * self.sin_power * np.log(np.sin(theta)) - self.log_norm

    def nodes(self):
        roots = gegenbauer_roots(PolyParams(self.degree, self.alpha))
        return np.sort(np.arccos(roots))

    def _measure(self, theta):
        return np.sin(theta) ** self.weight

    def norm(self, cfg):
        return integrate_finite(
            lambda t: self.density(t) * self._measure(t), 0.0, math.pi, cfg, self.nodes()
        )

    def entropy(self, cfg):
        def integrand(t):
            lw = self.log_density(t)
            out = np.zeros_like(t)
            live = lw > -690.0
            out[live] = -np.exp(lw[live]) * lw[live] * self._measure(t[live])
            return out

        return integrate_finite(integrand, 0.0, math.pi, cfg, self.nodes())


def _angles(state, angles):
    arr = np.asarray(angles, dtype=float)
    if arr.shape[-1] != state.D - 1:
        raise ValueError(f"expected {state.D - 1} angles, got shape {arr.shape}")
    return arr


def angular_amplitude(state, angles):
    """Complex ``Y_{l,{mu}}`` at ``angles`` (last axis holds the D-1 angles)."""
    arr = _angles(state, angles)
    value = np.exp(1j * state.m * arr[..., -1]) / math.sqrt(2.0 * math.pi)
    for j, factor in enumerate(state.polar_factors()):
        value = value * factor.amplitude(arr[..., j])
    return value


def angular_density(state, angles):
    """``|Y_{l,{mu}}|^2`` as a product of squared normalized factors."""
    arr = _angles(state, angles)
    value = np.full(arr.shape[:-1], 1.0 / (2.0 * math.pi))
    for j, factor in enumerate(state.polar_factors()):
        value = value * factor.density(arr[..., j])
    return value if value.ndim else float(value)


@lru_cache(maxsize=4096)
def _factor_entropy(factor, cfg):
    return factor.entropy(cfg).value


def angular_entropy(state, cfg=None):
    """Shannon entropy of ``|Y|^2`` on the sphere.

    ``ln(2 pi)`` from the azimuth plus one quadrature per polar factor,
    broken at the Gegenbauer zeros.
    """
    cfg = cfg or DEFAULT
    total = math.log(2.0 * math.pi)
    for factor in state.polar_factors():
        total += _factor_entropy(factor, cfg)
    return total


def check_normalization(state, cfg=None):
    """Numerical ``int |Y|^2 dOmega``; should be 1."""
    cfg = cfg or DEFAULT
    norm = 1.0
    for factor in state.polar_factors():
        norm *= factor.norm(cfg).value
    return norm


def max_angular_entropy(D):
    """``ln |S^{D-1}| = ln(2 pi^{D/2} / Gamma(D/2))``, the uniform-density entropy."""
    return math.log(2.0) + 0.5 * D * math.log(math.pi) - ln_gamma(0.5 * D)
