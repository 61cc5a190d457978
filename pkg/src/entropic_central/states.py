"""Hydrogenic and isotropic-oscillator eigenstates in D dimensions.

Reduced radial densities ``w(r) = r^(D-1) * (radial part of rho)`` and
their momentum counterparts are built from closed forms with all
normalization constants in log space, together with analytic log-densities
and the polynomial nodes, which serve as quadrature break points.

Atomic units with unit nuclear charge.  The oscillator family uses the
density ``r^(2l) exp(-lam r^2) [L_n^(l+D/2-1)(lam r^2)]^2`` and the momentum
density ``lam^-D rho(p/lam)``, so the two entropies shift by
``+-(D/2) ln lam`` and their sum is independent of ``lam``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .bounds import BoundReport, central_bound
from .errors import InvalidQuantumNumbers, NonConvergence
from .hyperangular import AngularState
from .quadrature import DEFAULT, entropy_integral, integrate_semiinfinite
from .specfun import PolyParams, gegenbauer, gegenbauer_roots, laguerre, laguerre_roots, ln_gamma

__all__ = [
    "HYDROGENIC",
    "OSCILLATOR",
    "NUMERIC",
    "QuantumStateSpec",
    "RadialDensity",
    "EntropyReport",
    "radial_density",
    "momentum_radial_density",
    "entropy_report",
    "assemble_report",
    "sweep",
    "SweepRow",
]

HYDROGENIC = "hydrogenic"
OSCILLATOR = "oscillator"
NUMERIC = "numeric"
FAMILIES = (HYDROGENIC, OSCILLATOR, NUMERIC)


@dataclass(frozen=True)
class QuantumStateSpec:
    """A stationary state: family, principal/radial index ``n`` and angular part.

    Hydrogenic states use the principal number ``n >= 1`` with ``l <= n-1``;
    oscillator states use the radial index ``n >= 0``.
    """

    family: str
    n: int
    angular: AngularState
    lam: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidQuantumNumbers(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if int(self.n) != self.n:
            raise InvalidQuantumNumbers(f"n must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        l = self.angular.l
        if self.family == HYDROGENIC:
            if self.n < 1:
                raise InvalidQuantumNumbers(f"hydrogenic states need n >= 1, got n={self.n}")
            if l > self.n - 1:
                raise InvalidQuantumNumbers(f"hydrogenic states need l <= n-1, got n={self.n}, l={l}")
            if self.eta <= 0:
                raise InvalidQuantumNumbers("hydrogenic states need eta = n + (D-3)/2 > 0")
        elif self.family == OSCILLATOR:
            if self.n < 0:
                raise InvalidQuantumNumbers(f"oscillator states need n >= 0, got n={self.n}")
            if not self.lam > 0:
                raise InvalidQuantumNumbers(f"oscillator coupling must be positive, got {self.lam}")

    @classmethod
    def hydrogenic(cls, n, l, *mu, D=3):
        return cls(HYDROGENIC, n, AngularState(D, (l, *mu)))

    @classmethod
    def oscillator(cls, n, l, *mu, D=3, lam=1.0):
        return cls(OSCILLATOR, n, AngularState(D, (l, *mu)), lam)

    @property
    def D(self):
        return self.angular.D

    @property
    def l(self):
        return self.angular.l

    @property
    def eta(self):
        return self.n + 0.5 * (self.D - 3)

    @property
    def energy(self):
        """Eigenvalue: ``-1/(2 eta^2)`` or ``lam (2n + l + D/2)``."""
        if self.family == HYDROGENIC:
            return -0.5 / self.eta**2
        if self.family == OSCILLATOR:
            return self.lam * (2 * self.n + self.l + 0.5 * self.D)
        raise ValueError("numeric states carry their energy on the solver output")


@dataclass(frozen=True)
class RadialDensity:
    """A one-dimensional density on ``[0, inf)``.

    ``amplitude`` is the signed reduced radial function (``u`` or ``u~``)
    with ``pdf = amplitude**2``; ``nodes`` are its interior zeros.
    ``tail`` names the decay: ``"exponential"``, ``"gaussian"`` or ``"power"``.
    """

    pdf: object
    logpdf: object
    amplitude: object
    nodes: tuple = ()
    tail: str = "exponential"

    def __call__(self, x):
        return self.pdf(x)


def _hydrogen_position(spec):
    D, n, l, eta = spec.D, spec.n, spec.l, spec.eta
    poly = PolyParams(n - l - 1, 2 * l + D - 2)
    # (2/eta)^D; with the square-root power (2/eta)^(D/2) the density would not normalize.
    log_norm = (
        D * math.log(2.0 / eta)
        + ln_gamma(n - l)
        - math.log(2.0 * eta)
        - ln_gamma(n + l + D - 2)
    )

    def amplitude(r):
        r = np.asarray(r, dtype=float)
        z = 2.0 * r / eta
        return (
            np.exp(0.5 * log_norm - 0.5 * z) * z**l * laguerre(poly, z) * r ** (0.5 * (D - 1))
        )

    def logpdf(r):
        r = np.asarray(r, dtype=float)
        z = 2.0 * r / eta
        with np.errstate(divide="ignore"):
            return (
                log_norm - z + 2 * l * np.log(z)
                + 2.0 * np.log(np.abs(laguerre(poly, z)))
                + (D - 1) * np.log(r)
            )

    nodes = tuple(0.5 * eta * laguerre_roots(poly))
    return RadialDensity(lambda r: amplitude(r) ** 2, logpdf, amplitude, nodes, "exponential")


def _hydrogen_momentum(spec):
    D, n, l, eta = spec.D, spec.n, spec.l, spec.eta
    a = l + 0.5 * (D - 1)
    poly = PolyParams(n - l - 1, a)
    log_norm = (
        ln_gamma(n - l)
        - math.log(2.0 * math.pi)
        - ln_gamma(n + l + D - 2)
        + (2 * l + D) * math.log(4.0)
        + 2.0 * ln_gamma(a)
        + (D + 1) * math.log(eta)
    )

    def amplitude(p):
        p = np.asarray(p, dtype=float)
        s = (eta * p) ** 2
        x = (1.0 - s) / (1.0 + s)
        return (
            np.exp(0.5 * log_norm) * (eta * p) ** l / (1.0 + s) ** (l + 0.5 * (D + 1))
            * gegenbauer(poly, x) * p ** (0.5 * (D - 1))
        )

    def logpdf(p):
        p = np.asarray(p, dtype=float)
        s = (eta * p) ** 2
        x = (1.0 - s) / (1.0 + s)
        with np.errstate(divide="ignore"):
            return (
                log_norm + 2 * l * np.log(eta * p) - (2 * l + D + 1) * np.log1p(s)
                + 2.0 * np.log(np.abs(gegenbauer(poly, x)))
                + (D - 1) * np.log(p)
            )

    roots = gegenbauer_roots(poly)
    nodes = tuple(np.sort(np.sqrt((1.0 - roots) / (1.0 + roots)) / eta))
    return RadialDensity(lambda p: amplitude(p) ** 2, logpdf, amplitude, nodes, "power")


def _oscillator_position(spec):
    D, n, l, lam = spec.D, spec.n, spec.l, spec.lam
    a = l + 0.5 * D - 1.0
    poly = PolyParams(n, a)
    log_norm = math.log(2.0) + ln_gamma(n + 1) + (l + 0.5 * D) * math.log(lam) - ln_gamma(n + l + 0.5 * D)

    def amplitude(r):
        r = np.asarray(r, dtype=float)
        z = lam * r * r
        return np.exp(0.5 * log_norm - 0.5 * z) * r ** (l + 0.5 * (D - 1)) * laguerre(poly, z)

    def logpdf(r):
        r = np.asarray(r, dtype=float)
        z = lam * r * r
        with np.errstate(divide="ignore"):
            return log_norm - z + (2 * l + D - 1) * np.log(r) + 2.0 * np.log(np.abs(laguerre(poly, z)))

    nodes = tuple(np.sqrt(laguerre_roots(poly) / lam))
    return amplitude, logpdf, nodes


def _oscillator(spec, momentum):
    amplitude, logpdf, nodes = _oscillator_position(spec)
    if not momentum:
        return RadialDensity(lambda r: amplitude(r) ** 2, logpdf, amplitude, nodes, "gaussian")
    lam = spec.lam
    # w~(p) = w(p/lam) / lam
    amp_p = lambda p: amplitude(np.asarray(p, dtype=float) / lam) / math.sqrt(lam)
    log_p = lambda p: logpdf(np.asarray(p, dtype=float) / lam) - math.log(lam)
    return RadialDensity(
        lambda p: amp_p(p) ** 2, log_p, amp_p, tuple(lam * np.asarray(nodes)), "gaussian"
    )


def _require_analytic(spec):
    if spec.family == NUMERIC:
        raise ValueError(
            "numeric states have no closed-form density; use entropic_central.radial.solve_radial"
        )


def radial_density(spec):
    """Position reduced radial density ``w(r) = |u(r)|^2``."""
    _require_analytic(spec)
    if spec.family == HYDROGENIC:
        return _hydrogen_position(spec)
    return _oscillator(spec, momentum=False)


def momentum_radial_density(spec):
    """Momentum reduced radial density ``w~(p) = |u~(p)|^2``."""
    _require_analytic(spec)
    if spec.family == HYDROGENIC:
        return _hydrogen_momentum(spec)
    return _oscillator(spec, momentum=True)


@dataclass(frozen=True)
class EntropyReport:
    """Entropic decomposition of one state.

    ``S_rho = S_w + (D-1) ln_r + S_Y`` and ``S_gamma = S_wt + (D-1) ln_p + S_Y``;
    ``ratio = sum / bound.central``.
    """

    family: str
    n: int
    angular: AngularState
    lam: float
    S_w: float
    S_wt: float
    ln_r: float
    ln_p: float
    S_Y: float
    S_rho: float
    S_gamma: float
    sum: float
    bound: BoundReport
    ratio: float

    @property
    def D(self):
        return self.angular.D

    @property
    def l(self):
        return self.angular.l

    def margins(self):
        """Slack of every inequality: left side minus lower bound."""
        b = self.bound
        return {
            "bbm": self.sum - b.bbm,
            "radial_shannon": self.S_w + self.S_wt - b.radial_shannon,
            "logarithmic": self.ln_r + self.ln_p - b.logarithmic,
            "central": self.sum - b.central,
        }


def assemble_report(family, n, angular, lam, S_w, S_wt, ln_r, ln_p, bound):
    """Combine radial pieces and the bound report into an :class:`EntropyReport`."""
    D = angular.D
    S_Y = bound.angular_entropy
    S_rho = S_w + (D - 1) * ln_r + S_Y
    S_gamma = S_wt + (D - 1) * ln_p + S_Y
    total = S_rho + S_gamma
    return EntropyReport(
        family, n, angular, lam, S_w, S_wt, ln_r, ln_p, S_Y, S_rho, S_gamma,
        total, bound, total / bound.central,
    )


def _log_moment(density, cfg):
    def integrand(x):
        return density.pdf(x) * np.log(x)

    return integrate_semiinfinite(integrand, cfg, density.nodes).value


@lru_cache(maxsize=1024)
def _radial_part(family, n, D, l, lam, cfg):
    spec = QuantumStateSpec(family, n, AngularState(D, (l,) + (0,) * (D - 2)), lam)
    w = radial_density(spec)
    wt = momentum_radial_density(spec)
    S_w = entropy_integral(w.pdf, cfg, w.logpdf, w.nodes).value
    S_wt = entropy_integral(wt.pdf, cfg, wt.logpdf, wt.nodes).value
    return S_w, S_wt, _log_moment(w, cfg), _log_moment(wt, cfg)


def entropy_report(spec, cfg=None):
    """Position and momentum Shannon entropies of an analytic state.

    The radial integrals depend only on ``(family, n, D, |l|, lam)`` and are
    cached; the angular part comes from :func:`central_bound`.
    """
    cfg = cfg or DEFAULT
    _require_analytic(spec)
    S_w, S_wt, ln_r, ln_p = _radial_part(spec.family, spec.n, spec.D, spec.l, spec.lam, cfg)
    bound = central_bound(spec.angular, cfg)
    return assemble_report(spec.family, spec.n, spec.angular, spec.lam, S_w, S_wt, ln_r, ln_p, bound)


@dataclass(frozen=True)
class SweepRow:
    spec: QuantumStateSpec
    report: EntropyReport | None = None
    error: str | None = None

    @property
    def ok(self):
        return self.error is None


def _sweep_one(spec, cfg):
    try:
        return SweepRow(spec, entropy_report(spec, cfg))
    except NonConvergence as exc:
        return SweepRow(spec, error=f"NonConvergence: {exc}")
    except (ValueError, ArithmeticError) as exc:
        return SweepRow(spec, error=f"{type(exc).__name__}: {exc}")


def sweep(specs, cfg=None, max_workers=None):
    """One :class:`SweepRow` per spec, in input order.

    A failing row records its error instead of aborting the sweep.
    ``max_workers > 1`` evaluates rows in a thread pool.
    """
    cfg = cfg or DEFAULT
    specs = list(specs)
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            return list(pool.map(lambda s: _sweep_one(s, cfg), specs))
    return [_sweep_one(s, cfg) for s in specs]
