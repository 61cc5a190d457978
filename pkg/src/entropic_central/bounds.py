"""Analytic lower bounds on position-momentum entropy sums.

* :func:`bbm_bound` -- the general bound ``D (1 + ln pi)``.
* :func:`renyi_radial_bound`, :func:`shannon_radial_bound` -- bounds for the
  reduced radial densities, from the Lp-Lq norm inequality of the Hankel
  transform of order ``nu = l + D/2 - 1``.
* :func:`log_bound` -- the logarithmic bound on ``<ln r> + <ln p>``.
* :func:`central_bound` -- their combination with the angular entropy.

Every gamma ratio is taken as a difference of ``ln_gamma`` so that the
bounds stay finite for ``l`` in the hundreds.
"""

from dataclasses import dataclass
import math

from .errors import DomainError
from .hyperangular import AngularState, angular_entropy
from .quadrature import DEFAULT
from .specfun import digamma, ln_gamma

__all__ = [
    "BoundReport",
    "bbm_bound",
    "log_decarli_constant",
    "decarli_constant",
    "renyi_radial_bound",
    "shannon_radial_bound",
    "shannon_radial_bound_nu",
    "log_bound",
    "central_bound",
    "hankel_order",
]

LN2 = math.log(2.0)


def hankel_order(l, D):
    """``nu = |l| + D/2 - 1``; ``|l|`` covers the signed D=2 label."""
    return abs(l) + 0.5 * D - 1.0


def bbm_bound(D):
    """``D (1 + ln pi)``, valid for every state in ``D`` dimensions."""
    if int(D) != D or D < 1:
        raise DomainError(f"D must be a positive integer, got {D!r}")
    return D * (1.0 + math.log(math.pi))


def log_decarli_constant(q, nu):
    """``ln A(q; nu)`` with

    ``A(q; nu) = 2^(1/(2q)) q^((nu + 1/2 + 1/q)/2) / Gamma(q/2 (nu + 1/2) + 1/2)^(1/q)``.
    """
    if not q > 1.0:
        raise DomainError(f"De Carli constant needs q > 1, got {q}")
    if nu < -0.5:
        raise DomainError(f"De Carli constant needs nu >= -1/2, got {nu}")
    return (
        LN2 / (2.0 * q)
        + 0.5 * (nu + 0.5 + 1.0 / q) * math.log(q)
        - ln_gamma(0.5 * q * (nu + 0.5) + 0.5) / q
    )


def decarli_constant(q, nu):
    return math.exp(log_decarli_constant(q, nu))


def renyi_radial_bound(alpha, nu):
    """Lower bound on ``R_beta[w] + R_alpha[w~]`` with ``beta = alpha / (2 alpha - 1)``.

    Parameters
    ----------
    alpha : float
        Momentum-side order, ``alpha > 1``.  The conjugate position order
        ``beta`` is derived so that ``1/alpha + 1/beta = 2``.
    nu : float
        Hankel order ``l + D/2 - 1``.
    """
    if not alpha > 1.0:
        raise DomainError(f"renyi_radial_bound needs alpha > 1, got {alpha}")
    beta = alpha / (2.0 * alpha - 1.0)
    # The two terms diverge separately as alpha -> 1; 2 beta/(beta-1) = -2 alpha/(alpha-1).
    diff = log_decarli_constant(2.0 * alpha, nu) - log_decarli_constant(2.0 * beta, nu)
    return 2.0 * alpha * diff / (alpha - 1.0)


def shannon_radial_bound_nu(nu):
    """``C'`` written in the Hankel order: ``2 nu + 2 + 2 ln(Gamma(nu+1)/2) - (2 nu + 1) psi(nu+1)``."""
    if nu < -0.5:
        raise DomainError(f"nu must be >= -1/2, got {nu}")
    z = nu + 1.0
    return 2.0 * z + 2.0 * (ln_gamma(z) - LN2) - (2.0 * z - 1.0) * digamma(z)


def shannon_radial_bound(l, D):
    """Lower bound ``C'`` on ``S[w] + S[w~]`` for the reduced radial densities."""
    if int(D) != D or D < 2:
        raise DomainError(f"D must be an integer >= 2, got {D!r}")
    if D > 2 and l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    return shannon_radial_bound_nu(hankel_order(l, D))


def log_bound(l, D):
    """``psi((2l + D)/4) + ln 2``, the lower bound on ``<ln r> + <ln p>``."""
    if int(D) != D or D < 2:
        raise DomainError(f"D must be an integer >= 2, got {D!r}")
    if D > 2 and l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    return digamma((2.0 * abs(l) + D) / 4.0) + LN2


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one angular state.

    ``central == radial_shannon + (D-1) * logarithmic + 2 * angular_entropy``.
    """

    state: AngularState
    bbm: float
    radial_shannon: float
    logarithmic: float
    angular_entropy: float
    central: float

    @property
    def D(self):
        return self.state.D

    @property
    def components(self):
        """The addends of the central bound, in the order they are summed."""
        D = self.state.D
        log_psi = self.logarithmic - LN2
        return {
            "radial_shannon": self.radial_shannon,
            "log_digamma": (D - 1) * log_psi,
            "log_ln2": (D - 1) * LN2,
            "angular": 2.0 * self.angular_entropy,
        }

    @property
    def improves_bbm(self):
        return self.central > self.bbm


def central_bound(state, cfg=None):
    """Potential-independent lower bound on ``S[rho] + S[gamma]`` for ``state``."""
    cfg = cfg or DEFAULT
    D, l = state.D, state.l
    radial = shannon_radial_bound(l, D)
    logarithmic = log_bound(l, D)
    s_y = angular_entropy(state, cfg)
    central = radial + (D - 1) * logarithmic + 2.0 * s_y
    return BoundReport(state, bbm_bound(D), radial, logarithmic, s_y, central)
