"""Entropic inequalities checked on numerically solved states.

Sampled amplitudes (``u`` on the solver grid, ``u~`` on a momentum grid
uniform in ``x = ln p + p``) are interpolated by cubic splines and the
entropy and log-moment integrals are done adaptively, broken at the spline
zeros where ``-w ln w`` is not smooth.  Below the first sample the density
follows its small-argument power law; beyond the last momentum sample a
power law fitted to the last samples is integrated in closed form.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.interpolate import CubicSpline

from ..bounds import central_bound
from ..errors import NonConvergence, NotNormalized
from ..quadrature import DEFAULT, integrate_finite
from ..states import NUMERIC, EntropyReport, assemble_report
from .hankel import BANDWIDTH_LIMIT, hankel_transform
from .solver import _Grid

__all__ = ["VerificationReport", "verify_state", "density_moments"]

MARGIN_TOLERANCE = 1e-6
TAIL_MASS_FLOOR = 1e-13


@dataclass(frozen=True)
class VerificationReport:
    """Entropies of a numeric state and the slack of each inequality."""

    report: EntropyReport
    energy: float
    margins: dict
    passed: dict
    position_norm: float
    momentum_norm: float
    p_max: float
    momentum: object = field(repr=False, default=None)

    @property
    def all_passed(self):
        return all(self.passed.values())


def _xlogx(w):
    out = np.zeros_like(w)
    live = w >= 1e-300
    out[live] = w[live] * np.log(w[live])
    return out


def _head(t0, w0, k):
    """Mass, int w ln w and int w ln t of ``w0 (t/t0)^k`` on ``[0, t0]``."""
    if w0 <= 0:
        return 0.0, 0.0, 0.0
    mass = w0 * t0 / (k + 1.0)
    ln_t = mass * (math.log(t0) - 1.0 / (k + 1.0))
    w_ln_w = mass * math.log(w0) + k * (ln_t - mass * math.log(t0))
    return mass, w_ln_w, ln_t


def _tail(t1, w1, k):
    """Same integrals for ``w1 (t/t1)^-k`` on ``[t1, inf)``, ``k > 1``."""
    if w1 <= 0:
        return 0.0, 0.0, 0.0
    mass = w1 * t1 / (k - 1.0)
    ln_t = mass * (math.log(t1) + 1.0 / (k - 1.0))
    w_ln_w = mass * math.log(w1) - k * (ln_t - mass * math.log(t1))
    return mass, w_ln_w, ln_t


def density_moments(t, amplitude, head_power, tail_power=None, cfg=None):
    """``(norm, S, <ln t>)`` of ``w = amplitude**2`` sampled at ``t``.

    ``tail_power`` is the decay exponent beyond the last sample; None means
    the density vanishes there.
    """
    cfg = cfg or DEFAULT
    t = np.asarray(t, dtype=float)
    spline = CubicSpline(t, np.asarray(amplitude, dtype=float))
    nodes = spline.roots(extrapolate=False)
    # Between knots the spline is a cubic, so every knot is a break point.
    points = np.concatenate([nodes, t[1:-1]])
    w = lambda x: spline(x) ** 2

    def run(g):
        return integrate_finite(g, t[0], t[-1], cfg, points).value

    norm = run(w)
    w_ln_w = run(lambda x: _xlogx(w(x)))
    ln_t = run(lambda x: w(x) * np.log(x))
    w0, w1 = float(amplitude[0]) ** 2, float(amplitude[-1]) ** 2
    pieces = [_head(t[0], w0, head_power)]
    if tail_power is not None:
        pieces.append(_tail(t[-1], w1, tail_power))
    for m, s, lt in pieces:
        norm += m
        w_ln_w += s
        ln_t += lt
    return norm, -w_ln_w, ln_t


def _fit_tail(p, w):
    keep = w > 1e-300
    p, w = p[keep], w[keep]
    if p.size < 8:
        return None
    k = max(8, p.size // 20)
    slope = np.polyfit(np.log(p[-k:]), np.log(w[-k:]), 1)[0]
    return -float(slope)


def _effective_p_max(state, p_min, limit, cfg):
    # Stop the momentum grid where the density has fallen to the noise floor,
    # so that fast-decaying states do not spread the samples thin.
    probe = np.geomspace(max(p_min, 1e-2 * limit), limit, 48)
    w = hankel_transform(state, probe, cfg).magnitude ** 2 * probe
    live = np.flatnonzero(w > 1e-20 * np.max(w))
    return float(min(limit, 1.5 * probe[live[-1]]))


def verify_state(state, angular, cfg=None, *, p_points=801, p_min=1e-4, p_max=None,
                 tolerance=MARGIN_TOLERANCE):
    """Entropy report and inequality flags for a :class:`NumericRadialState`.

    Parameters
    ----------
    state : NumericRadialState
    angular : AngularState
        Must share ``D`` and ``l`` with ``state``.
    cfg : QuadConfig, optional
        Tolerances of the Hankel integrals and the angular entropy.
    p_points : int
        Momentum samples; the grid runs from ``p_min`` to the bandwidth
        limit of the position grid unless ``p_max`` is given.
    tolerance : float
        An inequality passes when its margin is at least ``-tolerance``.

    Raises
    ------
    NotNormalized
        If either density integrates to 1 only to worse than 1e-6.
    NonConvergence
        If the momentum tail decays too slowly to extrapolate.
    """
    cfg = cfg or DEFAULT
    if angular.D != state.D or angular.l != state.l:
        raise ValueError(
            f"angular state (D={angular.D}, l={angular.l}) does not match "
            f"the radial state (D={state.D}, l={state.l})"
        )
    power = 2.0 * state.L + 2.0
    norm_r, S_w, ln_r = density_moments(state.r, state.u, power, None, cfg)

    limit = BANDWIDTH_LIMIT / state.r_step * 0.999
    p_max = _effective_p_max(state, p_min, limit, cfg) if p_max is None else min(p_max, limit)
    grid = _Grid(p_min, p_max, p_points, 1.0)
    ht = hankel_transform(state, grid.r, cfg)
    wt = ht.magnitude**2
    k = None
    # Only a tail carrying resolvable mass is extrapolated; a Gaussian tail
    # is at the noise floor by the bandwidth limit.
    if wt[-1] * p_max > TAIL_MASS_FLOOR:
        k = _fit_tail(grid.r, wt)
        if k is None or k <= 1.5:
            raise NonConvergence(
                f"momentum density decays too slowly near p={p_max:.4g} to extrapolate (exponent {k})"
            )
    norm_p, S_wt, ln_p = density_moments(grid.r, ht.values, power, k, cfg)
    for norm in (norm_r, norm_p):
        if abs(norm - 1.0) > 1e-6:
            raise NotNormalized(norm)

    bound = central_bound(angular, cfg)
    report = assemble_report(NUMERIC, state.node_count, angular, math.nan, S_w, S_wt, ln_r, ln_p, bound)
    margins = report.margins()
    passed = {name: value >= -tolerance for name, value in margins.items()}
    return VerificationReport(report, state.energy, margins, passed, norm_r, norm_p, p_max, ht)
