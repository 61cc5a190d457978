"""Numerical Hankel transform of reduced radial functions,

    u~(p) = int_0^inf sqrt(r p) J_nu(r p) u(r) dr,    nu = l + D/2 - 1,

which maps the reduced position eigenfunction to its momentum counterpart
up to the phase ``(-i)^l``.  The range is cut at the zeros ``j_{nu,k}/p`` of
the kernel so that each piece carries one half-oscillation; for functions of
unbounded support the partial sums over those pieces are extrapolated with
Wynn's epsilon algorithm.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import jv

from ..errors import BandwidthExceeded, NonConvergence
from ..quadrature import DEFAULT, QuadResult, integrate_pieces

__all__ = ["HankelResult", "hankel_transform", "bessel_zeros", "wynn_epsilon", "BANDWIDTH_LIMIT"]

BANDWIDTH_LIMIT = 0.25
_BLOCK = 64
_MAX_TERMS = 8192
_GIVE_UP = 512


@lru_cache(maxsize=128)
def _zeros_cached(nu, count):
    t_max = (count + 0.5 * nu + 2.0) * math.pi + nu + 2.0
    # Consecutive zeros of J_nu are more than pi/2 apart for nu >= -1/2.
    t = np.arange(0.05, t_max, 0.2)
    with np.errstate(all="ignore"):
        j = jv(nu, t)
    idx = np.flatnonzero(np.sign(j[:-1]) * np.sign(j[1:]) < 0)
    lo, hi = t[idx], t[idx + 1]
    f_lo = jv(nu, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        f_mid = jv(nu, mid)
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    roots = 0.5 * (lo + hi)
    roots.setflags(write=False)
    return roots[:count]


def bessel_zeros(nu, count):
    """First ``count`` positive zeros of ``J_nu`` for real ``nu >= -1/2``."""
    if nu < -0.5:
        raise ValueError(f"nu must be >= -1/2, got {nu}")
    if count <= 0:
        return np.empty(0)
    size = 1 << max(6, int(count - 1).bit_length())
    return _zeros_cached(float(nu), size)[:count]


def wynn_epsilon(partial_sums):
    """Limit estimate of a sequence by Wynn's epsilon algorithm.

    Returns ``(estimate, error)`` where the error is the difference between
    the two most refined even-column entries.
    """
    s = [float(v) for v in partial_sums]
    if len(s) < 3:
        return s[-1], math.inf
    prev = [0.0] * (len(s) + 1)
    cur = s
    estimates = [s[-1]]
    for k in range(1, len(s)):
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if d == 0.0:
                return cur[i + 1], 0.0
            nxt.append(prev[i + 1] + 1.0 / d)
        prev, cur = cur, nxt
        if k % 2 == 0 and cur:
            estimates.append(cur[-1])
        if len(cur) < 2:
            break
    if len(estimates) < 2:
        return estimates[-1], math.inf
    return estimates[-1], abs(estimates[-1] - estimates[-2])


@dataclass(frozen=True)
class HankelResult:
    """Transform sampled on ``p``.

    ``values`` keeps the sign of the real transform with the ``(-i)^l``
    phase removed; ``magnitude`` is ``|u~(p)|``.
    """

    p: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    l: int
    D: int

    @property
    def magnitude(self):
        return np.abs(self.values)

    @property
    def r_step(self):
        return float(np.max(np.diff(self.p)))

    def as_function(self):
        """``(u~(p), support_end, break_points)``; spline in ``p``, zero outside the grid."""
        spline = CubicSpline(self.p, self.values)
        p0, p_end = self.p[0], self.p[-1]
        power = abs(self.l) + 0.5 * (self.D - 1)

        def f(p):
            p = np.asarray(p, dtype=float)
            out = np.zeros_like(p)
            inner = p < p0
            mid = (~inner) & (p <= p_end)
            out[inner] = self.values[0] * (p[inner] / p0) ** power
            out[mid] = spline(p[mid])
            return out

        idx = np.linspace(0, self.p.size - 1, 33).astype(int)[1:-1]
        return f, p_end, self.p[idx]


def _source(source, l, D, support, points):
    if hasattr(source, "as_function"):
        fn, end, structure = source.as_function()
        return fn, end, structure, source.l, source.D, source.r_step
    if l is None or D is None:
        raise ValueError("a callable source needs l and D")
    end = math.inf if support is None else float(support)
    structure = np.asarray(points if points is not None else 2.0 ** np.arange(-6, 7), dtype=float)
    return source, end, structure, l, D, None


def _finite(g, p, nu, end, structure, cfg):
    count = int(end * p / math.pi + nu + 4)
    z = bessel_zeros(nu, count) / p
    inner = np.concatenate([z[z < end], structure[structure < end]])
    edges = np.unique(np.concatenate([[0.0], inner, [end]]))
    result, _ = integrate_pieces(g, edges, cfg)
    return result


def _decays_beyond(fn, start, reach):
    """Whether ``|u|`` far beyond the source scale is below its size near ``start``."""
    near = np.abs(fn(np.geomspace(0.5 * start, start, 8)))
    far = np.abs(fn(np.geomspace(max(reach, 4.0 * start), 4.0 * max(reach, 4.0 * start), 8)))
    return bool(np.all(np.isfinite(far)) and far.max() < 0.5 * near.max())


def _infinite(g, fn, p, nu, structure, cfg):
    start = 0.0
    total = 0.0
    err = 0.0
    evals = 0
    sums = []
    k = 0
    reach = 4.0 * float(np.max(structure, initial=1.0))
    while True:
        z = bessel_zeros(nu, k + _BLOCK)[k:] / p
        inner = structure[(structure > start) & (structure < z[-1])]
        edges = np.unique(np.concatenate([[start], inner, z]))
        result, pieces = integrate_pieces(g, edges, cfg)
        evals += result.evaluations
        err += result.error_estimate
        # Partial sums at the kernel zeros only; structure points refine but do not count.
        cum = total + np.cumsum(pieces)
        at_zero = np.isin(edges[1:], z)
        sums.extend(cum[at_zero].tolist())
        total = float(cum[-1])
        start = float(z[-1])
        k += _BLOCK
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        tail = np.abs(np.diff(sums[-4:])) if len(sums) >= 4 else [math.inf]
        if max(tail) <= tol:
            return QuadResult(total, err, evals, True)
        estimate, acc_err = wynn_epsilon(sums[-24:])
        # Epsilon also assigns values to divergent and merely bounded
        # oscillating series; accept it only when the terms shrink or the
        # source is seen to decay further out.
        terms = np.abs(np.diff([0.0] + sums))
        level = np.convolve(terms, np.full(8, 0.125), mode="valid")
        shrinking = level.size > 16 and level[-1] < 0.9 * level.max()
        accurate = acc_err <= max(cfg.abs_tol, cfg.rel_tol * abs(estimate))
        if accurate and (shrinking or _decays_beyond(fn, start, reach)):
            return QuadResult(float(estimate), err + acc_err, evals, True)
        # Terms may legitimately grow while r is below the source's own scale.
        stalled = level.size > 0 and level[-1] >= 0.99 * level.max() and start > reach
        if k >= _MAX_TERMS or (k >= _GIVE_UP and stalled):
            raise NonConvergence(
                f"Hankel integral at p={p:.6g} did not converge after {k} half-oscillations "
                f"(accelerated estimate {estimate:.6g} +- {acc_err:.2g})",
                QuadResult(float(estimate), err + acc_err, evals, False),
            )


def hankel_transform(source, p_grid, cfg=None, *, l=None, D=None, support=None, points=None,
                     check_bandwidth=True):
    """Hankel transform of order ``l + D/2 - 1`` sampled at ``p_grid``.

    Parameters
    ----------
    source : NumericRadialState, HankelResult or callable
        Sampled sources are interpolated by cubic splines and vanish beyond
        their grid.  A callable ``u(r)`` needs ``l`` and ``D``; its support
        is ``[0, support]`` or unbounded when ``support`` is None.
    p_grid : array_like
        Increasing positive momenta.
    cfg : QuadConfig, optional
    points : sequence of float, optional
        Break points resolving the structure of a callable ``u``.
    check_bandwidth : bool
        Enforce ``p_max * r_step < 1/4`` for sampled sources.

    Returns
    -------
    HankelResult

    Raises
    ------
    BandwidthExceeded
        If ``p_grid`` reaches beyond what the source grid resolves.
    NonConvergence
        If the accelerated series over half-oscillations does not settle.
    """
    cfg = cfg or DEFAULT
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.ndim != 1 or p_grid.size == 0:
        raise ValueError("p_grid must be a non-empty 1-d array")
    if np.any(p_grid <= 0) or np.any(np.diff(p_grid) <= 0):
        raise ValueError("p_grid must be strictly increasing and positive")
    fn, end, structure, l, D, r_step = _source(source, l, D, support, points)
    if check_bandwidth and r_step is not None and p_grid[-1] * r_step >= BANDWIDTH_LIMIT:
        raise BandwidthExceeded(
            f"p_max * r_step = {p_grid[-1] * r_step:.3g} >= {BANDWIDTH_LIMIT}; "
            f"the grid resolves momenta up to {BANDWIDTH_LIMIT / r_step:.4g}"
        )
    nu = abs(l) + 0.5 * D - 1.0
    values = np.empty_like(p_grid)
    errors = np.empty_like(p_grid)
    for i, p in enumerate(p_grid):

        def g(r, p=p):
            rp = r * p
            return np.sqrt(rp) * jv(nu, rp) * fn(r)

        if math.isfinite(end):
            res = _finite(g, p, nu, end, structure, cfg)
        else:
            res = _infinite(g, fn, p, nu, structure, cfg)
        values[i], errors[i] = res.value, res.error_estimate
    return HankelResult(p_grid, values, errors, abs(int(l)), int(D))
