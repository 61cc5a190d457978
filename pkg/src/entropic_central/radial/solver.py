"""Bound states of the D-dimensional radial Schrödinger equation

    -u''/2 + [L(L+1)/(2 r^2) + V(r)] u = E u,    L = l + (D-3)/2.

The equation is integrated on the mixed grid ``x = ln r + r/beta``, which is
logarithmic near the origin and uniform for ``r >> beta``.  With
``r' = dr/dx`` and ``u = sqrt(r') y`` the first derivative drops out:

    y'' + [r'^2 Q(r) + {r; x}/2] y = 0,    Q = 2(E - V) - L(L+1)/r^2,

where ``{r; x}`` is the Schwarzian derivative of the grid map.  This form is
propagated with Numerov's method at fixed step in ``x``.  The eigenvalue is
bracketed by counting nodes of the outward solution (Sturm oscillation) and
polished by matching outward and inward solutions at the outer classical
turning point.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

from ..errors import NoBoundState, StiffOrigin

__all__ = ["SolverConfig", "NumericRadialState", "solve_radial", "simpson_weights"]

_BIG = 1e150


class _BoxTooSmall(NoBoundState):
    """The requested level lies above the potential at the box edge."""


@dataclass(frozen=True)
class SolverConfig:
    """Grid and convergence settings of :func:`solve_radial`.

    ``decay_action`` is the WKB action ``int sqrt(2 (V_eff - E)) dr`` required
    between the outer turning point and the end of the box; the box is grown
    or trimmed until the action lies between it and twice it.
    """

    points: int = 4001
    r_min: float = 1e-6
    beta: float = 1.0
    energy_tol: float = 1e-10
    decay_action: float = 20.0
    max_regrids: int = 8

    def __post_init__(self):
        if self.points < 101:
            raise ValueError("points must be >= 101")
        if not 0 < self.r_min < self.beta:
            raise ValueError("need 0 < r_min < beta")
        if not self.energy_tol > 0 or not self.decay_action > 0:
            raise ValueError("energy_tol and decay_action must be positive")


SOLVER_DEFAULT = SolverConfig()


def simpson_weights(n, h):
    """Composite Simpson weights for ``n`` equispaced points (``n`` odd)."""
    if n % 2 == 0:
        raise ValueError("Simpson weights need an odd number of points")
    w = np.full(n, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * h / 3.0


class _Grid:
    def __init__(self, r_min, r_max, points, beta):
        if points % 2 == 0:
            points += 1
        self.beta = beta
        x0 = math.log(r_min) + r_min / beta
        x1 = math.log(r_max) + r_max / beta
        self.x = np.linspace(x0, x1, points)
        self.h = self.x[1] - self.x[0]
        self.r = _r_of_x(self.x, beta)
        r, b = self.r, beta
        self.rp = r * b / (r + b)
        g_r = b * b / (r + b) ** 2
        g_rr = -2.0 * b * b / (r + b) ** 3
        self.schwarz = self.rp * g_rr - 0.5 * g_r**2


def _r_of_x(x, beta):
    # Newton on ln r + r/beta = x, started from whichever branch dominates.
    r = np.where(x < 1.0, np.exp(np.minimum(x, 1.0)), np.maximum(beta * x, 1e-300))
    for _ in range(60):
        f = np.log(r) + r / beta - x
        step = f / (1.0 / r + 1.0 / beta)
        r = np.maximum(r - step, 0.1 * r)
        if np.max(np.abs(step / r)) < 1e-15:
            break
    return r


@dataclass(frozen=True)
class NumericRadialState:
    """Normalized reduced radial eigenfunction on the solver grid.

    ``x`` is the uniform computational coordinate and ``drdx`` the Jacobian,
    so ``int f dr = int f(r(x)) drdx dx``.
    """

    r: np.ndarray
    u: np.ndarray
    energy: float
    l: int
    D: int
    node_count: int
    x: np.ndarray
    drdx: np.ndarray

    @property
    def L(self):
        return self.l + 0.5 * (self.D - 3)

    @property
    def weights(self):
        """Quadrature weights in ``r``: ``sum(weights * f(r)) ~ int f dr``."""
        return simpson_weights(self.x.size, self.x[1] - self.x[0]) * self.drdx

    @property
    def r_step(self):
        return float(np.max(np.diff(self.r)))

    def norm(self):
        return float(self.weights @ self.u**2)

    def as_function(self):
        """``(u(r), support_end, break_points)`` for the Hankel transform.

        Inside the grid ``u`` is a cubic spline in ``x``; below the first
        point it follows ``r^(L+1)`` and beyond the box it vanishes.
        """
        spline = CubicSpline(self.x, self.u)
        r0, u0, power = self.r[0], self.u[0], self.L + 1.0
        r_end = self.r[-1]
        grid_beta = _grid_beta(self)

        def u(r):
            r = np.asarray(r, dtype=float)
            out = np.zeros_like(r)
            inner = r < r0
            mid = (~inner) & (r <= r_end)
            out[inner] = u0 * (r[inner] / r0) ** power
            out[mid] = spline(np.log(r[mid]) + r[mid] / grid_beta)
            return out

        idx = np.linspace(0, self.r.size - 1, 33).astype(int)[1:-1]
        return u, r_end, self.r[idx]


def _grid_beta(state):
    # drdx = r b / (r + b)  =>  b = r drdx / (r - drdx); use the far end for accuracy.
    r, g = state.r[-1], state.drdx[-1]
    return float(r * g / (r - g))


class _Problem:
    def __init__(self, pot, L, grid):
        self.grid = grid
        r = grid.r
        self.V = np.asarray(pot(r), dtype=float) * np.ones_like(r)
        if not np.all(np.isfinite(self.V)):
            bad = r[~np.isfinite(self.V)][0]
            raise ValueError(f"potential is not finite at r={bad:.6g}")
        self.L = L
        self.veff = self.V + L * (L + 1.0) / (2.0 * r * r)
        rp2 = grid.rp**2
        h2 = grid.h**2 / 12.0
        # K(E) = A E + B; Numerov coefficients f = 1 + h^2 K / 12.
        self.fa = (h2 * 2.0 * rp2).tolist()
        self.fb = (h2 * (rp2 * (-2.0 * self.V - L * (L + 1.0) / (r * r)) + 0.5 * grid.schwarz)).tolist()
        # Frobenius start u ~ r^(L+1) (1 + q r/(L+1)) with q = lim r V.  The
        # linear term matters when L = -1/2, where the irregular solution
        # r^(1/2) ln r is not suppressed near the origin.
        q = float(r[0] * self.V[0])
        r0, r1 = float(r[0]), float(r[1])
        ratio = math.exp(
            (L + 1.0) * (math.log(r0) - math.log(r1))
            - 0.5 * (math.log(grid.rp[0]) - math.log(grid.rp[1]))
        )
        ratio *= (1.0 + q * r0 / (L + 1.0)) / (1.0 + q * r1 / (L + 1.0))
        self.y0, self.y1 = ratio, 1.0

    def _f(self, E):
        fa, fb = self.fa, self.fb
        return [1.0 + a * E + b for a, b in zip(fa, fb)]

    def count_nodes(self, E):
        """Sign changes of the outward solution over the whole box."""
        f = self._f(E)
        y_prev, y = self.y0, self.y1
        nodes = 0
        sign = 1.0
        for i in range(1, len(f) - 1):
            y_next = ((12.0 - 10.0 * f[i]) * y - f[i - 1] * y_prev) / f[i + 1]
            if y_next * sign < 0.0:
                nodes += 1
                sign = -sign
            y_prev, y = y, y_next
            if abs(y) > _BIG:
                y_prev /= _BIG
                y /= _BIG
        return nodes

    def outward(self, E, stop):
        f = self._f(E)
        ys = np.empty(stop + 1)
        ys[0], ys[1] = self.y0, self.y1
        y_prev, y = self.y0, self.y1
        for i in range(1, stop):
            y_next = ((12.0 - 10.0 * f[i]) * y - f[i - 1] * y_prev) / f[i + 1]
            ys[i + 1] = y_next
            y_prev, y = y, y_next
            if abs(y) > _BIG:
                ys[: i + 2] /= _BIG
                y_prev /= _BIG
                y /= _BIG
        return ys

    def inward(self, E, stop):
        f = self._f(E)
        n = len(f)
        ys = np.zeros(n - stop)
        # ys[k] holds grid index stop + k.
        ys[-1], ys[-2] = 0.0, 1.0
        y_next, y = 0.0, 1.0
        for i in range(n - 2, stop, -1):
            y_prev = ((12.0 - 10.0 * f[i]) * y - f[i + 1] * y_next) / f[i - 1]
            ys[i - 1 - stop] = y_prev
            y_next, y = y, y_prev
            if abs(y) > _BIG:
                ys[i - 1 - stop:] /= _BIG
                y_next /= _BIG
                y /= _BIG
        return ys

    def turning_index(self, E):
        allowed = np.flatnonzero(self.veff < E)
        if allowed.size == 0:
            return None
        return int(allowed[-1])

    def defect(self, E, m):
        """Relative slope mismatch at grid index ``m``; zero at an eigenvalue."""
        out = self.outward(E, m + 1)
        inn = self.inward(E, m - 1)
        scale = out[m] / inn[1]
        inn = inn * scale
        return (out[m + 1] - inn[2] - (out[m - 1] - inn[0])) / (2.0 * abs(out[m])), out, inn

    def wkb_action(self, E, m):
        g = self.grid
        k = np.sqrt(np.maximum(2.0 * (self.veff[m:] - E), 0.0))
        return float(trapezoid(k * g.rp[m:], g.x[m:]))


def _check_origin(pot, L, cfg):
    r = np.array([cfg.r_min, 2.0 * cfg.r_min])
    v = np.asarray(pot(r), dtype=float) * np.ones(2)
    if not np.all(np.isfinite(v)):
        raise StiffOrigin(f"potential is not finite near the origin (r={cfg.r_min:g})")
    # The power-law start u ~ r^(L+1) needs V negligible against the centrifugal term.
    strength = float(np.max(np.abs(v) * r * r))
    if strength > 0.05 * max(abs(L + 0.5) ** 2, 0.25):
        raise StiffOrigin(
            f"r^2 |V| = {strength:.3g} near the origin is not small against the "
            f"centrifugal index (L = {L:g}); the r^(L+1) start is invalid"
        )
    if L < -0.5:
        raise StiffOrigin(f"L = {L:g} < -1/2 has no regular solution at the origin")


def _bisect(problem, n_r, tol):
    veff = problem.veff
    e_hi = float(veff[-1])
    if problem.count_nodes(e_hi) < n_r + 1:
        raise _BoxTooSmall(
            f"no state with {n_r} radial node(s) below the box threshold E = {e_hi:.6g}"
        )
    # Below this energy the Numerov factor 1 + h^2 K / 12 turns negative and
    # the forbidden-region solution produces spurious sign changes.
    g = problem.grid
    e_floor = -3.0 / (g.h**2 * float(np.max(g.rp**2)))
    e_lo = max(float(np.min(veff)), e_floor)
    if problem.count_nodes(e_lo) > n_r:
        raise NoBoundState(
            f"level with {n_r} node(s) lies below E = {e_lo:.6g}, outside what the grid resolves"
        )
    while e_hi - e_lo > tol * max(1.0, abs(e_lo), abs(e_hi)) and e_hi - e_lo > tol:
        mid = 0.5 * (e_lo + e_hi)
        if problem.count_nodes(mid) > n_r:
            e_hi = mid
        else:
            e_lo = mid
    return e_lo, e_hi


def _solve_on(pot, L, r_max, n_r, cfg):
    grid = _Grid(cfg.r_min, r_max, cfg.points, cfg.beta)
    problem = _Problem(pot, L, grid)
    lo, hi = _bisect(problem, n_r, cfg.energy_tol)
    E = 0.5 * (lo + hi)
    m = problem.turning_index(E)
    n = grid.r.size
    if m is None or m < 2:
        raise NoBoundState("no classically allowed region for the bracketed energy")
    m = min(m, n - 4)
    # One secant step on the matching defect, kept only if it stays in the bracket.
    d0, out, inn = problem.defect(E, m)
    dE = max(1e-7 * max(1.0, abs(E)), 10 * cfg.energy_tol)
    d1 = problem.defect(E + dE, m)[0]
    if d1 != d0:
        E_new = E - d0 * dE / (d1 - d0)
        if lo - cfg.energy_tol <= E_new <= hi + cfg.energy_tol:
            E = E_new
            _, out, inn = problem.defect(E, m)
    y = np.concatenate([out[: m - 1], inn])
    u = y * np.sqrt(grid.rp)
    norm = simpson_weights(n, grid.h) @ (u * u * grid.rp)
    u = u / math.sqrt(norm)
    action = problem.wkb_action(E, problem.turning_index(E) or m)
    return grid, u, E, action


def _count_sign_changes(u):
    s = np.sign(u[np.abs(u) > 1e-12 * np.max(np.abs(u))])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def solve_radial(pot, l, n_r, cfg=None):
    """Eigenstate of ``pot`` with angular index ``l`` and ``n_r`` radial nodes.

    Parameters
    ----------
    pot : PotentialSpec
        Potential and dimension; ``pot.r_max`` seeds the box size.
    l : int
        Hyperangular quantum number (``|l|`` is used for D=2).
    n_r : int
        Number of interior nodes.
    cfg : SolverConfig, optional

    Returns
    -------
    NumericRadialState

    Raises
    ------
    NoBoundState
        If no level with ``n_r`` nodes lies below the potential at the box edge.
    StiffOrigin
        If the potential is too singular for the ``r^(L+1)`` start.
    """
    cfg = cfg or SOLVER_DEFAULT
    D = pot.D
    l = abs(int(l)) if D == 2 else int(l)
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    if int(n_r) != n_r or n_r < 0:
        raise ValueError(f"n_r must be a non-negative integer, got {n_r!r}")
    L = l + 0.5 * (D - 3)
    _check_origin(pot, L, cfg)
    r_max = float(pot.r_max)
    action = math.nan
    for _ in range(cfg.max_regrids):
        try:
            grid, u, E, action = _solve_on(pot, L, r_max, n_r, cfg)
        except _BoxTooSmall:
            # A level can hide above the edge value only while the edge is still rising.
            if not _edge_rising(pot, L, r_max):
                raise
            r_max *= 2.0
            continue
        if action < cfg.decay_action:
            # Beyond the turning point the action grows roughly linearly in r.
            r_max *= 1.0 + max(0.25, (cfg.decay_action - action) / max(action, 1.0))
            continue
        if action > 2.0 * cfg.decay_action:
            r_max = _trim(grid, u, E, pot, L, cfg, r_max)
            if r_max is not None:
                continue
        break
    else:
        raise NoBoundState(
            f"could not size the radial box: WKB decay action {action:.3g} after {cfg.max_regrids} attempts"
        )
    nodes = _count_sign_changes(u[1:-1])
    if nodes != n_r:
        raise NoBoundState(f"converged state has {nodes} nodes, expected {n_r}")
    return NumericRadialState(grid.r, u, float(E), l, D, nodes, grid.x, grid.rp)


def _edge_rising(pot, L, r_max):
    r = np.array([r_max, 2.0 * r_max])
    veff = np.asarray(pot(r), dtype=float) * np.ones(2) + L * (L + 1.0) / (2.0 * r * r)
    return bool(np.all(np.isfinite(veff)) and veff[1] - veff[0] > 1e-6 * max(1.0, abs(veff[0])))


def _trim(grid, u, E, pot, L, cfg, r_max):
    r = grid.r
    veff = np.asarray(pot(r), dtype=float) * np.ones_like(r) + L * (L + 1.0) / (2.0 * r * r)
    allowed = np.flatnonzero(veff < E)
    m = int(allowed[-1])
    k = np.sqrt(np.maximum(2.0 * (veff[m:] - E), 0.0))
    action = np.concatenate([[0.0], np.cumsum(0.5 * (k[1:] + k[:-1]) * np.diff(r[m:]))])
    target = 1.3 * cfg.decay_action
    idx = int(np.searchsorted(action, target))
    if idx >= action.size:
        return None
    new = float(r[m + idx])
    return new if new < 0.9 * r_max else None
