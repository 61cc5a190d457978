import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropic_central.bounds import bbm_bound
from entropic_central.errors import InvalidQuantumNumbers
from entropic_central.hyperangular import AngularState
from entropic_central.quadrature import integrate_semiinfinite
from entropic_central.states import (
    EntropyReport,
    QuantumStateSpec,
    entropy_report,
    momentum_radial_density,
    radial_density,
    sweep,
)

MARGIN = -1e-7


def spec(family, n, l, D=3, lam=1.0, m=0):
    mu = (l,) + (0,) * (D - 3) + (m,) if D > 2 else (l,)
    if family == "hydrogenic":
        return QuantumStateSpec.hydrogenic(n, *mu, D=D)
    return QuantumStateSpec.oscillator(n, *mu, D=D, lam=lam)


def all_specs(max_D=5, max_n=6):
    out = []
    for D in range(2, max_D + 1):
        out += [spec("hydrogenic", n, l, D) for n in range(1, max_n + 1) for l in range(n)]
        out += [spec("oscillator", n, l, D) for n in range(max_n + 1) for l in range(7)]
    return out


def test_normalization_everywhere():
    worst = 0.0
    for s in all_specs():
        for dens in (radial_density(s), momentum_radial_density(s)):
            worst = max(worst, abs(integrate_semiinfinite(dens.pdf, None, dens.nodes).value - 1.0))
    assert worst < 1e-8


@pytest.mark.parametrize(
    "s, which, closed",
    [
        (spec("hydrogenic", 1, 0), "r", lambda r: 4 * r**2 * np.exp(-2 * r)),
        (spec("hydrogenic", 1, 0), "p", lambda p: 32 * p**2 / (math.pi * (1 + p**2) ** 4)),
        (spec("oscillator", 0, 0), "r", lambda r: 4 / math.sqrt(math.pi) * r**2 * np.exp(-(r**2))),
        (spec("oscillator", 0, 0), "p", lambda p: 4 / math.sqrt(math.pi) * p**2 * np.exp(-(p**2))),
        (spec("hydrogenic", 2, 1), "r", lambda r: r**4 * np.exp(-r) / 24),
        (spec("hydrogenic", 2, 0), "r", lambda r: r**2 * (2 - r) ** 2 * np.exp(-r) / 8),
    ],
)
def test_closed_forms(s, which, closed):
    dens = radial_density(s) if which == "r" else momentum_radial_density(s)
    x = np.linspace(0.01, 12.0, 200)
    assert np.allclose(dens.pdf(x), closed(x), rtol=1e-12, atol=1e-15)


def test_logpdf_consistent_and_finite_in_tail():
    for s in (spec("oscillator", 2, 1), spec("hydrogenic", 3, 1), spec("hydrogenic", 4, 0, D=4)):
        for dens in (radial_density(s), momentum_radial_density(s)):
            x = np.array([0.3, 1.1, 2.5])
            x = x[~np.isin(x, dens.nodes)]
            assert np.allclose(dens.logpdf(x), np.log(dens.pdf(x)), atol=1e-10)
        far = radial_density(spec("oscillator", 0, 0)).logpdf(np.array([40.0]))
        assert np.isfinite(far).all()


def test_nodes_are_zeros():
    s = spec("hydrogenic", 4, 1)
    w = radial_density(s)
    assert len(w.nodes) == 2
    assert np.max(np.abs(w.amplitude(np.asarray(w.nodes)))) < 1e-12


def laguerre_sum(k, a, x):
    return sum((-1) ** j * mp.binomial(k + a, k - j) * x**j / mp.factorial(j) for j in range(k + 1))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(2, 5))
def test_hydrogenic_matches_mpmath_normalization(n_r, l, D):
    # Independent normalization: integrate the unnormalized Laguerre form with mpmath.
    n = n_r + l + 1
    s = spec("hydrogenic", n, l, D)
    eta = s.eta
    with mp.workdps(25):
        shape = lambda r: mp.exp(-2 * r / eta) * (2 * r / eta) ** (2 * l) * laguerre_sum(n - l - 1, 2 * l + D - 2, 2 * r / eta) ** 2 * r ** (D - 1)
        norm = mp.quad(shape, [0, 5 * eta, mp.inf])
        r = mp.mpf("1.3")
        expected = float(shape(r) / norm)
    assert radial_density(s).pdf(np.array([1.3]))[0] == pytest.approx(expected, rel=1e-10)


def test_oscillator_lambda_scaling():
    s1, s2 = spec("oscillator", 2, 1, lam=1.0), spec("oscillator", 2, 1, lam=2.0)
    r = np.linspace(0.1, 3.0, 20)
    # w_lam(r) = sqrt(lam) w_1(sqrt(lam) r); momentum uses 1/lam.
    assert np.allclose(radial_density(s2).pdf(r), math.sqrt(2.0) * radial_density(s1).pdf(math.sqrt(2.0) * r))
    assert np.allclose(momentum_radial_density(s2).pdf(r), radial_density(s1).pdf(r / math.sqrt(2.0)) / math.sqrt(2.0))


def test_oscillator_ground_state_sum():
    rep = entropy_report(spec("oscillator", 0, 0))
    assert rep.sum == pytest.approx(3.0 * (1.0 + math.log(math.pi)), abs=1e-6)
    assert rep.ratio == pytest.approx(1.154, abs=0.005)


def test_hydrogen_ground_state_position_entropy():
    assert entropy_report(spec("hydrogenic", 1, 0)).S_rho == pytest.approx(3.0 + math.log(math.pi), abs=1e-8)


def test_hydrogen_ground_state_momentum_entropy():
    # gamma(p) = 8 / (pi^2 (1+p^2)^4); entropy by direct mpmath quadrature.
    with mp.workdps(30):
        g = lambda p: 8 / (mp.pi**2 * (1 + p**2) ** 4)
        expected = -mp.quad(lambda p: 4 * mp.pi * p**2 * g(p) * mp.log(g(p)), [0, 1, mp.inf])
    assert entropy_report(spec("hydrogenic", 1, 0)).S_gamma == pytest.approx(float(expected), abs=1e-8)


@pytest.mark.parametrize("n, l", [(0, 0), (1, 2), (3, 1)])
@pytest.mark.parametrize("D", [2, 3, 5])
def test_lambda_invariance(n, l, D):
    sums = [entropy_report(spec("oscillator", n, l, D, lam)).sum for lam in (0.5, 1.0, 2.0)]
    assert max(sums) - min(sums) <= 1e-7


def test_lambda_shifts_each_entropy():
    D = 3
    a, b = entropy_report(spec("oscillator", 1, 1, lam=1.0)), entropy_report(spec("oscillator", 1, 1, lam=2.0))
    assert b.S_rho - a.S_rho == pytest.approx(-0.5 * D * math.log(2.0), abs=1e-8)
    assert b.S_gamma - a.S_gamma == pytest.approx(0.5 * D * math.log(2.0), abs=1e-8)


def _check_inequalities(rep):
    margins = rep.margins()
    assert margins["bbm"] >= MARGIN
    assert margins["central"] >= MARGIN
    assert margins["logarithmic"] >= MARGIN
    assert margins["radial_shannon"] >= MARGIN
    assert rep.sum >= bbm_bound(rep.D) + MARGIN


def test_all_inequalities_on_sweep():
    specs = [s for s in all_specs(max_D=5, max_n=4)]
    rows = sweep(specs, max_workers=4)
    assert all(row.ok for row in rows)
    for row in rows:
        _check_inequalities(row.report)


def test_assembly_identities():
    for s in (spec("hydrogenic", 3, 2, m=-1), spec("oscillator", 2, 3, D=4)):
        rep = entropy_report(s)
        D = rep.D
        assert abs(rep.S_rho - (rep.S_w + (D - 1) * rep.ln_r + rep.S_Y)) <= 1e-12
        assert abs(rep.S_gamma - (rep.S_wt + (D - 1) * rep.ln_p + rep.S_Y)) <= 1e-12
        assert rep.ratio == rep.sum / rep.bound.central


def test_ratios_at_least_one_and_decreasing_in_l():
    for family, ns in (("hydrogenic", range(1, 5)), ("oscillator", range(0, 4))):
        for n in ns:
            ls = range(n) if family == "hydrogenic" else range(6)
            ratios = [entropy_report(spec(family, n, l)).ratio for l in ls]
            assert min(ratios) >= 1.0 - 1e-7
            assert all(b < a for a, b in zip(ratios, ratios[1:]))


def test_sweep_preserves_order_and_flags_errors():
    good = [spec("hydrogenic", 2, 1), spec("oscillator", 1, 0)]
    numeric = QuantumStateSpec("numeric", 0, AngularState.of(3, 0, 0))
    rows = sweep([good[0], numeric, good[1]])
    assert [row.spec for row in rows] == [good[0], numeric, good[1]]
    assert rows[0].ok and rows[2].ok and not rows[1].ok
    assert isinstance(rows[0].report, EntropyReport)
    assert rows[1].error


def test_sweep_parallel_matches_serial():
    specs = [spec("hydrogenic", n, l) for n in range(1, 4) for l in range(n)]
    serial = [r.report.sum for r in sweep(specs)]
    parallel = [r.report.sum for r in sweep(specs, max_workers=3)]
    assert serial == parallel


@pytest.mark.parametrize(
    "family, n, l, lam",
    [("hydrogenic", 0, 0, 1.0), ("hydrogenic", 2, 2, 1.0), ("oscillator", -1, 0, 1.0), ("oscillator", 0, 0, 0.0), ("cubic", 1, 0, 1.0)],
)
def test_invalid_specs(family, n, l, lam):
    with pytest.raises(InvalidQuantumNumbers):
        QuantumStateSpec(family, n, AngularState.of(3, l, 0), lam)


def test_energies():
    assert spec("hydrogenic", 2, 1).energy == pytest.approx(-0.125)
    assert spec("hydrogenic", 1, 0, D=4).energy == pytest.approx(-0.5 / 1.5**2)
    assert spec("oscillator", 1, 2, lam=2.0).energy == pytest.approx(2.0 * (2 + 2 + 1.5))
