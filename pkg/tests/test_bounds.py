import itertools
import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from entropic_central.bounds import (
    bbm_bound,
    central_bound,
    decarli_constant,
    hankel_order,
    log_bound,
    log_decarli_constant,
    renyi_radial_bound,
    shannon_radial_bound,
    shannon_radial_bound_nu,
)
from entropic_central.errors import DomainError
from entropic_central.hyperangular import AngularState

EULER = 0.5772156649015329
BBM3 = 3.0 * (1.0 + math.log(math.pi))


def oracle_decarli(q, nu):
    q, nu = mp.mpf(q), mp.mpf(nu)
    return 2 ** (1 / (2 * q)) * q ** ((nu + mp.mpf(1) / 2 + 1 / q) / 2) / mp.gamma(q / 2 * (nu + mp.mpf(1) / 2) + mp.mpf(1) / 2) ** (1 / q)


def oracle_c_prime(l, D):
    z = mp.mpf(l) + mp.mpf(D) / 2
    return 2 * l + D + 2 * mp.log(mp.gamma(z) / 2) - (2 * l + D - 1) * mp.digamma(z)


def oracle_central(l, D, s_y):
    return oracle_c_prime(l, D) + (D - 1) * (mp.digamma(mp.mpf(2 * l + D) / 4) + mp.log(2)) + 2 * s_y


@pytest.mark.parametrize(
    "D, expected", [(1, 2.1447298858494002), (3, 6.4341896575482006), (4, 8.5789195433976)]
)
def test_bbm_values(D, expected):
    assert bbm_bound(D) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("D", [0, -1, 2.5])
def test_bbm_domain(D):
    with pytest.raises(DomainError):
        bbm_bound(D)


@pytest.mark.parametrize("q, nu", [(2.0, 0.5), (4.0, 0.5), (4.0 / 3.0, 0.5), (2.0, 0.0), (3.7, 12.5), (2.0, 200.5)])
def test_decarli_matches_oracle(q, nu):
    with mp.workdps(30):
        expected = mp.log(oracle_decarli(q, nu))
    assert log_decarli_constant(q, nu) == pytest.approx(float(expected), abs=1e-12)


def test_decarli_closed_forms():
    # A(2; 1/2) = 2^(1/4) 2^(3/4) / Gamma(3/2)^(1/2)
    assert decarli_constant(2.0, 0.5) == pytest.approx(2.0 / math.sqrt(math.sqrt(math.pi) / 2.0), rel=1e-13)
    # A(4; 1/2) = 2^(1/8) 4^(5/8) / Gamma(5/2)^(1/4)
    assert decarli_constant(4.0, 0.5) == pytest.approx(
        2 ** 0.125 * 4 ** 0.625 / (0.75 * math.sqrt(math.pi)) ** 0.25, rel=1e-13
    )


@given(st.floats(1.01, 50.0), st.floats(-0.5, 100.0))
def test_decarli_positive_finite(q, nu):
    a = decarli_constant(q, nu)
    assert math.isfinite(a) and a > 0


@pytest.mark.parametrize("q, nu", [(1.0, 0.5), (0.5, 0.5), (2.0, -0.6)])
def test_decarli_domain(q, nu):
    with pytest.raises(DomainError):
        log_decarli_constant(q, nu)


@pytest.mark.parametrize(
    "l, D, expected",
    [
        (0, 3, 3.0 + 2.0 * math.log(math.sqrt(math.pi) / 4.0) - 2.0 * (2.0 - EULER - 2.0 * math.log(2.0))),
        (1, 3, 5.0 + 2.0 * math.log(0.375 * math.sqrt(math.pi)) - 4.0 * (2.0 - EULER - 2.0 * math.log(2.0) + 2.0 / 3.0)),
        (0, 2, 2.0 - 2.0 * math.log(2.0) + EULER),
        (-3, 2, float(oracle_c_prime(3, 2))),
        (7, 5, float(oracle_c_prime(7, 5))),
        (200, 3, float(oracle_c_prime(200, 3))),
    ],
)
def test_shannon_radial_values(l, D, expected):
    assert shannon_radial_bound(l, D) == pytest.approx(expected, abs=1e-11)


def test_shannon_radial_frozen_values():
    assert shannon_radial_bound(0, 3) == pytest.approx(1.2991612, abs=1e-7)
    assert shannon_radial_bound(1, 3) == pytest.approx(1.3704448, abs=1e-7)


def test_shannon_radial_nu_form():
    for l, D in itertools.product(range(6), range(2, 7)):
        assert shannon_radial_bound(l, D) == shannon_radial_bound_nu(hankel_order(l, D))


@pytest.mark.parametrize("alpha", [1.5, 2.0, 5.0])
@pytest.mark.parametrize("nu", [0.5, 1.5, 7.0])
def test_renyi_matches_oracle(alpha, nu):
    with mp.workdps(40):
        a = mp.mpf(alpha)
        b = a / (2 * a - 1)
        expected = 2 * a * mp.log(oracle_decarli(2 * a, nu)) / (a - 1) + 2 * b * mp.log(oracle_decarli(2 * b, nu)) / (b - 1)
    assert renyi_radial_bound(alpha, nu) == pytest.approx(float(expected), abs=1e-10)


@pytest.mark.parametrize("eps", [1e-3, 1e-4])
@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
def test_renyi_to_shannon_limit(eps, nu):
    gap = abs(renyi_radial_bound(1.0 + eps, nu) - shannon_radial_bound_nu(nu))
    assert gap <= 10.0 * eps


def test_renyi_limit_is_tight():
    # Extrapolating the linear approach to alpha = 1 recovers C' much more closely.
    nu = 1.5
    a, b = renyi_radial_bound(1.0 + 1e-3, nu), renyi_radial_bound(1.0 + 2e-3, nu)
    assert 2.0 * a - b == pytest.approx(shannon_radial_bound_nu(nu), abs=1e-5)


@pytest.mark.parametrize("alpha", [1.0, 0.7])
def test_renyi_domain(alpha):
    with pytest.raises(DomainError):
        renyi_radial_bound(alpha, 0.5)


@pytest.mark.parametrize(
    "l, D, expected",
    [
        (0, 3, -EULER - 3.0 * math.log(2.0) + math.pi / 2.0 + math.log(2.0)),
        (0, 4, -EULER + math.log(2.0)),
        (2, 2, float(mp.digamma(1.5) + mp.log(2))),
    ],
)
def test_log_bound_values(l, D, expected):
    assert log_bound(l, D) == pytest.approx(expected, abs=1e-12)


def test_log_bound_frozen_and_monotone():
    assert log_bound(0, 3) == pytest.approx(-0.392714, abs=1e-6)
    assert log_bound(0, 4) == pytest.approx(0.115932, abs=1e-6)
    values = [log_bound(l, 3) for l in range(12)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("fn", [shannon_radial_bound, log_bound])
@pytest.mark.parametrize("l, D", [(-1, 3), (0, 1), (1, 2.5)])
def test_radial_bound_domain(fn, l, D):
    with pytest.raises(DomainError):
        fn(l, D)


def test_central_frozen_values():
    assert central_bound(AngularState.of(3, 0, 0)).central == pytest.approx(5.5757823, abs=1e-7)
    assert central_bound(AngularState.of(3, 1, 0)).central == pytest.approx(6.4999894, abs=1e-7)


@pytest.mark.parametrize(
    "state", [AngularState.of(3, 0, 0), AngularState.of(3, 1, 0), AngularState.of(3, 4, -2), AngularState.of(5, 3, 2, 1, 0)]
)
def test_central_matches_oracle(state):
    rep = central_bound(state)
    with mp.workdps(30):
        expected = oracle_central(state.l, state.D, mp.mpf(rep.angular_entropy))
    assert rep.central == pytest.approx(float(expected), abs=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 8), st.data())
def test_report_identity(D, l, data):
    if D == 2:
        mu = (data.draw(st.sampled_from((l, -l))),)
    else:
        mu = [l]
        for _ in range(D - 3):
            mu.append(data.draw(st.integers(0, mu[-1])))
        mu.append(data.draw(st.integers(-mu[-1], mu[-1])))
    rep = central_bound(AngularState(D, tuple(mu)))
    assembled = rep.radial_shannon + (D - 1) * rep.logarithmic + 2.0 * rep.angular_entropy
    assert abs(rep.central - assembled) <= 1e-12
    assert abs(rep.central - sum(rep.components.values())) <= 1e-12
    assert rep.bbm == bbm_bound(D)
    assert rep.improves_bbm == (rep.central > rep.bbm)


def test_figure_one_ordering():
    assert central_bound(AngularState.of(3, 0, 0)).central < BBM3
    for l in range(1, 6):
        for m in range(-l, l + 1):
            assert central_bound(AngularState.of(3, l, m)).central > BBM3


def test_four_dimensional_exceptions():
    failing = set()
    for l in range(4):
        for mu2 in range(l + 1):
            for m in range(-mu2, mu2 + 1):
                if not central_bound(AngularState.of(4, l, mu2, m)).improves_bbm:
                    failing.add((l, mu2, m))
    assert failing == {(0, 0, 0), (1, 0, 0), (1, 1, 0)}


def test_growth_is_logarithmic_with_slope_d_minus_one():
    # B_l - (D-1) ln l settles to a constant, so increments per doubling approach (D-1) ln 2.
    b = {l: central_bound(AngularState.of(3, l, 0)).central for l in (50, 100, 200)}
    for lo, hi in ((50, 100), (100, 200)):
        slope = (b[hi] - b[lo]) / math.log(2.0)
        assert slope == pytest.approx(2.0, rel=0.05)


def test_large_l_is_finite():
    rep = central_bound(AngularState.of(3, 200, 0))
    assert all(math.isfinite(v) for v in rep.components.values())
