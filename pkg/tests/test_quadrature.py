import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropic_central.errors import NonConvergence, NotNormalized
from entropic_central.quadrature import (
    QuadConfig,
    QuadResult,
    entropy_integral,
    integrate_finite,
    integrate_pieces,
    integrate_semiinfinite,
)


@pytest.mark.parametrize(
    "f, a, b, expected",
    [
        (lambda x: x, 0.0, 1.0, 0.5),
        (np.sin, 0.0, math.pi, 2.0),
        (lambda x: x * x * np.log(x), 0.0, 1.0, -1.0 / 9.0),
        (lambda x: 1.0 / np.sqrt(x), 0.0, 1.0, 2.0),
    ],
)
def test_integrate_finite_examples(f, a, b, expected):
    res = integrate_finite(f, a, b)
    assert res.value == pytest.approx(expected, abs=1e-10)
    assert res.error_estimate >= 0 and res.evaluations > 0
    assert abs(res.value - expected) <= max(res.error_estimate, 1e-15)


@pytest.mark.parametrize(
    "f, expected",
    [
        (lambda x: np.exp(-x), 1.0),
        (lambda x: 4.0 * x * x * np.exp(-2.0 * x), 1.0),
        (lambda x: x * x / (1.0 + x * x) ** 4, math.pi / 32.0),
        (lambda x: 1.0 / (1.0 + x * x), math.pi / 2.0),
    ],
)
def test_integrate_semiinfinite_examples(f, expected):
    res = integrate_semiinfinite(f)
    assert res.value == pytest.approx(expected, rel=1e-10, abs=1e-12)
    assert abs(res.value - expected) <= max(res.error_estimate, 1e-14)


def test_break_points_are_used():
    # |x - 1/3| has a kink the rule resolves exactly once it is a break point.
    res = integrate_finite(lambda x: np.abs(x - 1.0 / 3.0), 0.0, 1.0, points=[1.0 / 3.0])
    assert res.value == pytest.approx(5.0 / 18.0, abs=1e-14)
    assert res.evaluations == 42


def test_scalar_only_integrand_is_accepted():
    res = integrate_finite(lambda x: math.exp(x), 0.0, 1.0)
    assert res.value == pytest.approx(math.e - 1.0, rel=1e-13)


def test_non_finite_integrand_is_reported():
    with pytest.raises(ValueError, match="not finite"):
        integrate_finite(lambda x: np.where(x > 0.5, np.nan, 1.0), 0.0, 1.0)


def test_nonconvergence_carries_estimate():
    cfg = QuadConfig(max_subdivisions=3)
    with pytest.raises(NonConvergence) as info:
        integrate_finite(lambda x: np.sin(1.0 / x), 1e-4, 1.0, cfg)
    assert isinstance(info.value.result, QuadResult)
    assert not info.value.result.converged


@pytest.mark.parametrize(
    "kwargs", [dict(rel_tol=0.0), dict(abs_tol=-1.0), dict(max_subdivisions=0), dict(tail_cut=-2.0)]
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        QuadConfig(**kwargs)


def test_integrate_finite_needs_ordered_limits():
    with pytest.raises(ValueError):
        integrate_finite(np.sin, 1.0, 1.0)


def test_integrate_pieces_sum_to_total():
    edges = np.arange(0, 11) * math.pi
    total, pieces = integrate_pieces(np.sin, edges)
    assert np.allclose(pieces, 2.0 * (-1.0) ** np.arange(10), atol=1e-12)
    assert total.value == pytest.approx(pieces.sum(), abs=1e-13)


def test_fixed_tail_cut():
    res = integrate_semiinfinite(lambda x: np.exp(-x), QuadConfig(tail_cut=3.0))
    assert res.value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize(
    "density, expected",
    [
        (lambda r: 4.0 * r * r * np.exp(-2.0 * r), 3.0 - math.log(4.0) - 2.0 * (1.5 - 0.5772156649015329 - math.log(2.0))),
        (lambda r: 2.0 * np.exp(-2.0 * r), 1.0 - math.log(2.0)),
    ],
)
def test_entropy_integral_examples(density, expected):
    assert entropy_integral(density).value == pytest.approx(expected, abs=1e-10)


def test_entropy_of_uniform_unit_interval():
    res = entropy_integral(lambda x: np.ones_like(x), support=(0.0, 1.0))
    assert res.value == pytest.approx(0.0, abs=1e-14)


def test_entropy_requires_normalization():
    with pytest.raises(NotNormalized) as info:
        entropy_integral(lambda r: np.exp(-2.0 * r))
    assert info.value.norm == pytest.approx(0.5)


def test_log_density_used_in_tail():
    # exp(-x^2) underflows long before the cut; the log-density keeps the tail exact.
    c = 2.0 / math.sqrt(math.pi)
    dens = lambda x: c * np.exp(-x * x)
    logd = lambda x: math.log(c) - x * x
    expected = 0.5 - math.log(c)
    assert entropy_integral(dens, log_density=logd).value == pytest.approx(expected, abs=1e-11)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 20.0), st.sampled_from(["gauss", "exp"]))
def test_entropy_scaling_law(s, shape):
    if shape == "gauss":
        base = lambda x: 2.0 / math.sqrt(math.pi) * np.exp(-x * x)
    else:
        base = lambda x: np.exp(-x)
    scaled = lambda x: s * base(s * x)
    assert entropy_integral(scaled).value == pytest.approx(entropy_integral(base).value - math.log(s), abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.01, 10.0))
def test_semiinfinite_translation_consistency(a):
    f = lambda x: x**2 * np.exp(-x) / (1.0 + x)
    whole = integrate_semiinfinite(f).value
    split = integrate_finite(f, 0.0, a).value + integrate_semiinfinite(f, lower=a).value
    assert whole == pytest.approx(split, abs=1e-10)
