import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelet.errors import DomainError
from hankelet.special import (
    bessel_j_norm, bessel_j_poisson_oracle, check_alpha, digamma, gamma_fn, gaussian_moment_transform, log_gamma,
)


def j_mpmath(alpha, x):
    """Independent high-precision oracle for j_alpha."""
    if x == 0:
        return 1.0
    with mpmath.workdps(30):
        a = mpmath.mpf(alpha)
        return float(2 ** a * mpmath.gamma(a + 1) * mpmath.besselj(a, x) / mpmath.mpf(x) ** a)


def test_alpha_bound():
    assert check_alpha(0) == 0.0
    for bad in (-0.5, -1.0, float("nan")):
        with pytest.raises(DomainError):
            check_alpha(bad)


def test_gamma_examples():
    assert gamma_fn(1) == pytest.approx(1.0, rel=1e-15)
    assert gamma_fn(0.5) == pytest.approx(1.7724538509055159, rel=1e-13)
    assert gamma_fn(3) == pytest.approx(2.0, rel=1e-15)
    for bad in (0.0, -1.5):
        with pytest.raises(DomainError):
            gamma_fn(bad)
        with pytest.raises(DomainError):
            log_gamma(bad)


@given(st.floats(min_value=1e-3, max_value=50.0))
def test_gamma_twelve_digits(z):
    assert gamma_fn(z) == pytest.approx(float(mpmath.gamma(z)), rel=1e-12)
    assert log_gamma(z) == pytest.approx(float(mpmath.loggamma(z)), rel=1e-12, abs=1e-13)


def test_digamma_examples():
    euler = float(mpmath.euler)
    assert digamma(1) == pytest.approx(-euler, abs=1e-12)
    assert digamma(2) == pytest.approx(1 - euler, abs=1e-12)
    assert digamma(0.5) == pytest.approx(-euler - 2 * math.log(2), abs=1e-12)
    assert digamma(0.5) == pytest.approx(-1.9635100260, abs=1e-10)
    with pytest.raises(DomainError):
        digamma(0)


@given(st.floats(min_value=0.1, max_value=50.0))
def test_digamma_recurrence_and_oracle(z):
    assert abs(digamma(z + 1) - digamma(z) - 1 / z) <= 1e-12
    assert digamma(z) == pytest.approx(float(mpmath.digamma(z)), rel=1e-10, abs=1e-12)


def test_digamma_heisenberg_asymptotic():
    vals = [2 * math.exp(digamma((a + 1) / 2)) / (a + 1) for a in (20, 50, 100)]
    assert all(0.95 <= v <= 1.0 for v in vals)
    assert vals == sorted(vals)


def test_bessel_examples():
    for alpha in (-0.4, 0.0, 0.5, 3.0, 40.0):
        assert bessel_j_norm(alpha, 0.0) == 1.0
    assert abs(bessel_j_norm(0.5, math.pi)) <= 1e-12
    assert abs(bessel_j_norm(0.0, 2.4048255577)) <= 1e-9
    x = np.array([0.1, 1.0, 7.0, 30.0])
    assert np.allclose(bessel_j_norm(0.5, x), np.sin(x) / x, atol=1e-13)
    with pytest.raises(DomainError):
        bessel_j_norm(0.0, -1.0)


def test_bessel_vectorized_shape():
    x = np.linspace(0, 50, 12).reshape(3, 4)
    out = bessel_j_norm(1.0, x)
    assert out.shape == (3, 4)
    assert out[1, 2] == bessel_j_norm(1.0, x[1, 2])


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-0.45, max_value=8.0), st.floats(min_value=0.0, max_value=1e4))
def test_bessel_absolute_error(alpha, x):
    assert abs(bessel_j_norm(alpha, x) - j_mpmath(alpha, x)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-0.45, max_value=60.0), st.floats(min_value=0.0, max_value=2e3))
def test_bessel_bounded_by_one(alpha, x):
    assert abs(bessel_j_norm(alpha, x)) <= 1.0 + 1e-12


def test_bessel_regime_switch_is_continuous():
    for alpha in (0.0, 1.5, 7.0):
        s = max(12.0, 2 * alpha + 2)
        lo, hi = bessel_j_norm(alpha, np.nextafter(s, 0)), bessel_j_norm(alpha, s)
        assert abs(lo - j_mpmath(alpha, s)) <= 1e-12 and abs(hi - j_mpmath(alpha, s)) <= 1e-12


def test_poisson_oracle_examples():
    assert bessel_j_poisson_oracle(1.0, 0.0) == pytest.approx(1.0, abs=1e-13)
    assert bessel_j_poisson_oracle(0.5, 1.0) == pytest.approx(math.sin(1.0), abs=1e-10)
    assert abs(bessel_j_poisson_oracle(0.0, 5.0) - bessel_j_norm(0.0, 5.0)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.4, max_value=5.0), st.floats(min_value=0.0, max_value=100.0))
def test_series_matches_poisson_oracle(alpha, x):
    assert abs(bessel_j_norm(alpha, x) - bessel_j_poisson_oracle(alpha, x)) <= 1e-8


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.5])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_gaussian_moment_transform_vs_quadrature(alpha, k):
    width = 0.8
    for r in (0.0, 0.7, 2.5):
        def integrand(t):
            return (t ** k * mpmath.exp(-t ** 2 / (2 * width ** 2)) * j_mpmath(alpha, r * float(t))
                    * t ** (2 * alpha + 1) / (2 ** alpha * mpmath.gamma(alpha + 1)))

        expected = float(mpmath.quad(integrand, [0, 2, 5, 12]))
        got = float(gaussian_moment_transform(alpha, k, width, r))
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-13)


def test_bessel_hat_time_form_k2():
    # k = 2, width 1: psi(x) = (2 alpha + 2 - x^2) exp(-x^2 / 2)
    x = np.linspace(0, 9, 40)
    for alpha in (0.0, 1.0, 2.5):
        assert np.allclose(gaussian_moment_transform(alpha, 2, 1.0, x), (2 * alpha + 2 - x ** 2) * np.exp(-x ** 2 / 2),
                           atol=1e-13)
