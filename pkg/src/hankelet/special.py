"""Gamma, digamma and the normalized Bessel function j_alpha.

j_alpha(x) = 2^alpha Gamma(alpha+1) J_alpha(x) / x^alpha, so j_alpha(0) = 1 and
|j_alpha| <= 1 on the half-line.
"""

import math

import numpy as np
from scipy import integrate, special as sps

from .errors import DomainError, OracleError

# Bernoulli numbers B_{2n} for the digamma asymptotic series
_B2N = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6)

_SERIES_MIN_SWITCH = 12.0
_ASYMPTOTIC_TERMS = 60


def check_alpha(alpha):
    """Validate the Bessel order and return it as a float."""
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= -0.5:
        raise DomainError(f"alpha must be > -1/2, got {alpha}")
    return alpha


def gamma_fn(z):
    """Gamma function for z > 0."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"gamma_fn requires z > 0, got {z}")
    return math.gamma(z)


def log_gamma(z):
    z = float(z)
    if not z > 0:
        raise DomainError(f"log_gamma requires z > 0, got {z}")
    return math.lgamma(z)


def digamma(z):
    """Logarithmic derivative of Gamma for z > 0.

    Upward recurrence to z >= 10, then the Stirling-type asymptotic series.
    """
    z = float(z)
    if not z > 0 or not np.isfinite(z):
        raise DomainError(f"digamma requires finite z > 0, got {z}")
    shift = 0.0
    while z < 10.0:
        shift -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0.0
    p = inv2
    for n, b in enumerate(_B2N, start=1):
        tail += b / (2 * n) * p
        p *= inv2
    return shift + math.log(z) - 0.5 / z - tail


def _j_series(alpha, x):
    # sum_n (-x^2/4)^n / (n! (alpha+1)_n), vectorized with a common term count
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    n = 0
    while True:
        n += 1
        term = term * q / (n * (n + alpha))
        total += term
        if n > 4 and np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
        if n > 400:
            break
    return total


def _j_asymptotic(alpha, x):
    """Hankel expansion with per-point optimal truncation.

    Returns (values, error_estimate), both already scaled to j_alpha.
    """
    mu = 4.0 * alpha * alpha
    p_sum = np.ones_like(x)
    q_sum = np.zeros_like(x)
    term = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    last = np.ones_like(x)
    err = np.zeros_like(x)
    for m in range(1, _ASYMPTOTIC_TERMS):
        new = term * (mu - (2 * m - 1) ** 2) / (m * 8.0 * x)
        grow = np.abs(new) >= np.abs(last)
        stop = active & grow
        err[stop] = np.abs(last[stop])
        active &= ~grow
        if not active.any():
            break
        sign = 1.0 if (m // 2) % 2 == 0 else -1.0
        if m % 2 == 0:
            p_sum = np.where(active, p_sum + sign * new, p_sum)
        else:
            q_sum = np.where(active, q_sum + sign * new, q_sum)
        term = new
        last = np.where(active, np.abs(new), last)
        if np.max(last[active]) < 1e-18:
            break
    err[active] = np.abs(last[active])
    omega = x - (0.5 * alpha + 0.25) * np.pi
    bessel = np.sqrt(2.0 / (np.pi * x)) * (p_sum * np.cos(omega) - q_sum * np.sin(omega))
    scale = np.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0) - alpha * np.log(x))
    return bessel * scale, err * scale * np.sqrt(2.0 / (np.pi * x))


def bessel_j_norm(alpha, x):
    """Normalized Bessel function j_alpha evaluated elementwise on x >= 0."""
    alpha = check_alpha(alpha)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("bessel_j_norm requires finite x >= 0")
    out = np.empty_like(arr)
    switch = max(_SERIES_MIN_SWITCH, 2.0 * alpha + 2.0)
    small = arr < switch
    if small.any():
        out[small] = _j_series(alpha, arr[small])
    big = ~small
    if big.any():
        xb = arr[big]
        vals, err = _j_asymptotic(alpha, xb)
        bad = err > 1e-13
        if bad.any():
            # large orders where the expansion stalls: scipy J_alpha
            xs = xb[bad]
            logscale = alpha * math.log(2.0) + math.lgamma(alpha + 1.0) - alpha * np.log(xs)
            vals[bad] = sps.jv(alpha, xs) * np.exp(logscale)
        out[big] = vals
    return float(out[0]) if scalar else out.reshape(np.shape(x))


def bessel_j_poisson_oracle(alpha, x, tol=1e-12):
    """j_alpha(x) from its Poisson integral, for cross-validation only.

    The (1-s^2)^(alpha-1/2) endpoint factor is handed to QUADPACK's algebraic
    weight so the integrand stays smooth for every alpha > -1/2.
    """
    alpha = check_alpha(alpha)
    x = float(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    expo = alpha - 0.5
    limit = max(200, int(4 * x) + 50)
    val, err = integrate.quad(
        lambda s: math.cos(s * x), -1.0, 1.0, weight="alg", wvar=(expo, expo),
        epsabs=tol, epsrel=tol, limit=limit,
    )
    norm = math.exp(math.lgamma(alpha + 1.0) - math.lgamma(alpha + 0.5) - 0.5 * math.log(math.pi))
    if not np.isfinite(val) or err > 1e3 * tol:
        raise OracleError(f"Poisson quadrature failed for alpha={alpha}, x={x}: error estimate {err:.3g}")
    return norm * val


def gaussian_moment_transform(alpha, k, width, r):
    """Hankel transform of xi^k exp(-xi^2 / (2 width^2)) at r, via Kummer's function.

    H(r) = 2^(k/2) width^(k+2alpha+2) Gamma(alpha+1+k/2)/Gamma(alpha+1)
           * 1F1(alpha+1+k/2; alpha+1; -width^2 r^2 / 2)
    """
    alpha = check_alpha(alpha)
    r = np.asarray(r, dtype=float)
    a = alpha + 1.0 + 0.5 * k
    b = alpha + 1.0
    z = 0.5 * (width * r) ** 2
    pref = math.exp(
        0.5 * k * math.log(2.0) + (k + 2 * alpha + 2) * math.log(width)
        + math.lgamma(a) - math.lgamma(b)
    )
    if k % 2 == 0:
        # Kummer transform: 1F1(a;b;-z) = e^{-z} 1F1(-k/2; b; z), a finite sum
        m = k // 2
        poly = np.zeros_like(z)
        coef = 1.0
        for n in range(m + 1):
            poly = poly + coef * z ** n
            coef *= (n - m) / ((b + n) * (n + 1))
        return pref * np.exp(-z) * poly
    return pref * sps.hyp1f1(a, b, -z)
