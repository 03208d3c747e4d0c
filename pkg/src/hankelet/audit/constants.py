"""Constants and functionals that enter the uncertainty inequalities."""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, PreconditionError
from ..radial import LOG_FLOOR, integrate_scale_space, mu_mass
from ..special import check_alpha, digamma
from ..wavelet import log_mean_quadrature, mellin_quadrature

MELLIN_AGREEMENT = 1e-7


def mellin_of_wavelet(w, z, check=True):
    """Mellin transform of |H psi|^2 at z.

    Bessel hats use the closed form, cross-checked against quadrature when
    ``check`` is set; other wavelets use quadrature only.
    """
    z = float(z)
    cf = w.closed_form
    if cf is None:
        return mellin_quadrature(w, z)
    if not z < 2 * cf.k:
        raise DomainError(f"Mellin transform of |H psi|^2 diverges at z = {z} (needs z < {2 * cf.k})")
    exact = cf.mellin(z)
    if check:
        quad = mellin_quadrature(w, z)
        if abs(quad - exact) > MELLIN_AGREEMENT * abs(exact):
            from ..errors import OracleError

            raise OracleError(f"Mellin closed form {exact!r} and quadrature {quad!r} disagree at z={z}")
    return exact


def pitt_constant_hankel(alpha, beta):
    """Sharp Pitt constant 2^-beta Gamma((alpha-beta+1)/2) / Gamma((alpha+beta+1)/2)."""
    alpha = check_alpha(alpha)
    beta = float(beta)
    if not (0.0 <= beta < alpha + 1.0):
        raise DomainError(f"Pitt exponent must satisfy 0 <= beta < alpha+1 = {alpha + 1}, got {beta}")
    return math.exp(
        -beta * math.log(2.0) + math.lgamma(0.5 * (alpha - beta + 1.0)) - math.lgamma(0.5 * (alpha + beta + 1.0))
    )


def pitt_constant_hwt(w, beta):
    """Pitt constant for the wavelet transform: sqrt(M(-2 beta) / c_psi) times the Hankel one."""
    hankel = pitt_constant_hankel(w.alpha, beta)
    return math.sqrt(mellin_of_wavelet(w, -2.0 * float(beta)) / w.c_admissible) * hankel


def log_constant_hankel(alpha):
    """ln 2 + digamma((alpha+1)/2)."""
    alpha = check_alpha(alpha)
    return math.log(2.0) + digamma(0.5 * (alpha + 1.0))


def digamma_heisenberg_constant(alpha):
    """2 exp(digamma((alpha+1)/2)), which approaches alpha+1 for large alpha."""
    alpha = check_alpha(alpha)
    return 2.0 * math.exp(digamma(0.5 * (alpha + 1.0)))


def wavelet_log_mean(w, check=True):
    """C_psi; closed form for Bessel hats (checked against quadrature to 1e-6)."""
    cf = w.closed_form
    if cf is None:
        return log_mean_quadrature(w)
    exact = cf.log_mean()
    if check:
        quad = log_mean_quadrature(w)
        if abs(quad - exact) > 1e-6 * max(1.0, abs(exact)):
            from ..errors import OracleError

            raise OracleError(f"C_psi closed form {exact!r} and quadrature {quad!r} disagree")
    return exact


def log_constant_hwt(w, check=True):
    """C_alpha(psi) = ln 2 + digamma((alpha+1)/2) - C_psi."""
    return log_constant_hankel(w.alpha) - wavelet_log_mean(w, check)


def entropy_constants(s, alpha, beta, w):
    """(C_sum, C_prod) for the entropy-derived Heisenberg bounds.

    Requires ||psi||^2 <= c_psi; raises PreconditionError otherwise.
    """
    alpha = check_alpha(alpha)
    s, beta = float(s), float(beta)
    if not (s > 0 and beta > 0):
        raise DomainError("s and beta must be positive")
    if not w.entropy_precondition:
        raise PreconditionError(
            f"||psi||^2 = {w.l2_norm_sq:.6g} exceeds c_psi = {w.c_admissible:.6g}"
        )
    a1 = alpha + 1.0
    log_inner = (
        (alpha + 2.0) * math.log(2.0) + math.log(s * beta) + math.lgamma(a1)
        - math.lgamma(a1 / s) - math.lgamma(a1 / beta) + math.log(w.contrast)
    )
    c_sum = a1 * (s + beta) / (s * beta) * math.exp(-1.0 + s * beta / (a1 * (s + beta)) * log_inner)
    c_prod = (s / beta) ** (0.5 * s) * (beta / (s + beta) * c_sum) ** (0.5 * (s + beta))
    return c_sum, c_prod


def shannon_entropy_ss(W):
    """-integral |W|^2 ln |W|^2 dnu over the grid box, with 0 ln 0 = 0."""
    dens = np.asarray(W.samples, dtype=float) ** 2
    safe = np.where(dens < LOG_FLOOR, 1.0, dens)
    integrand = np.where(dens < LOG_FLOOR, 0.0, -dens * np.log(safe))
    return integrate_scale_space(integrand, W.grid)


def entropy_radial(samples, grid):
    """-integral |g|^2 ln |g|^2 dmu."""
    dens = np.asarray(samples, dtype=float) ** 2
    safe = np.where(dens < LOG_FLOOR, 1.0, dens)
    return float(grid.weights @ np.where(dens < LOG_FLOOR, 0.0, -dens * np.log(safe)))


@dataclass(frozen=True)
class Region:
    """Finite union of non-overlapping rectangles [a1, a2] x [x1, x2] in scale-position space."""

    rectangles: tuple

    def __post_init__(self):
        rects = tuple(tuple(float(v) for v in r) for r in self.rectangles)
        if not rects:
            raise DomainError("a region needs at least one rectangle")
        for a1, a2, x1, x2 in rects:
            if not (0 < a1 < a2 and 0 <= x1 < x2):
                raise DomainError(f"bad rectangle {(a1, a2, x1, x2)}")
        for i, r in enumerate(rects):
            for q in rects[i + 1:]:
                if r[0] < q[1] and q[0] < r[1] and r[2] < q[3] and q[2] < r[3]:
                    raise DomainError("region rectangles overlap")
        object.__setattr__(self, "rectangles", rects)

    def measure(self, alpha):
        """nu(Sigma) in closed form."""
        p = 2 * alpha + 2
        return sum((a2 ** p - a1 ** p) / p * mu_mass(alpha, x1, x2) for a1, a2, x1, x2 in self.rectangles)

    def fits(self, grid):
        return all(
            a1 >= grid.a_min * (1 - 1e-12) and a2 <= grid.a_max * (1 + 1e-12) and x2 <= grid.position_grid.radius
            for a1, a2, x1, x2 in self.rectangles
        )


def region_energy(W, region):
    """Integral of |W|^2 over the region, re-evaluating the transform on each rectangle."""
    total = 0.0
    for a1, a2, x1, x2 in region.rectangles:
        sub = W.restrict(a1, a2, x1, x2)
        total += integrate_scale_space(sub.samples ** 2, sub.grid)
    return total


def concentration_epsilon(W, region, f_norm_sq):
    """Fraction of the transform's energy outside the region, clamped to [0, 1].

    The outside energy is ||f||^2 minus the energy inside, using the Plancherel
    identity for the whole half-plane rather than the truncated grid box.
    Returns (epsilon, raw_value).
    """
    if not region.measure(W.grid.alpha) > 0:
        raise DomainError("region must have positive measure")
    raw = (f_norm_sq - region_energy(W, region)) / f_norm_sq
    return min(1.0, max(0.0, raw)), raw


def scalar_entropy_lemma_grid(n=100):
    """Evaluate both sides of 0 <= (x^2 - x^p)/(p-2) <= -x^2 ln x on the standard grid.

    x runs over linspace(0, 0.99, n), p over 2.01 + 0.99 j / n for j = 1..n.
    Returns (x, p, middle, upper) arrays of shape (n, n).
    """
    x = np.linspace(0.0, 0.99, n)
    p = 2.01 + 0.99 * np.arange(1, n + 1) / n
    X, P = np.meshgrid(x, p, indexing="ij")
    middle = (X ** 2 - X ** P) / (P - 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        upper = np.where(X > 0, -X ** 2 * np.log(np.where(X > 0, X, 1.0)), 0.0)
    return X, P, middle, upper
