"""Hankel translation, its kernel, dilation and Hankel convolution."""

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError
from .hankel import get_plan
from .radial import RadialFunction, _check_same_grid
from .special import check_alpha

DEFAULT_ANGLE_NODES = 64


@lru_cache(maxsize=64)
def _angle_rule(alpha, n):
    """Gauss-Jacobi rule in s = cos(theta) for the weight (1-s^2)^(alpha-1/2).

    Returns nodes, weights scaled by Gamma(alpha+1)/(Gamma(1/2)Gamma(alpha+1/2)),
    and the raw Jacobi weights.
    """
    t, w = roots_jacobi(n, alpha - 0.5, alpha - 0.5)
    const = math.exp(math.lgamma(alpha + 1.0) - 0.5 * math.log(math.pi) - math.lgamma(alpha + 0.5))
    return t, w * const, w


def _kernel_const(alpha):
    # Gamma(alpha+1)^2 / (sqrt(pi) 2^(alpha-1) Gamma(alpha+1/2))
    return math.exp(
        2 * math.lgamma(alpha + 1.0) - 0.5 * math.log(math.pi)
        - (alpha - 1.0) * math.log(2.0) - math.lgamma(alpha + 0.5)
    )


def translation_kernel(alpha, t, x, y):
    """Closed-form translation kernel K_alpha(t, x, y), zero outside |x-y| < t < x+y."""
    alpha = check_alpha(alpha)
    t, x, y = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (t, x, y)))
    if np.any(t <= 0) or np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("translation_kernel requires t, x, y > 0")
    inside = (np.abs(x - y) < t) & (t < x + y)
    prod = ((x + y) ** 2 - t ** 2) * (t ** 2 - (x - y) ** 2)
    prod = np.where(inside, prod, 1.0)
    val = _kernel_const(alpha) * prod ** (alpha - 0.5) / (x * y * t) ** (2 * alpha)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def _translate_points(rule, alpha, x, y, n_angle):
    """tau_x f at radii y for a pointwise rule f, via the angular average.

    For s = cos(theta) the average is over f(sqrt(x^2 + y^2 + 2 x y s)) with the
    Jacobi weight (1 - s^2)^(alpha - 1/2).
    """
    s, w, _ = _angle_rule(alpha, n_angle)
    y = np.asarray(y, dtype=float)
    r2 = x * x + y[..., None] ** 2 + 2.0 * x * y[..., None] * s
    vals = rule(np.sqrt(np.maximum(r2, 0.0)))
    return vals @ w


def _translate_points_kernel(rule, alpha, x, y, n_angle):
    """Same integral written against the closed-form kernel.

    On t in (|x-y|, x+y) set t^2 = x^2 + y^2 + 2 x y s; then K_alpha(t,x,y) dmu(t)
    equals kernel * t^(2alpha+1)/(2^alpha Gamma(alpha+1)) * x y / t ds, and the
    Jacobi weight is divided back out so the Gauss rule sees a smooth factor.
    """
    s, _, raw = _angle_rule(alpha, n_angle)
    y = np.asarray(y, dtype=float)
    out = np.empty(y.shape)
    norm = math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0))
    weight = (1.0 - s * s) ** (alpha - 0.5)
    for idx, yv in np.ndenumerate(y):
        if yv == 0.0:
            out[idx] = rule(np.array([x]))[0]
            continue
        t = np.sqrt(x * x + yv * yv + 2.0 * x * yv * s)
        k = translation_kernel(alpha, t, x, yv)
        dens = t ** (2 * alpha + 1) / norm
        jac = x * yv / t
        out[idx] = np.sum(raw * k * dens * jac / weight * rule(t))
    return out


def kernel_mass(alpha, x, y, method="kernel", n_angle=DEFAULT_ANGLE_NODES):
    """Integral of K_alpha(t, x, y) dmu_alpha(t); equals 1 for x, y > 0."""
    alpha = check_alpha(alpha)
    one = lambda t: np.ones_like(t)
    if method == "kernel":
        return float(_translate_points_kernel(one, alpha, float(x), np.array([float(y)]), n_angle)[0])
    if method == "theta":
        return float(_translate_points(one, alpha, float(x), np.array([float(y)]), n_angle)[0])
    raise DomainError(f"unknown method {method!r}")


def _rule_of(f):
    return f.rule if f.rule is not None else f.evaluate


def hankel_translate(f, x, method="auto", n_angle=DEFAULT_ANGLE_NODES):
    """tau_x f on f's grid; the result keeps an exact rule for later re-evaluation.

    method "kernel" integrates against the closed-form kernel (used by "auto"
    for alpha >= 1/2); "theta" uses the angular form, whose weight absorbs the
    endpoint singularity of the kernel when alpha < 1/2.
    """
    x = float(x)
    if x < 0 or not np.isfinite(x):
        raise DomainError(f"translation requires x >= 0, got {x}")
    if x == 0.0:
        return f
    alpha = f.alpha
    if method == "auto":
        method = "kernel" if alpha >= 0.5 else "theta"
    base = _rule_of(f)
    if method == "kernel":
        points = _translate_points_kernel
    elif method == "theta":
        points = _translate_points
    else:
        raise DomainError(f"unknown method {method!r}")

    def rule(r):
        r = np.asarray(r, dtype=float)
        return _translate_points(base, alpha, x, r, n_angle)

    samples = points(base, alpha, x, f.grid.nodes, n_angle)
    return RadialFunction(f.grid, samples, rule, label=f"tau_{x:g}[{f.label}]")


def dilate(f, a):
    """D_a f(r) = a^(alpha+1) f(a r), resampled on f's grid."""
    a = float(a)
    if not a > 0 or not np.isfinite(a):
        raise DomainError(f"dilation requires a > 0, got {a}")
    if a == 1.0:
        return f
    scale = a ** (f.alpha + 1.0)
    base = _rule_of(f)

    def rule(r):
        return scale * base(a * np.asarray(r, dtype=float))

    return RadialFunction(f.grid, rule(f.grid.nodes), rule if f.rule is not None else None,
                          label=f"D_{a:g}[{f.label}]")


def hankel_convolve(f, g, method="spectral", n_angle=DEFAULT_ANGLE_NODES):
    """Hankel convolution (f * g)(x) = integral of tau_x f(y) g(y) dmu(y).

    The spectral path computes H(H(f) H(g)); the direct path evaluates the
    defining integral node by node and is meant for small grids.
    """
    _check_same_grid(f.grid, g.grid)
    if method == "spectral":
        plan = get_plan(f.grid)
        spec = plan.apply(f.samples) * plan.apply(g.samples)
        return RadialFunction(f.grid, plan.apply(spec))
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    base = _rule_of(f)
    w = f.grid.weights * g.samples
    out = np.empty(f.grid.size)
    for i, xv in enumerate(f.grid.nodes):
        out[i] = _translate_points(base, f.alpha, xv, f.grid.nodes, n_angle) @ w
    return RadialFunction(f.grid, out)
