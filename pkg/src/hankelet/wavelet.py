"""Admissible wavelets and the Hankel wavelet transform."""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, GridMismatchError, InadmissibleWaveletError
from .hankel import get_plan
from .radial import (
    RadialFunction, RadialGrid, ScaleSpaceGrid, integrate_radial, log_axis_integral,
)
from .special import check_alpha, digamma, gaussian_moment_transform
from .translate import DEFAULT_ANGLE_NODES, dilate, hankel_translate

_SCALE_CHUNK = 16


@dataclass(frozen=True)
class BesselHat:
    """Closed-form data of the spectrum xi^k exp(-sigma^2 xi^2 / 2)."""

    k: int
    sigma: float
    family: str = "bessel_hat"

    def admissibility(self):
        return math.gamma(self.k) / (2.0 * self.sigma ** (2 * self.k))

    def norm_sq(self, alpha):
        return math.exp(
            math.lgamma(self.k + alpha + 1.0) - (alpha + 1.0) * math.log(2.0)
            - math.lgamma(alpha + 1.0) - (2 * self.k + 2 * alpha + 2) * math.log(self.sigma)
        )

    def mellin(self, z):
        """Mellin transform of |H psi|^2 at z, finite for z < 2k."""
        if not z < 2 * self.k:
            raise DomainError(f"Mellin transform diverges for z >= 2k = {2 * self.k}")
        return math.gamma(self.k - 0.5 * z) / (2.0 * self.sigma ** (2 * self.k - z))

    def log_mean(self):
        """c^-1 times the integral of ln(a) |H psi(a)|^2 da / a."""
        return 0.5 * digamma(self.k) - math.log(self.sigma)


@dataclass(frozen=True, eq=False)
class Wavelet:
    """Wavelet given by its Hankel spectrum, with cached constants.

    ``time`` evaluates psi itself at radii; ``closed_form`` is set for the
    Bessel-hat family.
    """

    alpha: float
    spectrum: Callable
    c_admissible: float
    l2_norm_sq: float
    time: Callable
    closed_form: Optional[BesselHat] = None
    label: str = ""
    _table: dict = field(default_factory=dict, repr=False)

    @property
    def entropy_precondition(self):
        """True when ||psi||^2 <= c_psi."""
        return self.l2_norm_sq <= self.c_admissible

    @property
    def contrast(self):
        """c_psi / ||psi||^2."""
        return self.c_admissible / self.l2_norm_sq

    def time_samples(self, grid):
        """psi on a grid, obtained by Hankel-transforming the sampled spectrum."""
        plan = get_plan(grid)
        return RadialFunction(grid, plan.apply(self.spectrum(grid.nodes)), label=f"psi[{self.label}]")

    def fast_time(self, r):
        """psi(r) through a cached cubic-spline table where the exact form is costly.

        Odd-k Bessel hats need 1F1 at every point; the table is built once on
        [0, 400 sigma] with spacing sigma/128 and the exact form is used beyond it.
        """
        cf = self.closed_form
        if cf is None or cf.k % 2 == 0:
            return self.time(r)
        r = np.asarray(r, dtype=float)
        spline = self._table.get("spline")
        if spline is None:
            from scipy.interpolate import CubicSpline

            top = 400.0 * cf.sigma
            knots = np.linspace(0.0, top, int(top / (cf.sigma / 128.0)) + 1)
            spline = CubicSpline(knots, self.time(knots))
            self._table["spline"] = spline
            self._table["top"] = top
        top = self._table["top"]
        out = spline(np.minimum(r, top))
        far = r > top
        if np.any(far):
            out[far] = self.time(r[far])
        return out

    @classmethod
    def from_spectrum(cls, alpha, spectrum, time=None, label="custom", time_grid=None):
        """Wavelet from an arbitrary spectrum; constants are computed by quadrature."""
        alpha = check_alpha(alpha)
        c = log_axis_integral(lambda a: spectrum(a) ** 2)
        if not c > 0:
            raise InadmissibleWaveletError("admissibility constant is zero")
        norm = math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0))
        l2 = log_axis_integral(lambda a: spectrum(a) ** 2 * a ** (2 * alpha + 2) / norm)
        if time is None:
            grid = time_grid or RadialGrid.composite(alpha)
            samples = get_plan(grid).apply(spectrum(grid.nodes))
            time = RadialFunction(grid, samples).evaluate
        return cls(alpha, spectrum, c, l2, time, None, label)


def make_bessel_hat(alpha, k, sigma):
    """Bessel-hat wavelet: H psi(xi) = xi^k exp(-sigma^2 xi^2 / 2)."""
    alpha = check_alpha(alpha)
    if isinstance(k, float) and k.is_integer():
        k = int(k)
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InadmissibleWaveletError(f"k must be a positive integer, got {k!r}")
    if k < 1:
        raise InadmissibleWaveletError(f"k = {k}: the admissibility integral diverges at 0")
    sigma = float(sigma)
    if not sigma > 0 or not np.isfinite(sigma):
        raise DomainError(f"sigma must be > 0, got {sigma}")
    k = int(k)
    cf = BesselHat(k, sigma)

    def spectrum(xi):
        xi = np.asarray(xi, dtype=float)
        return xi ** k * np.exp(-0.5 * (sigma * xi) ** 2)

    def time(r):
        return gaussian_moment_transform(alpha, k, 1.0 / sigma, r)

    return Wavelet(alpha, spectrum, cf.admissibility(), cf.norm_sq(alpha), time, cf,
                   f"bessel_hat(k={k},sigma={sigma:g})")


def admissibility_constant(w):
    """c_psi by quadrature of |H psi(a)|^2 da / a; raises DivergenceError if it diverges."""
    return log_axis_integral(lambda a: w.spectrum(a) ** 2)


def log_mean_quadrature(w):
    """C_psi = c_psi^-1 times the integral of ln(a) |H psi(a)|^2 da / a."""
    return log_axis_integral(lambda a: np.log(a) * w.spectrum(a) ** 2) / w.c_admissible


def mellin_quadrature(w, z):
    """Mellin transform of |H psi|^2 at z by quadrature."""
    return log_axis_integral(lambda a: a ** (-float(z)) * w.spectrum(a) ** 2)


def norm_sq_quadrature(w):
    """||psi||^2 through the spectrum (Hankel isometry)."""
    alpha = w.alpha
    norm = math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0))
    return log_axis_integral(lambda a: w.spectrum(a) ** 2 * a ** (2 * alpha + 2) / norm)


def _check_alpha_match(f, w):
    if f.alpha != w.alpha:
        raise GridMismatchError(f"function alpha {f.alpha} differs from wavelet alpha {w.alpha}")


def wavelet_atom(w, a, x, grid, n_angle=DEFAULT_ANGLE_NODES):
    """psi_{a,x} = c^-1/2 tau_x(D_a psi) sampled on grid."""
    if grid.alpha != w.alpha:
        raise GridMismatchError("grid alpha differs from wavelet alpha")
    a = float(a)
    if not a > 0:
        raise DomainError(f"scale must be > 0, got {a}")
    psi = RadialFunction.from_rule(grid, w.fast_time, label=w.label)
    atom = hankel_translate(dilate(psi, a), x, n_angle=n_angle)
    return atom * (w.c_admissible ** -0.5)


def worker_count():
    raw = os.environ.get("HANKELET_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


class ScaleSpaceFunction:
    """Samples W[j, i] = W(scales[j], positions[i]) on a ScaleSpaceGrid."""

    __slots__ = ("grid", "samples", "source")

    def __init__(self, grid, samples, source=None):
        samples = np.asarray(samples, dtype=float)
        if samples.shape != grid.shape:
            raise GridMismatchError(f"samples shape {samples.shape} does not match grid {grid.shape}")
        self.grid = grid
        self.samples = samples
        self.source = source

    def restrict(self, a_lo, a_hi, x_lo, x_hi, nodes_per_octave=16, panels=8, nodes_per_panel=24):
        """Recompute the transform on a fresh rule covering [a_lo, a_hi] x [x_lo, x_hi]."""
        if self.source is None:
            raise DomainError("restrict needs the transform's source function and wavelet")
        f, w = self.source
        pos = RadialGrid.from_edges(self.grid.alpha, np.linspace(x_lo, x_hi, panels + 1), nodes_per_panel)
        sub = ScaleSpaceGrid.build(pos, a_lo, a_hi, nodes_per_octave)
        return hwt_forward(f, w, sub)


def hwt_forward(f, w, grid, workers=None):
    """Hankel wavelet transform through the spectral identity.

    For each scale a the spectrum of W(a, .) is c^-1/2 a^-(alpha+1) Hf(xi) H psi(xi/a);
    one Hankel transform back to the position grid gives W(a, .).
    """
    _check_alpha_match(f, w)
    if grid.alpha != f.alpha:
        raise GridMismatchError("scale-space grid alpha differs from the function's")
    forward = get_plan(f.grid)
    back = get_plan(f.grid, grid.position_grid)
    hf = forward.apply(f.samples)
    xi = f.grid.nodes
    scales = grid.scales
    pref = w.c_admissible ** -0.5 * scales ** (-(f.alpha + 1.0))

    def chunk(lo):
        a = scales[lo:lo + _SCALE_CHUNK]
        spec = hf[:, None] * w.spectrum(xi[:, None] / a[None, :]) * pref[None, lo:lo + _SCALE_CHUNK]
        return back.apply(spec).T

    starts = range(0, scales.size, _SCALE_CHUNK)
    n = worker_count() if workers is None else max(1, int(workers))
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            blocks = list(pool.map(chunk, starts))
    else:
        blocks = [chunk(lo) for lo in starts]
    return ScaleSpaceFunction(grid, np.vstack(blocks), (f, w))


def default_angle_nodes(a, x, radius):
    """Angular nodes so that D_a psi is resolved across the translation window."""
    span = a * min(float(x), radius)
    return int(48 + 8 * math.ceil(span))


def hwt_direct_oracle(f, w, a, x, n_angle=None):
    """W(a, x) as the inner product of f with the atom psi_{a,x} on f's grid."""
    _check_alpha_match(f, w)
    if n_angle is None:
        n_angle = default_angle_nodes(a, x, f.grid.radius)
    atom = wavelet_atom(w, a, x, f.grid, n_angle=n_angle)
    return integrate_radial(f * atom, warn=False)
