"""Quadrature on the half-line for the measure mu_alpha and on scale-position space.

dmu_alpha(x) = x^(2 alpha + 1) / (2^alpha Gamma(alpha+1)) dx
dnu(a, x)    = a^(2 alpha + 1) da dmu_alpha(x)

Grid weights carry the density, so ``weights @ g(nodes)`` approximates the
integral of g against the measure.
"""

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import DomainError, GridMismatchError, NumericalError
from .special import check_alpha

TRUNCATION_RATIO = 1e-12
LOG_FLOOR = 1e-300
_NEG_POWER_MIN_NODE = 1e-14


class TruncationWarning(UserWarning):
    """A function is still non-negligible at the truncation radius."""


@lru_cache(maxsize=64)
def _legendre(n):
    t, w = roots_legendre(n)
    return t, w


@lru_cache(maxsize=64)
def _jacobi(n, a, b):
    t, w = roots_jacobi(n, a, b)
    return t, w


def mu_density(alpha, x):
    """Density of mu_alpha with respect to dx."""
    return np.asarray(x, dtype=float) ** (2 * alpha + 1) / math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0))


def mu_mass(alpha, lo, hi):
    """Exact mu_alpha measure of [lo, hi]."""
    p = 2 * alpha + 2
    return (hi ** p - lo ** p) / (p * math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0)))


def _panel_rule(alpha, lo, hi, n):
    """Nodes and mu-weights on one panel; Gauss-Jacobi when the panel touches 0."""
    if lo == 0.0:
        # weight (1+t)^(2alpha+1) absorbs the density's power at the origin
        t, w = _jacobi(n, 0.0, 2 * alpha + 1)
        x = 0.5 * hi * (1.0 + t)
        wx = w * (0.5 * hi) ** (2 * alpha + 2)
        norm = math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 1.0))
        return x, wx / norm
    t, w = _legendre(n)
    half = 0.5 * (hi - lo)
    x = half * t + 0.5 * (hi + lo)
    return x, half * w * mu_density(alpha, x)


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Immutable quadrature rule for mu_alpha on [start, radius]."""

    alpha: float
    radius: float
    nodes: np.ndarray
    weights: np.ndarray
    edges: tuple = field(default=())
    nodes_per_panel: tuple = field(default=())

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DomainError("nodes and weights must be matching non-empty vectors")
        if np.any(np.diff(nodes) <= 0) or nodes[0] <= 0 or nodes[-1] >= self.radius:
            raise DomainError("nodes must be strictly increasing inside (0, radius)")
        if np.any(weights <= 0):
            raise DomainError("quadrature weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self):
        return self.nodes.size

    @property
    def start(self):
        return self.edges[0] if self.edges else 0.0

    @property
    def key(self):
        """Hashable recipe; two grids with equal keys have identical nodes."""
        return (self.alpha, self.edges, self.nodes_per_panel)

    def same_as(self, other):
        return self is other or (bool(self.key[1]) and self.key == other.key)

    @classmethod
    def from_edges(cls, alpha, edges, nodes_per_panel):
        """Composite rule over panels [edges[i], edges[i+1]]."""
        alpha = check_alpha(alpha)
        edges = tuple(float(e) for e in edges)
        if len(edges) < 2 or edges[0] < 0 or np.any(np.diff(edges) <= 0):
            raise DomainError("edges must be increasing, non-negative, at least two")
        if np.isscalar(nodes_per_panel):
            counts = (int(nodes_per_panel),) * (len(edges) - 1)
        else:
            counts = tuple(int(n) for n in nodes_per_panel)
        if len(counts) != len(edges) - 1 or min(counts) < 1:
            raise DomainError("one positive node count per panel is required")
        xs, ws = [], []
        for lo, hi, n in zip(edges[:-1], edges[1:], counts):
            x, w = _panel_rule(alpha, lo, hi, n)
            xs.append(x)
            ws.append(w)
        return cls(alpha, edges[-1], np.concatenate(xs), np.concatenate(ws), edges, counts)

    @classmethod
    def composite(cls, alpha, radius=12.0, n_nodes=512, panels=16):
        """Equal-width Gauss panels on [0, radius]; the default grid."""
        if n_nodes % panels:
            raise DomainError("n_nodes must be a multiple of panels")
        edges = np.linspace(0.0, float(radius), panels + 1)
        return cls.from_edges(alpha, edges, n_nodes // panels)

    @classmethod
    def graded(cls, alpha, core_radius=12.0, core_panels=32, nodes_per_panel=32,
               radius=160.0, tail_growth=1.25, tail_nodes=16, origin_levels=0, origin_nodes=16):
        """Fine uniform core, geometrically widening tail, optional dyadic refinement at 0.

        The core must resolve j_alpha(x xi) for x up to ``radius``; the tail only
        carries slowly varying position-side content.
        """
        h = core_radius / core_panels
        core = list(np.linspace(0.0, core_radius, core_panels + 1))
        counts = [nodes_per_panel] * core_panels
        if origin_levels:
            first = core[1]
            inner = [0.0] + [first * 2.0 ** (-j) for j in range(origin_levels, 0, -1)]
            core = inner + core[1:]
            counts = [origin_nodes] * origin_levels + counts
        edges = core
        width = h
        while edges[-1] < radius - 1e-12:
            width *= tail_growth
            nxt = edges[-1] + width
            if radius - nxt < 0.5 * width:
                nxt = radius
            edges.append(nxt)
            counts.append(tail_nodes)
        return cls.from_edges(alpha, edges, counts)

    def subgrid(self, lo, hi, panels=8, nodes_per_panel=24):
        """Independent rule on [lo, hi] with the same alpha."""
        return RadialGrid.from_edges(self.alpha, np.linspace(lo, hi, panels + 1), nodes_per_panel)

    def exact_mass(self):
        return mu_mass(self.alpha, self.start, self.radius)


class RadialFunction:
    """Samples on a RadialGrid, optionally backed by an exact evaluation rule.

    ``rule`` maps an array of radii to values; operators that need values off
    the grid (translation, dilation) use it when present.
    """

    __slots__ = ("grid", "samples", "rule", "label")

    def __init__(self, grid, samples, rule=None, label=""):
        samples = np.asarray(samples, dtype=float)
        if samples.shape != grid.nodes.shape:
            raise GridMismatchError(f"expected {grid.size} samples, got {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise NumericalError("non-finite samples in RadialFunction")
        self.grid = grid
        self.samples = samples
        self.rule = rule
        self.label = label

    @classmethod
    def from_rule(cls, grid, rule, label=""):
        return cls(grid, rule(grid.nodes), rule, label)

    @property
    def alpha(self):
        return self.grid.alpha

    def evaluate(self, r):
        """Values at arbitrary radii: the rule if known, else monotone cubic interpolation."""
        r = np.asarray(r, dtype=float)
        if self.rule is not None:
            return self.rule(r)
        return _pchip(self)(r)

    def with_samples(self, samples, rule=None, label=""):
        return RadialFunction(self.grid, samples, rule, label)

    def __mul__(self, other):
        if isinstance(other, RadialFunction):
            _check_same_grid(self.grid, other.grid)
            rule = None
            if self.rule is not None and other.rule is not None:
                r1, r2 = self.rule, other.rule
                rule = lambda r: r1(r) * r2(r)
            return RadialFunction(self.grid, self.samples * other.samples, rule)
        c = float(other)
        rule = None if self.rule is None else (lambda r, f=self.rule: c * f(r))
        return RadialFunction(self.grid, c * self.samples, rule)

    __rmul__ = __mul__

    def __add__(self, other):
        _check_same_grid(self.grid, other.grid)
        rule = None
        if self.rule is not None and other.rule is not None:
            r1, r2 = self.rule, other.rule
            rule = lambda r: r1(r) + r2(r)
        return RadialFunction(self.grid, self.samples + other.samples, rule)

    def __sub__(self, other):
        return self + (-1.0) * other


def _pchip(f):
    from scipy.interpolate import PchipInterpolator

    # flat continuation to the grid start, zero beyond the truncation radius
    x = np.concatenate([[f.grid.start], f.grid.nodes])
    y = np.concatenate([[f.samples[0]], f.samples])
    interp = PchipInterpolator(x, y, extrapolate=True)
    radius = f.grid.radius

    def rule(r):
        r = np.asarray(r, dtype=float)
        return np.where(r > radius, 0.0, interp(np.clip(r, x[0], None)))

    return rule


def _check_same_grid(g1, g2):
    if not (g1 is g2 or g1.same_as(g2)):
        raise GridMismatchError("functions live on different grids")


def _check_finite(values):
    if not np.all(np.isfinite(values)):
        raise NumericalError("non-finite values in integrand")


def integrate_radial(f, warn=True):
    """Quadrature of f against mu_alpha over the grid's range."""
    _check_finite(f.samples)
    if warn:
        peak = np.max(np.abs(f.samples)) if f.samples.size else 0.0
        if peak > 0 and abs(f.samples[-1]) > TRUNCATION_RATIO * peak:
            warnings.warn(
                f"|f| at the last node is {abs(f.samples[-1]) / peak:.2e} of its maximum; "
                "the truncation radius may be too small",
                TruncationWarning, stacklevel=2,
            )
    return float(f.grid.weights @ f.samples)


def lp_norm_radial(f, p=2.0):
    """(integral |f|^p dmu)^(1/p)."""
    p = float(p)
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    _check_finite(f.samples)
    total = f.grid.weights @ np.abs(f.samples) ** p
    return float(total ** (1.0 / p))


def _power(values, s, axis_name):
    if s < 0 and np.min(values) < _NEG_POWER_MIN_NODE:
        raise DomainError(f"negative power of {axis_name} requested on a grid with a node below 1e-14")
    return values ** s


def _log_weight_term(values, dens):
    """log(values) * dens with the 0 ln 0 = 0 convention on dens."""
    return np.where(dens < LOG_FLOOR, 0.0, np.log(values) * dens)


def weighted_moment(F, weight, s=0.0):
    """Integral of weight * |F|^2 against mu (radial) or nu (scale-space).

    weight is one of "a^s", "x^s", "ln a", "ln x", "xi^s", "ln xi".  The xi forms
    treat F as a frequency-side RadialFunction (same quadrature as x).
    """
    kinds = {"a^s", "x^s", "ln a", "ln x", "xi^s", "ln xi"}
    if weight not in kinds:
        raise DomainError(f"unknown weight {weight!r}; expected one of {sorted(kinds)}")
    s = float(s)
    if isinstance(F, RadialFunction):
        if weight.startswith("a") or weight == "ln a":
            raise DomainError("scale weights need scale-space input")
        _check_finite(F.samples)
        dens = F.samples ** 2
        x = F.grid.nodes
        if weight.endswith("^s"):
            return float(F.grid.weights @ (_power(x, s, "x") * dens))
        return float(F.grid.weights @ _log_weight_term(x, dens))
    grid = F.grid
    samples = F.samples
    _check_finite(samples)
    dens = samples ** 2
    a = grid.scales[:, None]
    x = grid.position_grid.nodes[None, :]
    if weight in ("xi^s", "ln xi"):
        raise DomainError("frequency weights need a radial input")
    if weight == "a^s":
        integrand = _power(a, s, "a") * dens
    elif weight == "x^s":
        integrand = _power(x, s, "x") * dens
    elif weight == "ln a":
        integrand = _log_weight_term(np.broadcast_to(a, dens.shape), dens)
    else:
        integrand = _log_weight_term(np.broadcast_to(x, dens.shape), dens)
    return float(grid.scale_weights @ (integrand @ grid.position_grid.weights))


@dataclass(frozen=True, eq=False)
class ScaleSpaceGrid:
    """Tensor rule for nu on [a_min, a_max] x position_grid.

    Scales use Gauss-Legendre panels in ln a, one panel per octave
    a_min * 2^j, so widening the band by whole octaves keeps existing nodes.
    The a^(2alpha+2) Jacobian of da = a d(ln a) is folded into scale_weights.
    """

    alpha: float
    a_min: float
    a_max: float
    scales: np.ndarray
    scale_weights: np.ndarray
    position_grid: RadialGrid

    @classmethod
    def build(cls, position_grid, a_min=1.0 / 16, a_max=16.0, nodes_per_octave=8):
        a_min, a_max = float(a_min), float(a_max)
        if not (a_min > 0 and a_max > a_min):
            raise DomainError("scale band requires 0 < a_min < a_max")
        alpha = position_grid.alpha
        scales, weights = scale_rule(alpha, a_min, a_max, nodes_per_octave)
        return cls(alpha, a_min, a_max, scales, weights, position_grid)

    @property
    def shape(self):
        return (self.scales.size, self.position_grid.size)

    def box_measure(self):
        """Exact nu measure of the grid box."""
        p = 2 * self.alpha + 2
        return (self.a_max ** p - self.a_min ** p) / p * self.position_grid.exact_mass()


def scale_rule(alpha, a_min, a_max, nodes_per_octave=8):
    """Nodes and weights for the integral of g(a) a^(2alpha+1) da on [a_min, a_max]."""
    la, lb = math.log(a_min), math.log(a_max)
    octave = math.log(2.0)
    n_panels = max(1, int(math.ceil((lb - la) / octave - 1e-9)))
    edges = la + octave * np.arange(n_panels + 1)
    edges[-1] = lb
    t, w = _legendre(int(nodes_per_octave))
    us, uw = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        us.append(half * t + 0.5 * (hi + lo))
        uw.append(half * w)
    u = np.concatenate(us)
    a = np.exp(u)
    return a, np.concatenate(uw) * a ** (2 * alpha + 2)


def integrate_scale_space(F, grid=None):
    """Tensor-product quadrature of F against nu over the grid box."""
    grid = F.grid if grid is None else grid
    samples = np.asarray(getattr(F, "samples", F), dtype=float)
    if samples.shape != grid.shape:
        raise GridMismatchError(f"samples shape {samples.shape} does not match grid {grid.shape}")
    _check_finite(samples)
    return float(grid.scale_weights @ (samples @ grid.position_grid.weights))


def log_axis_integral(g, lo=1e-4, hi=1e3, nodes_per_octave=16, rel_tol=1e-15, max_octaves=400):
    """Integral of g(a) da / a over (0, inf) by Gauss-Legendre panels in ln a.

    Starts on [lo, hi] and appends whole octaves at either end until the newest
    panel contributes less than rel_tol of the running total.  An end that never
    settles raises DivergenceError.
    """
    from .errors import DivergenceError

    t, w = _legendre(int(nodes_per_octave))
    octave = math.log(2.0)

    def panel(u0):
        u = u0 + 0.5 * octave * (t + 1.0)
        vals = np.asarray(g(np.exp(u)), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise DivergenceError(f"non-finite integrand near a = {math.exp(u0):.3g}")
        return 0.5 * octave * float(w @ vals)

    la, lb = math.log(lo), math.log(hi)
    n_mid = max(1, int(math.ceil((lb - la) / octave)))
    starts = la + octave * np.arange(n_mid)
    parts = [panel(u0) for u0 in starts]
    total = math.fsum(parts)
    left, right = starts[0], starts[-1] + octave
    for side in ("left", "right"):
        quiet = 0
        for _ in range(max_octaves):
            if side == "left":
                left -= octave
                c = panel(left)
            else:
                c = panel(right)
                right += octave
            parts.append(c)
            total = math.fsum(parts)
            if abs(c) <= rel_tol * max(abs(total), 1e-300):
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
        else:
            raise DivergenceError(
                f"integrand does not decay toward a -> {'0' if side == 'left' else 'infinity'}"
            )
    return total
